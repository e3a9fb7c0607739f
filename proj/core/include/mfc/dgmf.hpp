#pragma once

// Dg-schemes [A -> B] with structure algebra S(A^v) (x) wedge(B^v), curved
// differentials d + f, and their folding to matrix factorizations.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mfc/complex.hpp"

namespace mfc {

using Subset = std::vector<std::size_t>;

/// Even coordinates are the ring variables; odd generator k sits in degree -1
/// and d(odd_k) = differential[k], a polynomial of the same R-weight.
struct DgSchemePresentation {
  RingPtr even;
  std::vector<Generator> odd;
  std::vector<Poly> differential;

  std::size_t odd_count() const { return odd.size(); }
  std::optional<std::string> defect() const;
  /// d(odd_k) must have the weight of odd_k.
  std::optional<std::string> weight_defect() const;
  void validate() const;
};

/// O_X of the Koszul complex of beta: odd generator e_k with d(e_k) = beta_k.
/// Odd weights are the weights of beta_k, or the explicit ones when given.
DgSchemePresentation derived_zero_locus(const std::vector<Poly>& beta, const RingPtr& ring,
                                        std::vector<int> odd_weights = {});

/// Element of S(A^v) (x) wedge(B^v): polynomial coefficients on sorted
/// subsets of the odd generators.
class DgFunction {
 public:
  DgFunction() = default;
  DgFunction(RingPtr ring, std::size_t odd_count) : ring_(std::move(ring)), odd_(odd_count) {}
  static DgFunction even(const Poly& p, std::size_t odd_count);
  static DgFunction generator(const RingPtr& ring, std::size_t odd_count, std::size_t k);

  const RingPtr& ring() const noexcept { return ring_; }
  std::size_t odd_count() const noexcept { return odd_; }
  const std::map<Subset, Poly>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Poly component(const Subset& s) const;
  void add_term(const Subset& s, const Poly& p);
  /// -|S| when every term has the same exterior degree.
  std::optional<int> degree() const;
  bool is_even() const;
  bool is_odd() const;
  /// R-weight when homogeneous, given the odd generator weights.
  std::optional<int> weight(const std::vector<Generator>& odd) const;

  friend DgFunction operator+(const DgFunction& a, const DgFunction& b);
  friend DgFunction operator-(const DgFunction& a, const DgFunction& b);
  friend DgFunction operator*(const DgFunction& a, const DgFunction& b);
  friend DgFunction operator*(const Scalar& c, const DgFunction& a);
  DgFunction operator-() const;
  friend bool operator==(const DgFunction& a, const DgFunction& b);

  std::string to_string(const std::vector<Generator>& odd = {}) const;

 private:
  RingPtr ring_;
  std::size_t odd_ = 0;
  std::map<Subset, Poly> terms_;
};

/// Sign of e_S ^ e_T written on the sorted union; 0 if S and T meet.
int merge_sign(const Subset& s, const Subset& t, Subset& out);

/// The odd derivation d extending odd_k -> differential[k].
DgFunction apply_d(const DgSchemePresentation& x, const DgFunction& g);

/// Parse a dg-function: polynomials in the even variables times products of
/// odd generator names, e.g. "x^2*e0 - y*e1".
DgFunction parse_dg_function(std::string_view text, const DgSchemePresentation& x, int line = 0, int column = 1);

/// delta = d + f on O_X with its curvature d(f).
struct CurvedDifferential {
  DgSchemePresentation scheme;
  DgFunction f;
  DgFunction curvature;

  DgFunction apply(const DgFunction& p) const;
};

/// Requires f odd with f^2 = 0; certifies delta^2 = d(f) id on the basis and
/// the Leibniz rule on generator pairs.
CurvedDifferential dgmf_from_homotopy(const DgSchemePresentation& x, const DgFunction& f);
std::optional<std::string> leibniz_defect(const CurvedDifferential& c);
std::optional<std::string> square_defect(const CurvedDifferential& c);

struct MatrixFactorization {
  RingPtr ring;
  std::vector<Generator> p0;
  std::vector<Generator> p1;
  PolyMatrix delta0;  // P0 -> P1
  PolyMatrix delta1;  // P1 -> P0
  Poly potential;

  std::optional<std::string> defect() const;
  /// Entries must have weight w(source) - w(target) modulo the weight of W.
  std::optional<std::string> weight_defect() const;
  void validate() const;
  MatrixFactorization evaluate(const std::vector<Scalar>& point) const;
  MatrixFactorization substitute(const std::vector<Poly>& images, const RingPtr& target) const;
  /// The odd endomorphism [[0, delta1], [delta0, 0]] of P0 (+) P1.
  PolyMatrix delta() const;

  friend bool operator==(const MatrixFactorization& a, const MatrixFactorization& b);
};

/// Basis of wedge(rank n) in (size, lex) order split by parity.
std::pair<std::vector<Subset>, std::vector<Subset>> exterior_basis(std::size_t n);

/// {alpha, beta}: delta = alpha ^ + iota_beta on wedge(rank n), potential <alpha, beta>.
MatrixFactorization koszul_mf(const std::vector<Poly>& alpha, const std::vector<Poly>& beta,
                              std::vector<int> odd_weights = {});
/// Two-periodic folding of (O_X, d + f) over the even coordinate ring.
MatrixFactorization fold_to_mf(const CurvedDifferential& c);
MatrixFactorization unit_mf(const RingPtr& ring);
MatrixFactorization mf_tensor(const MatrixFactorization& m, const MatrixFactorization& n);

/// Matrix of multiplication by g on wedge(B^v) in the basis of exterior_basis,
/// even part first.
PolyMatrix multiplication_matrix(const DgFunction& g);

/// Odd h with delta h + h delta = target, entries of degree <= bound.
std::optional<PolyMatrix> nullhomotopy_solve(const MatrixFactorization& m, const PolyMatrix& target,
                                             unsigned degree_bound);

struct SupportVerdict {
  enum class Kind { contractible, noncontractible, unknown };
  std::vector<Scalar> point;
  Kind kind = Kind::unknown;
  std::optional<PolyMatrix> homotopy;
};
std::vector<SupportVerdict> support_check(const MatrixFactorization& m, const std::vector<std::vector<Scalar>>& points,
                                          unsigned degree_bound);
std::string to_string(SupportVerdict::Kind k);

/// Homology of the two-periodic complex at a zero of W.
std::pair<std::size_t, std::size_t> fiber_homology(const MatrixFactorization& m, const std::vector<Scalar>& point);

/// h of exterior degree 2 and R-weight `weight` with d(h) = target, if any.
std::optional<DgFunction> find_primitive(const DgSchemePresentation& x, const DgFunction& target, int weight);

/// Multiplication by exp(-h) folded to (E0, E1); requires d + f' and d + f with
/// f' - f = d(h). Certifies delta' E = E delta.
struct GaugeIntertwiner {
  DgFunction exp_minus_h;
  PolyMatrix e0;
  PolyMatrix e1;
};
GaugeIntertwiner gauge_intertwiner(const CurvedDifferential& from, const CurvedDifferential& to, const DgFunction& h);

}  // namespace mfc
