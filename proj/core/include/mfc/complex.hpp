#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mfc/linalg.hpp"

namespace mfc {

struct Generator {
  std::string name;
  int weight = 0;  // R-charge
  friend bool operator==(const Generator&, const Generator&) = default;
};

/// Bounded cochain complex of free graded modules over a Ring.
///
/// The differential in degree n is a matrix C^n -> C^{n+1} acting on column
/// vectors, so it has rank(n+1) rows and rank(n) columns.
class FreeComplex {
 public:
  FreeComplex() = default;
  explicit FreeComplex(RingPtr ring) : ring_(std::move(ring)) {}

  const RingPtr& ring() const noexcept { return ring_; }
  bool is_point_base() const noexcept { return ring_->size() == 0; }

  void set_term(int degree, std::vector<Generator> generators);
  /// Requires both adjacent terms to be set (possibly empty).
  void set_differential(int degree, PolyMatrix d);

  const std::vector<Generator>& term(int degree) const;
  std::size_t rank(int degree) const { return term(degree).size(); }
  /// Zero matrix of the right shape when unset.
  PolyMatrix differential(int degree) const;
  /// Degrees with a nonzero term, ascending.
  std::vector<int> degrees() const;
  int euler_characteristic() const;

  /// First failure of d o d = 0, or nullopt.
  std::optional<std::string> square_defect() const;
  /// First entry whose weight is inconsistent with the generator weights.
  std::optional<std::string> weight_defect() const;
  /// Throws CertificateError on either defect.
  void validate() const;

  FreeComplex evaluate(const std::vector<Scalar>& point) const;

  friend bool operator==(const FreeComplex& a, const FreeComplex& b);

 private:
  RingPtr ring_;
  std::map<int, std::vector<Generator>> terms_;
  std::map<int, PolyMatrix> diffs_;
};

/// Degreewise maps between two complexes over the same ring.
struct ChainMap {
  FreeComplex source;
  FreeComplex target;
  std::map<int, PolyMatrix> components;  // degree n: source^n -> target^n

  PolyMatrix at(int degree) const;
  /// First square d f != f d, described, or nullopt for a chain map.
  std::optional<std::string> defect() const;
};

/// Cone(f)^n = D^n (+) C^{n+1}, differential [[d_D, f], [0, -d_C]].
FreeComplex cone(const ChainMap& f);
/// C[k]^n = C^{n+k}, differential multiplied by (-1)^k.
FreeComplex shift(const FreeComplex& c, int k);
/// Degreewise direct sum with block-diagonal differentials.
FreeComplex direct_sum(const FreeComplex& a, const FreeComplex& b);
/// Generators of (C (x) D)^n ordered by (p, i, j) with p = degree in C;
/// d(c (x) e) = dc (x) e + (-1)^p c (x) de.
FreeComplex tensor(const FreeComplex& c, const FreeComplex& d);
/// A one-term complex: base ring in degree 0.
FreeComplex unit_complex(const RingPtr& ring);
/// Identity chain map of a complex.
ChainMap identity_map(const FreeComplex& c);
/// f (x) g between tensor products, in the generator order of tensor().
ChainMap tensor_map(const ChainMap& f, const ChainMap& g);
/// Substitute polynomials for the ring variables in every differential.
FreeComplex substitute(const FreeComplex& c, const std::vector<Poly>& images, const RingPtr& target);

/// Exact homology ranks over the point base. Degrees with zero homology are
/// included for every degree in the support.
std::map<int, std::size_t> homology_ranks(const FreeComplex& c);

/// Basis element of (S(A) (x) wedge^k B)_d.
struct SymBasisElement {
  Exponents monomial;                // exponents over generators of A
  std::vector<std::size_t> wedge;    // increasing indices into B
};

struct SymPowerComplex {
  FreeComplex complex;
  std::map<int, std::vector<SymBasisElement>> basis;
};

/// The weight-d piece of S(A -> B): term k is (S(A) (x) wedge^k B)_d with the
/// derivation d(a^e (x) w) = sum_j e_j a^{e-1_j} (x) f(a_j) ^ w.
/// f has rank(B) rows and rank(A) columns.
SymPowerComplex sym_power_two_term(const std::vector<Generator>& a, const std::vector<Generator>& b,
                                   const PolyMatrix& f, int weight);

/// Sign of b_i ^ b_S relative to the sorted wedge, and the merged index set.
/// Returns 0 when i is already in S.
int wedge_insert(std::size_t i, const std::vector<std::size_t>& s, std::vector<std::size_t>& out);

}  // namespace mfc
