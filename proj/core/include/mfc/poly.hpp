#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mfc/scalar.hpp"

namespace mfc {

/// Polynomial ring Q(zeta_N)[x_1..x_n] with positive R-charge weights.
/// A ring with no variables is the point base.
struct Ring {
  FieldPtr field;
  std::vector<std::string> names;
  std::vector<int> weights;

  std::size_t size() const noexcept { return names.size(); }
  std::optional<std::size_t> index_of(const std::string& name) const;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(FieldPtr field, std::vector<std::string> names, std::vector<int> weights);
/// Ring with all weights equal to 1.
RingPtr make_ring(FieldPtr field, std::vector<std::string> names);
RingPtr point_ring(FieldPtr field);
bool same_ring(const RingPtr& a, const RingPtr& b);
/// Throws PreconditionError when the rings differ.
void require_same_ring(const RingPtr& a, const RingPtr& b, const char* where);

using Exponents = std::vector<unsigned>;

/// Graded order: total degree first, then lexicographic.
struct DegLexLess {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

unsigned total_degree(const Exponents& e);

/// Sparse polynomial over a Ring. Zero coefficients are never stored.
class Poly {
 public:
  using Terms = std::map<Exponents, Scalar, DegLexLess>;

  Poly() = default;
  explicit Poly(RingPtr ring);
  Poly(RingPtr ring, const Scalar& constant);

  static Poly variable(const RingPtr& ring, std::size_t index);
  static Poly monomial(const RingPtr& ring, Exponents exponents, const Scalar& coeff = Scalar(1));

  const RingPtr& ring() const noexcept { return ring_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (zero when absent).
  Scalar constant_term() const;
  Scalar coefficient(const Exponents& e) const;
  void add_term(const Exponents& e, const Scalar& c);

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other);
  Poly& operator*=(const Scalar& s);
  Poly operator-() const;
  Poly pow(unsigned exponent) const;

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Scalar& s) { return a *= s; }
  friend Poly operator*(const Scalar& s, Poly a) { return a *= s; }
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  int max_total_degree() const;
  /// Weight of a monomial under the ring's R-charge.
  int weight_of(const Exponents& e) const;
  /// d if every term has weight d; nullopt for inhomogeneous or zero.
  std::optional<int> homogeneous_weight() const;

  Poly derivative(std::size_t var) const;
  Scalar evaluate(const std::vector<Scalar>& point) const;
  /// Substitute x_i -> images[i]; all images must live in one target ring.
  Poly substitute(const std::vector<Poly>& images, const RingPtr& target) const;
  /// Same coefficients, reinterpreted in a ring with identical variable count.
  Poly rebase(const RingPtr& target) const;

  /// "coeff*x1^e1*x2^e2 + ..." in descending graded order; "0" for zero.
  std::string to_string() const;

 private:
  RingPtr ring_;
  Terms terms_;
};

/// All exponent vectors in n variables with the given total degree, in DegLex order.
std::vector<Exponents> monomials_of_degree(std::size_t n, unsigned degree);
/// All exponent vectors with the given R-weight. Weights must be positive.
std::vector<Exponents> monomials_of_weight(const std::vector<int>& weights, int weight);

}  // namespace mfc
