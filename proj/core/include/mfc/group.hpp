#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mfc/linalg.hpp"
#include "mfc/poly.hpp"

namespace mfc {

/// Finite-order element of GL(V), V = span of the ring variables.
///
/// The matrix acts on the variables viewed as basis vectors:
/// g.x_i = sum_j g(j, i) x_j, so act(gh, p) = act(g, act(h, p)).
class GroupElement {
 public:
  /// Computes the order (up to order_bound) and requires it to divide the
  /// field's cyclotomic order.
  GroupElement(ScalarMatrix matrix, const FieldPtr& field, unsigned order_bound = 1024);

  const ScalarMatrix& matrix() const noexcept { return matrix_; }
  unsigned order() const noexcept { return order_; }
  std::size_t dimension() const noexcept { return matrix_.rows(); }

  GroupElement operator*(const GroupElement& other) const;
  GroupElement inverse() const;
  bool commutes_with(const GroupElement& other) const;
  /// True when the matrix only mixes variables of equal R-weight.
  bool commutes_with_r_charge(const std::vector<int>& weights) const;

 private:
  GroupElement(ScalarMatrix matrix, unsigned order) : matrix_(std::move(matrix)), order_(order) {}
  ScalarMatrix matrix_;
  unsigned order_ = 1;
};

Poly act(const GroupElement& g, const Poly& p);
/// Apply a linear substitution given by an arbitrary square matrix.
Poly act_matrix(const ScalarMatrix& g, const Poly& p);

/// Result of weight_of: a degree, "zero", or the list of offending terms.
struct WeightReport {
  enum class Kind { homogeneous, zero, inhomogeneous } kind = Kind::zero;
  int degree = 0;
  std::vector<std::string> offending_terms;
};

WeightReport weight_of(const Poly& p);

struct NondegeneracyVerdict {
  enum class Kind { nondegenerate, degenerate, inconclusive } kind = Kind::inconclusive;
  /// For nondegenerate: the power k with m^k inside the Jacobian ideal.
  unsigned power = 0;
  /// For degenerate: a nonzero critical point.
  std::vector<Scalar> witness;
  std::string explanation;
};

/// Bounded-degree test that W has an isolated critical point at the origin.
///
/// nondegenerate: every monomial of total degree k (some k <= degree_bound)
/// lies in the Jacobian ideal, checked in each weight-graded piece.
/// degenerate: an exact nonzero common zero of the partial derivatives was
/// found among small test points. Otherwise inconclusive.
NondegeneracyVerdict nondegeneracy_check(const Poly& w, unsigned degree_bound);

}  // namespace mfc
