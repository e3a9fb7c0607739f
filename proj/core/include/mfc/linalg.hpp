#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mfc/poly.hpp"

namespace mfc {

/// Dense matrix of exact scalars, row-major.
class ScalarMatrix {
 public:
  ScalarMatrix() = default;
  ScalarMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  explicit ScalarMatrix(const std::vector<std::vector<Scalar>>& rows);

  static ScalarMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  ScalarMatrix transpose() const;
  bool is_zero() const;
  std::vector<Scalar> column(std::size_t c) const;
  std::vector<Scalar> apply(const std::vector<Scalar>& v) const;

  friend ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b);
  friend ScalarMatrix operator+(const ScalarMatrix& a, const ScalarMatrix& b);
  friend ScalarMatrix operator-(const ScalarMatrix& a, const ScalarMatrix& b);
  friend bool operator==(const ScalarMatrix& a, const ScalarMatrix& b);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Column scan order when choosing pivots. Forward prefers early basis
/// vectors as pivots, so a particular solution uses the first basis elements.
enum class PivotOrder { forward, reverse };

struct RowEchelon {
  ScalarMatrix reduced;
  std::vector<std::size_t> pivot_columns;  // pivot column of row i
};

/// Reduced row echelon form over the columns [0, active_cols).
RowEchelon row_reduce(ScalarMatrix m, PivotOrder order = PivotOrder::forward,
                      std::optional<std::size_t> active_cols = std::nullopt);
std::size_t rank(const ScalarMatrix& m);
/// Particular solution of A x = b with all free variables zero, or nullopt.
std::optional<std::vector<Scalar>> solve(const ScalarMatrix& a, const std::vector<Scalar>& b,
                                         PivotOrder order = PivotOrder::forward);
/// Basis of the null space, one vector per free column.
std::vector<std::vector<Scalar>> kernel_basis(const ScalarMatrix& a);
std::optional<ScalarMatrix> inverse(const ScalarMatrix& a);

/// Matrix of polynomials over a common ring.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols);

  static PolyMatrix identity(const RingPtr& ring, std::size_t n);
  static PolyMatrix scalar_identity(const Poly& p, std::size_t n);
  static PolyMatrix from_scalars(const RingPtr& ring, const ScalarMatrix& m);

  const RingPtr& ring() const noexcept { return ring_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Poly& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Poly& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const;
  PolyMatrix transpose() const;
  ScalarMatrix evaluate(const std::vector<Scalar>& point) const;
  PolyMatrix substitute(const std::vector<Poly>& images, const RingPtr& target) const;
  /// Entry-wise reinterpretation in a ring with the same variable count.
  PolyMatrix rebase(const RingPtr& target) const;
  /// Requires constant entries.
  ScalarMatrix to_scalars() const;
  int max_total_degree() const;

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator*(const Scalar& s, const PolyMatrix& m);
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b);
  friend bool operator!=(const PolyMatrix& a, const PolyMatrix& b) { return !(a == b); }

 private:
  RingPtr ring_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Poly> data_;
};

}  // namespace mfc
