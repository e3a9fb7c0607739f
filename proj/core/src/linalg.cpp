#include "mfc/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "mfc/error.hpp"

namespace mfc {

ScalarMatrix::ScalarMatrix(const std::vector<std::vector<Scalar>>& rows)
    : rows_(rows.size()), cols_(rows.empty() ? 0 : rows.front().size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw PreconditionError("ragged matrix");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

ScalarMatrix ScalarMatrix::identity(std::size_t n) {
  ScalarMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
  return m;
}

ScalarMatrix ScalarMatrix::transpose() const {
  ScalarMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool ScalarMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
}

std::vector<Scalar> ScalarMatrix::column(std::size_t c) const {
  std::vector<Scalar> v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

std::vector<Scalar> ScalarMatrix::apply(const std::vector<Scalar>& v) const {
  if (v.size() != cols_) throw PreconditionError("matrix-vector dimension mismatch");
  std::vector<Scalar> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (!v[c].is_zero() && !(*this)(r, c).is_zero()) out[r] += (*this)(r, c) * v[c];
  return out;
}

ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b) {
  if (a.cols_ != b.rows_) throw PreconditionError("matrix product dimension mismatch");
  ScalarMatrix m(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) m(i, j) += x * b(k, j);
    }
  return m;
}

ScalarMatrix operator+(const ScalarMatrix& a, const ScalarMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw PreconditionError("matrix sum dimension mismatch");
  ScalarMatrix m = a;
  for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] += b.data_[i];
  return m;
}

ScalarMatrix operator-(const ScalarMatrix& a, const ScalarMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw PreconditionError("matrix difference dimension mismatch");
  ScalarMatrix m = a;
  for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] -= b.data_[i];
  return m;
}

bool operator==(const ScalarMatrix& a, const ScalarMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string ScalarMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << (*this)(r, c);
    os << "]";
  }
  os << "]";
  return os.str();
}

RowEchelon row_reduce(ScalarMatrix m, PivotOrder order, std::optional<std::size_t> active_cols) {
  const std::size_t ncols = active_cols.value_or(m.cols());
  std::vector<std::size_t> scan(ncols);
  std::iota(scan.begin(), scan.end(), 0);
  if (order == PivotOrder::reverse) std::reverse(scan.begin(), scan.end());
  RowEchelon out;
  std::size_t row = 0;
  for (std::size_t col : scan) {
    if (row == m.rows()) break;
    std::size_t piv = row;
    while (piv < m.rows() && m(piv, col).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(piv, c), m(row, c));
    Scalar inv = m(row, col).inverse();
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!m(row, c).is_zero()) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      Scalar f = m(r, col);
      for (std::size_t c = 0; c < m.cols(); ++c)
        if (!m(row, c).is_zero()) m(r, c) -= f * m(row, c);
    }
    out.pivot_columns.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const ScalarMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return row_reduce(m).pivot_columns.size();
}

std::optional<std::vector<Scalar>> solve(const ScalarMatrix& a, const std::vector<Scalar>& b, PivotOrder order) {
  if (b.size() != a.rows()) throw PreconditionError("solve: right-hand side length mismatch");
  ScalarMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  RowEchelon ech = row_reduce(std::move(aug), order, a.cols());
  const std::size_t npiv = ech.pivot_columns.size();
  for (std::size_t r = npiv; r < a.rows(); ++r)
    if (!ech.reduced(r, a.cols()).is_zero()) return std::nullopt;
  std::vector<Scalar> x(a.cols());
  for (std::size_t r = 0; r < npiv; ++r) x[ech.pivot_columns[r]] = ech.reduced(r, a.cols());
  return x;
}

std::vector<std::vector<Scalar>> kernel_basis(const ScalarMatrix& a) {
  RowEchelon ech = row_reduce(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : ech.pivot_columns) is_pivot[c] = true;
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(a.cols());
    v[free] = Scalar(1);
    for (std::size_t r = 0; r < ech.pivot_columns.size(); ++r) v[ech.pivot_columns[r]] = -ech.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<ScalarMatrix> inverse(const ScalarMatrix& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  const std::size_t n = a.rows();
  ScalarMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n + r) = Scalar(1);
  }
  RowEchelon ech = row_reduce(std::move(aug), PivotOrder::forward, n);
  if (ech.pivot_columns.size() != n) return std::nullopt;
  ScalarMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = ech.reduced(r, n + c);
  return inv;
}

PolyMatrix::PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols, Poly(ring_)) {}

PolyMatrix PolyMatrix::identity(const RingPtr& ring, std::size_t n) {
  return scalar_identity(Poly(ring, Scalar(1)), n);
}

PolyMatrix PolyMatrix::scalar_identity(const Poly& p, std::size_t n) {
  PolyMatrix m(p.ring(), n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = p;
  return m;
}

PolyMatrix PolyMatrix::from_scalars(const RingPtr& ring, const ScalarMatrix& s) {
  PolyMatrix m(ring, s.rows(), s.cols());
  for (std::size_t r = 0; r < s.rows(); ++r)
    for (std::size_t c = 0; c < s.cols(); ++c) m(r, c) = Poly(ring, s(r, c));
  return m;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Poly& p) { return p.is_zero(); });
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix t(ring_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

ScalarMatrix PolyMatrix::evaluate(const std::vector<Scalar>& point) const {
  ScalarMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) m(i / cols_, i % cols_) = data_[i].evaluate(point);
  return m;
}

PolyMatrix PolyMatrix::substitute(const std::vector<Poly>& images, const RingPtr& target) const {
  PolyMatrix m(target, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i].substitute(images, target);
  return m;
}

PolyMatrix PolyMatrix::rebase(const RingPtr& target) const {
  PolyMatrix m(target, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i].rebase(target);
  return m;
}

ScalarMatrix PolyMatrix::to_scalars() const {
  ScalarMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (!data_[i].is_constant()) throw PreconditionError("matrix entry is not constant: " + data_[i].to_string());
    m(i / cols_, i % cols_) = data_[i].constant_term();
  }
  return m;
}

int PolyMatrix::max_total_degree() const {
  int d = -1;
  for (const auto& p : data_) d = std::max(d, p.max_total_degree());
  return d;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols_ != b.rows_) throw PreconditionError("matrix product dimension mismatch");
  require_same_ring(a.ring_, b.ring_, "matrix product");
  PolyMatrix m(a.ring_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Poly& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) m(i, j) += x * b(k, j);
    }
  return m;
}

PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw PreconditionError("matrix sum dimension mismatch");
  PolyMatrix m = a;
  for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] += b.data_[i];
  return m;
}

PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw PreconditionError("matrix difference dimension mismatch");
  PolyMatrix m = a;
  for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] -= b.data_[i];
  return m;
}

PolyMatrix operator*(const Scalar& s, const PolyMatrix& m) {
  PolyMatrix r = m;
  for (auto& p : r.data_) p *= s;
  return r;
}

bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

}  // namespace mfc
