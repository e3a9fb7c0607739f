#include "mfc/scalar.hpp"

#include <ostream>
#include <sstream>

#include "mfc/error.hpp"

namespace mfc {

namespace {

using IntPoly = std::vector<mpz_class>;

// Exact division of integer polynomials with monic divisor.
IntPoly divide_monic(IntPoly num, const IntPoly& den) {
  const std::size_t dn = den.size() - 1;
  if (num.size() < den.size()) return {mpz_class(0)};
  IntPoly quot(num.size() - dn, 0);
  for (std::size_t k = num.size(); k-- > dn;) {
    mpz_class c = num[k];
    quot[k - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[k - dn + j] -= c * den[j];
  }
  return quot;
}

}  // namespace

std::vector<mpz_class> cyclotomic_polynomial(unsigned n) {
  if (n == 0) throw PreconditionError("cyclotomic order must be positive");
  // x^n - 1 divided by Phi_d for every proper divisor d.
  IntPoly result(n + 1, 0);
  result[0] = -1;
  result[n] = 1;
  for (unsigned d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    result = divide_monic(result, cyclotomic_polynomial(d));
  }
  while (result.size() > 1 && result.back() == 0) result.pop_back();
  return result;
}

CyclotomicField::CyclotomicField(unsigned order) : order_(order), modulus_(cyclotomic_polynomial(order)) {}

std::shared_ptr<const CyclotomicField> CyclotomicField::make(unsigned order) {
  return std::shared_ptr<const CyclotomicField>(new CyclotomicField(order));
}

FieldPtr common_field(const FieldPtr& a, const FieldPtr& b) {
  if (!a) return b;
  if (!b) return a;
  if (a.get() != b.get() && a->order() != b->order())
    throw PreconditionError("cyclotomic order mismatch: " + std::to_string(a->order()) + " vs " +
                            std::to_string(b->order()));
  return a;
}

Scalar::Scalar(long value) {
  if (value != 0) coeffs_.emplace_back(value);
}

Scalar::Scalar(const mpq_class& value) {
  if (value != 0) coeffs_.push_back(value);
}

Scalar::Scalar(FieldPtr field, std::vector<mpq_class> coefficients)
    : field_(std::move(field)), coeffs_(std::move(coefficients)) {
  if (coeffs_.size() > 1 && !field_) throw PreconditionError("irrational scalar needs a cyclotomic field");
  if (field_ && coeffs_.size() > field_->degree()) {
    // Reduce modulo Phi_N.
    const auto& m = field_->modulus();
    const std::size_t deg = field_->degree();
    for (std::size_t k = coeffs_.size(); k-- > deg;) {
      mpq_class c = coeffs_[k];
      if (c == 0) continue;
      for (std::size_t j = 0; j <= deg; ++j) coeffs_[k - deg + j] -= c * m[j];
    }
    coeffs_.resize(deg);
  }
  trim();
}

Scalar Scalar::rational(long num, long den) {
  mpq_class q(num, den);
  q.canonicalize();
  return Scalar(q);
}

Scalar Scalar::zeta(const FieldPtr& field) { return Scalar(field, {mpq_class(0), mpq_class(1)}); }

Scalar Scalar::zeta_power(const FieldPtr& field, long k) {
  const long n = static_cast<long>(field->order());
  long e = ((k % n) + n) % n;
  std::vector<mpq_class> c(static_cast<std::size_t>(e) + 1, 0);
  c.back() = 1;
  return Scalar(field, std::move(c));
}

void Scalar::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

void Scalar::adopt_field(const Scalar& other) { field_ = common_field(field_, other.field_); }

bool Scalar::is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }

mpq_class Scalar::to_rational() const {
  if (coeffs_.size() > 1) throw PreconditionError("scalar " + to_string() + " is not rational");
  return coeffs_.empty() ? mpq_class(0) : coeffs_[0];
}

Scalar& Scalar::operator+=(const Scalar& other) {
  adopt_field(other);
  if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0);
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  trim();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) {
  adopt_field(other);
  if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0);
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  trim();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& other) {
  adopt_field(other);
  if (coeffs_.empty() || other.coeffs_.empty()) {
    coeffs_.clear();
    return *this;
  }
  if (coeffs_.size() == 1 && other.coeffs_.size() == 1) {
    coeffs_[0] *= other.coeffs_[0];
    return *this;
  }
  std::vector<mpq_class> prod(coeffs_.size() + other.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) prod[i + j] += coeffs_[i] * other.coeffs_[j];
  }
  *this = Scalar(field_, std::move(prod));
  return *this;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw PreconditionError("division by zero");
  if (coeffs_.size() == 1) return Scalar(field_, {1 / coeffs_[0]});
  // Solve (multiplication by *this) * u = 1 over Q; the matrix is phi x phi.
  const std::size_t n = field_->degree();
  std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n + 1, 0));
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<mpq_class> basis(col + 1, 0);
    basis[col] = 1;
    Scalar image = *this * Scalar(field_, std::move(basis));
    for (std::size_t row = 0; row < image.coeffs_.size(); ++row) m[row][col] = image.coeffs_[row];
  }
  m[0][n] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) throw PreconditionError("division by zero");
    std::swap(m[piv], m[col]);
    mpq_class inv = 1 / m[col][col];
    for (auto& v : m[col]) v *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      mpq_class f = m[r][col];
      for (std::size_t c = col; c <= n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  std::vector<mpq_class> u(n);
  for (std::size_t i = 0; i < n; ++i) u[i] = m[i][n];
  return Scalar(field_, std::move(u));
}

Scalar& Scalar::operator/=(const Scalar& other) { return *this *= other.inverse(); }

Scalar Scalar::pow(long exponent) const {
  Scalar base = exponent < 0 ? inverse() : *this;
  unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent) : static_cast<unsigned long>(exponent);
  Scalar result(1);
  result.field_ = field_;
  while (e > 0) {
    if (e & 1UL) result *= base;
    base *= base;
    e >>= 1UL;
  }
  return result;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.field_ && b.field_ && a.field_.get() != b.field_.get() && a.field_->order() != b.field_->order())
    throw PreconditionError("cyclotomic order mismatch in comparison");
  return a.coeffs_ == b.coeffs_;
}

std::size_t Scalar::term_count() const {
  std::size_t n = 0;
  for (const auto& c : coeffs_) n += (c != 0);
  return n;
}

std::string Scalar::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const mpq_class& c = coeffs_[i];
    if (c == 0) continue;
    mpq_class mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << "*";
      os << "z";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace mfc
