#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace mfc {

/// The cyclotomic field Q(zeta_N). Elements are stored as rational
/// coefficient vectors of length < phi(N), reduced modulo Phi_N.
class CyclotomicField {
 public:
  static std::shared_ptr<const CyclotomicField> make(unsigned order);

  unsigned order() const noexcept { return order_; }
  unsigned degree() const noexcept { return static_cast<unsigned>(modulus_.size()) - 1; }
  /// Coefficients of Phi_N, constant term first; monic.
  const std::vector<mpz_class>& modulus() const noexcept { return modulus_; }

 private:
  explicit CyclotomicField(unsigned order);
  unsigned order_;
  std::vector<mpz_class> modulus_;
};

using FieldPtr = std::shared_ptr<const CyclotomicField>;

/// Integer polynomial Phi_n, constant term first.
std::vector<mpz_class> cyclotomic_polynomial(unsigned n);

/// Exact element of Q(zeta_N).
///
/// A scalar without a field is a plain rational; it is promoted on contact
/// with a field element. Mixing two different cyclotomic orders throws.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long value);  // NOLINT(google-explicit-constructor)
  Scalar(const mpq_class& value);  // NOLINT(google-explicit-constructor)
  Scalar(FieldPtr field, std::vector<mpq_class> coefficients);

  static Scalar rational(long num, long den = 1);
  static Scalar zeta(const FieldPtr& field);
  /// zeta_N^k for any integer k.
  static Scalar zeta_power(const FieldPtr& field, long k);

  const FieldPtr& field() const noexcept { return field_; }
  /// Reduced coefficients; trailing zeros trimmed, so zero is empty.
  const std::vector<mpq_class>& coefficients() const noexcept { return coeffs_; }

  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_one() const;
  bool is_rational() const noexcept { return coeffs_.size() <= 1; }
  /// Rational value; throws if the element is irrational.
  mpq_class to_rational() const;

  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  Scalar& operator*=(const Scalar& other);
  Scalar& operator/=(const Scalar& other);
  Scalar operator-() const;
  Scalar inverse() const;
  Scalar pow(long exponent) const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// "a0 + a1*z + a2*z^2", z = zeta_N; "0" for zero.
  std::string to_string() const;
  /// Number of nonzero terms in the textual form.
  std::size_t term_count() const;

 private:
  void trim();
  void adopt_field(const Scalar& other);

  FieldPtr field_;
  std::vector<mpq_class> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// Combined field of two operands (null when both are rational).
FieldPtr common_field(const FieldPtr& a, const FieldPtr& b);

}  // namespace mfc
