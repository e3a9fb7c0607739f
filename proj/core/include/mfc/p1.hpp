#pragma once

// Rational functions, divisors and line bundles on the projective line with
// affine coordinate t.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mfc/complex.hpp"
#include "mfc/scalar.hpp"

namespace mfc::p1 {

struct Point {
  bool at_infinity = false;
  Scalar value;

  static Point infinity() { return {true, Scalar()}; }
  static Point finite(Scalar v) { return {false, std::move(v)}; }
  std::string to_string() const;
  friend bool operator==(const Point& a, const Point& b) {
    return a.at_infinity == b.at_infinity && (a.at_infinity || a.value == b.value);
  }
};

/// Dense univariate polynomial in t, constant term first.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Scalar> coefficients);
  UPoly(const Scalar& c);  // NOLINT(google-explicit-constructor)
  static UPoly t();
  /// t - q
  static UPoly linear(const Scalar& q);

  bool is_zero() const noexcept { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  Scalar coeff(int k) const;
  Scalar leading() const { return c_.empty() ? Scalar() : c_.back(); }
  const std::vector<Scalar>& coefficients() const noexcept { return c_; }
  Scalar evaluate(const Scalar& x) const;
  /// p(t + q)
  UPoly shifted(const Scalar& q) const;
  /// t^deg p(1/t)
  UPoly reversed() const;
  /// Index of the lowest nonzero coefficient.
  int valuation() const;
  UPoly pow(unsigned e) const;

  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  UPoly operator-() const;
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  std::string to_string(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<Scalar> c_;
};

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
UPoly gcd(UPoly a, UPoly b);

class RationalFunction {
 public:
  RationalFunction() : den_(Scalar(1)) {}
  RationalFunction(UPoly num);  // NOLINT(google-explicit-constructor)
  RationalFunction(UPoly num, UPoly den);
  RationalFunction(const Scalar& c) : RationalFunction(UPoly(c)) {}  // NOLINT(google-explicit-constructor)

  const UPoly& numerator() const noexcept { return num_; }
  const UPoly& denominator() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }

  /// Order of vanishing at p in the local parameter (t - p or 1/t).
  int order_at(const Point& p) const;
  /// Laurent coefficients of orders lo..hi in the local parameter at p.
  std::vector<Scalar> laurent(const Point& p, int lo, int hi) const;
  /// Residue of the form f dt at p.
  Scalar residue(const Point& p) const;
  /// Throws at a pole.
  Scalar evaluate(const Scalar& x) const;

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  RationalFunction operator-() const;
  RationalFunction pow(long e) const;
  friend bool operator==(const RationalFunction& a, const RationalFunction& b);

  std::string to_string() const;

 private:
  void normalize();
  UPoly num_;
  UPoly den_;
};

/// Parse a rational function of t; z denotes zeta_N.
RationalFunction parse_rational(std::string_view text, const FieldPtr& field, int line = 0, int column = 1);

struct Divisor {
  std::vector<std::pair<Point, int>> terms;

  int degree() const;
  int at(const Point& p) const;
  /// Points with nonzero multiplicity.
  std::vector<Point> support() const;
  Divisor& add(const Point& p, int n);
  friend Divisor operator+(Divisor a, const Divisor& b);
  std::string to_string() const;
};

/// Basis t^k Q/P, k = 0..deg E, of H^0(P^1, O(E)); P collects the finite
/// positive part of E and Q the finite negative part.
std::vector<RationalFunction> section_basis(const Divisor& e);
bool is_section(const RationalFunction& f, const Divisor& e);
int h0(const Divisor& e);
int h1(const Divisor& e);

/// Value of f in the trivialization of O(E) at p: the coefficient of order
/// -E(p) in the local parameter.
Scalar fiber_value(const RationalFunction& f, const Divisor& e, const Point& p);
/// Jets of a section of O(E + D) modulo O(E): for each point of D with
/// multiplicity m, the Laurent coefficients of orders -E(q)-m .. -E(q)-1.
std::vector<Scalar> jets(const RationalFunction& f, const Divisor& e, const Divisor& d);
/// Number of jets, deg D for effective D.
int jet_count(const Divisor& d);

/// Cech complex of O(a) for the cover {t != infinity}, {t != 0}, truncated to
/// the t-degree window [min(a,0)-1, max(a,0)+1] outside of which it is
/// acyclic. Degree 0 is C^0 and degree 1 is C^1.
FreeComplex cech_complex(int a, const FieldPtr& field = nullptr);

}  // namespace mfc::p1
