#include "mfc/p1.hpp"

#include <algorithm>

#include "mfc/error.hpp"
#include "mfc/parse.hpp"

namespace mfc::p1 {

std::string Point::to_string() const { return at_infinity ? "inf" : value.to_string(); }

UPoly::UPoly(std::vector<Scalar> coefficients) : c_(std::move(coefficients)) { trim(); }

UPoly::UPoly(const Scalar& c) {
  if (!c.is_zero()) c_.push_back(c);
}

UPoly UPoly::t() { return UPoly({Scalar(0), Scalar(1)}); }

UPoly UPoly::linear(const Scalar& q) { return UPoly({-q, Scalar(1)}); }

void UPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Scalar UPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return Scalar();
  return c_[static_cast<std::size_t>(k)];
}

Scalar UPoly::evaluate(const Scalar& x) const {
  Scalar acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UPoly UPoly::shifted(const Scalar& q) const {
  // Horner in the shifted variable.
  UPoly acc;
  const UPoly lin({q, Scalar(1)});
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * lin + UPoly(*it);
  return acc;
}

UPoly UPoly::reversed() const {
  std::vector<Scalar> r(c_.rbegin(), c_.rend());
  return UPoly(std::move(r));
}

int UPoly::valuation() const {
  for (std::size_t k = 0; k < c_.size(); ++k)
    if (!c_[k].is_zero()) return static_cast<int>(k);
  return -1;
}

UPoly UPoly::pow(unsigned e) const {
  UPoly r(Scalar(1));
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Scalar> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
  for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
  return UPoly(std::move(c));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Scalar> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(std::move(c));
}

UPoly UPoly::operator-() const {
  UPoly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

std::string UPoly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const Scalar& c = c_[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
    std::string cs = c.to_string();
    bool negative = c.term_count() == 1 && cs[0] == '-';
    if (negative) cs = cs.substr(1);
    if (c.term_count() > 1) cs = "(" + cs + ")";
    std::string term = mono.empty() ? cs : (cs == "1" ? mono : cs + "*" + mono);
    if (out.empty()) out = negative ? "-" + term : term;
    else out += (negative ? " - " : " + ") + term;
  }
  return out;
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw PreconditionError("polynomial division by zero");
  std::vector<Scalar> q(static_cast<std::size_t>(std::max(a.degree() - b.degree() + 1, 0)));
  UPoly r = a;
  const Scalar lead_inv = b.leading().inverse();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    const int shift = r.degree() - b.degree();
    Scalar f = r.leading() * lead_inv;
    q[static_cast<std::size_t>(shift)] = f;
    std::vector<Scalar> m(static_cast<std::size_t>(shift) + 1);
    m.back() = f;
    r = r - UPoly(std::move(m)) * b;
  }
  return {UPoly(std::move(q)), r};
}

UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  const Scalar inv = a.leading().inverse();
  return a * UPoly(inv);
}

RationalFunction::RationalFunction(UPoly num) : num_(std::move(num)), den_(Scalar(1)) {}

RationalFunction::RationalFunction(UPoly num, UPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw PreconditionError("rational function with zero denominator");
  normalize();
}

void RationalFunction::normalize() {
  if (num_.is_zero()) {
    den_ = UPoly(Scalar(1));
    return;
  }
  UPoly g = gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = divmod(num_, g).first;
    den_ = divmod(den_, g).first;
  }
  const Scalar inv = den_.leading().inverse();
  num_ = num_ * UPoly(inv);
  den_ = den_ * UPoly(inv);
}

namespace {

// Local data at p: f = s^order * (a(s) / b(s)) with a(0), b(0) nonzero.
struct LocalForm {
  int order;
  UPoly a;
  UPoly b;
};

LocalForm local_form(const UPoly& num, const UPoly& den, const Point& p) {
  if (p.at_infinity) {
    return {den.degree() - num.degree(), num.reversed(), den.reversed()};
  }
  UPoly n = num.shifted(p.value);
  UPoly d = den.shifted(p.value);
  const int vn = n.valuation();
  const int vd = d.valuation();
  std::vector<Scalar> nc(n.coefficients().begin() + vn, n.coefficients().end());
  std::vector<Scalar> dc(d.coefficients().begin() + vd, d.coefficients().end());
  return {vn - vd, UPoly(std::move(nc)), UPoly(std::move(dc))};
}

// First `count` coefficients of the power series a / b.
std::vector<Scalar> series_quotient(const UPoly& a, const UPoly& b, int count) {
  std::vector<Scalar> out;
  if (count <= 0) return out;
  const Scalar b0_inv = b.coeff(0).inverse();
  for (int k = 0; k < count; ++k) {
    Scalar acc = a.coeff(k);
    for (int j = 1; j <= k && j <= b.degree(); ++j) acc -= b.coeff(j) * out[static_cast<std::size_t>(k - j)];
    out.push_back(acc * b0_inv);
  }
  return out;
}

}  // namespace

int RationalFunction::order_at(const Point& p) const {
  if (is_zero()) throw PreconditionError("order of the zero function");
  return local_form(num_, den_, p).order;
}

std::vector<Scalar> RationalFunction::laurent(const Point& p, int lo, int hi) const {
  std::vector<Scalar> out(static_cast<std::size_t>(std::max(hi - lo + 1, 0)));
  if (is_zero() || out.empty()) return out;
  LocalForm lf = local_form(num_, den_, p);
  auto series = series_quotient(lf.a, lf.b, hi - lf.order + 1);
  for (int k = lo; k <= hi; ++k) {
    const int idx = k - lf.order;
    if (idx >= 0) out[static_cast<std::size_t>(k - lo)] = series[static_cast<std::size_t>(idx)];
  }
  return out;
}

Scalar RationalFunction::residue(const Point& p) const {
  if (p.at_infinity) return -laurent(p, 1, 1)[0];
  return laurent(p, -1, -1)[0];
}

Scalar RationalFunction::evaluate(const Scalar& x) const {
  Scalar d = den_.evaluate(x);
  if (d.is_zero()) throw PreconditionError("rational function evaluated at a pole");
  return num_.evaluate(x) / d;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return {a.num_ * b.num_, a.den_ * b.den_};
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw PreconditionError("division by the zero function");
  return {a.num_ * b.den_, a.den_ * b.num_};
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunction RationalFunction::pow(long e) const {
  if (e < 0) return RationalFunction(Scalar(1)) / pow(-e);
  return {num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e))};
}

bool operator==(const RationalFunction& a, const RationalFunction& b) {
  return a.num_ * b.den_ == b.num_ * a.den_;
}

std::string RationalFunction::to_string() const {
  if (den_.degree() == 0) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

namespace {

struct RationalPolicy {
  using Value = RationalFunction;
  FieldPtr field;

  Value number(const mpq_class& q) const { return RationalFunction(Scalar(q)); }
  Value identifier(const std::string& name) const {
    if (name == "t") return RationalFunction(UPoly::t());
    if (name == "z") {
      if (!field) throw PreconditionError("z used without a cyclotomic field");
      return RationalFunction(Scalar::zeta(field));
    }
    throw PreconditionError("unknown identifier '" + name + "' (only t and z are allowed)");
  }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value sub(const Value& a, const Value& b) const { return a - b; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Value div(const Value& a, const Value& b) const { return a / b; }
  Value neg(const Value& a) const { return -a; }
  Value pow(const Value& a, long e) const { return a.pow(e); }
};

}  // namespace

RationalFunction parse_rational(std::string_view text, const FieldPtr& field, int line, int column) {
  RationalPolicy policy{field};
  return ExpressionParser<RationalPolicy>(text, policy, line, column).parse();
}

int Divisor::degree() const {
  int d = 0;
  for (const auto& [p, n] : terms) d += n;
  return d;
}

int Divisor::at(const Point& p) const {
  for (const auto& [q, n] : terms)
    if (q == p) return n;
  return 0;
}

std::vector<Point> Divisor::support() const {
  std::vector<Point> out;
  for (const auto& [p, n] : terms)
    if (n != 0) out.push_back(p);
  return out;
}

Divisor& Divisor::add(const Point& p, int n) {
  for (auto& [q, m] : terms)
    if (q == p) {
      m += n;
      return *this;
    }
  terms.emplace_back(p, n);
  return *this;
}

Divisor operator+(Divisor a, const Divisor& b) {
  for (const auto& [p, n] : b.terms) a.add(p, n);
  return a;
}

std::string Divisor::to_string() const {
  std::string out;
  for (const auto& [p, n] : terms) {
    if (n == 0) continue;
    if (!out.empty()) out += " + ";
    out += std::to_string(n) + "*[" + p.to_string() + "]";
  }
  return out.empty() ? "0" : out;
}

std::vector<RationalFunction> section_basis(const Divisor& e) {
  std::vector<RationalFunction> out;
  const int deg = e.degree();
  if (deg < 0) return out;
  UPoly pole(Scalar(1));
  UPoly zero(Scalar(1));
  for (const auto& [p, n] : e.terms) {
    if (p.at_infinity || n == 0) continue;
    if (n > 0) pole = pole * UPoly::linear(p.value).pow(static_cast<unsigned>(n));
    else zero = zero * UPoly::linear(p.value).pow(static_cast<unsigned>(-n));
  }
  for (int k = 0; k <= deg; ++k) out.emplace_back(UPoly::t().pow(static_cast<unsigned>(k)) * zero, pole);
  return out;
}

bool is_section(const RationalFunction& f, const Divisor& e) {
  if (f.is_zero()) return true;
  for (const auto& [p, n] : e.terms)
    if (f.order_at(p) < -n) return false;
  if (f.order_at(Point::infinity()) < -e.at(Point::infinity())) return false;
  // Poles away from the support of E.
  const UPoly& den = f.denominator();
  UPoly rest = den;
  for (const auto& [p, n] : e.terms) {
    if (p.at_infinity) continue;
    while (rest.degree() > 0 && rest.evaluate(p.value).is_zero()) rest = divmod(rest, UPoly::linear(p.value)).first;
  }
  return rest.degree() <= 0;
}

int h0(const Divisor& e) { return std::max(e.degree() + 1, 0); }
int h1(const Divisor& e) { return std::max(-e.degree() - 1, 0); }

Scalar fiber_value(const RationalFunction& f, const Divisor& e, const Point& p) {
  const int n = e.at(p);
  return f.laurent(p, -n, -n)[0];
}

std::vector<Scalar> jets(const RationalFunction& f, const Divisor& e, const Divisor& d) {
  std::vector<Scalar> out;
  for (const auto& [q, m] : d.terms) {
    if (m <= 0) continue;
    const int n = e.at(q);
    auto part = f.laurent(q, -n - m, -n - 1);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

int jet_count(const Divisor& d) {
  int c = 0;
  for (const auto& [q, m] : d.terms)
    if (m > 0) c += m;
  return c;
}

FreeComplex cech_complex(int a, const FieldPtr& field) {
  auto base = point_ring(field);
  const int lo = std::min(a, 0) - 1;
  const int hi = std::max(a, 0) + 1;
  std::vector<Generator> c0, c1;
  // Columns: per t-degree k, the U0 part (k >= 0) then the U1 part (k <= a).
  struct Col {
    int k;
    int chart;
  };
  std::vector<Col> cols;
  for (int k = lo; k <= hi; ++k) {
    if (k >= 0) {
      cols.push_back({k, 0});
      c0.push_back({"u0_t" + std::to_string(k), 0});
    }
    if (k <= a) {
      cols.push_back({k, 1});
      c0.push_back({"u1_t" + std::to_string(k), 0});
    }
    c1.push_back({"u01_t" + std::to_string(k), 0});
  }
  FreeComplex c(base);
  c.set_term(0, c0);
  c.set_term(1, c1);
  ScalarMatrix d(c1.size(), c0.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    d(static_cast<std::size_t>(cols[j].k - lo), j) = cols[j].chart == 0 ? Scalar(-1) : Scalar(1);
  c.set_differential(0, PolyMatrix::from_scalars(base, d));
  return c;
}

}  // namespace mfc::p1
