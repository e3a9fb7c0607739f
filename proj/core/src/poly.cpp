#include "mfc/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "mfc/error.hpp"

namespace mfc {

std::optional<std::size_t> Ring::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  return std::nullopt;
}

RingPtr make_ring(FieldPtr field, std::vector<std::string> names, std::vector<int> weights) {
  if (names.size() != weights.size()) throw PreconditionError("ring: one weight per variable required");
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == "z") throw PreconditionError("ring: the name 'z' is reserved for zeta_N");
    for (std::size_t j = 0; j < i; ++j)
      if (names[i] == names[j]) throw PreconditionError("ring: duplicate variable " + names[i]);
  }
  return std::make_shared<const Ring>(Ring{std::move(field), std::move(names), std::move(weights)});
}

RingPtr make_ring(FieldPtr field, std::vector<std::string> names) {
  std::vector<int> w(names.size(), 1);
  return make_ring(std::move(field), std::move(names), std::move(w));
}

RingPtr point_ring(FieldPtr field) { return make_ring(std::move(field), {}, {}); }

bool same_ring(const RingPtr& a, const RingPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  const unsigned na = a->field ? a->field->order() : 1;
  const unsigned nb = b->field ? b->field->order() : 1;
  return na == nb && a->names == b->names && a->weights == b->weights;
}

void require_same_ring(const RingPtr& a, const RingPtr& b, const char* where) {
  if (!same_ring(a, b)) throw PreconditionError(std::string(where) + ": ring mismatch");
}

unsigned total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0U); }

bool DegLexLess::operator()(const Exponents& a, const Exponents& b) const {
  const unsigned da = total_degree(a);
  const unsigned db = total_degree(b);
  if (da != db) return da < db;
  // Within a degree, x1^k sorts last so it prints first.
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Poly::Poly(RingPtr ring) : ring_(std::move(ring)) {}

Poly::Poly(RingPtr ring, const Scalar& constant) : ring_(std::move(ring)) {
  if (!constant.is_zero()) terms_.emplace(Exponents(ring_->size(), 0), constant);
}

Poly Poly::variable(const RingPtr& ring, std::size_t index) {
  Exponents e(ring->size(), 0);
  e.at(index) = 1;
  return monomial(ring, std::move(e));
}

Poly Poly::monomial(const RingPtr& ring, Exponents exponents, const Scalar& coeff) {
  if (exponents.size() != ring->size()) throw PreconditionError("monomial: exponent length mismatch");
  Poly p(ring);
  if (!coeff.is_zero()) p.terms_.emplace(std::move(exponents), coeff);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

Scalar Poly::constant_term() const { return coefficient(Exponents(ring_->size(), 0)); }

Scalar Poly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Scalar() : it->second;
}

void Poly::add_term(const Exponents& e, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& other) {
  if (!ring_) ring_ = other.ring_;
  else if (other.ring_) require_same_ring(ring_, other.ring_, "poly add");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  if (!ring_) ring_ = other.ring_;
  else if (other.ring_) require_same_ring(ring_, other.ring_, "poly sub");
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  require_same_ring(a.ring_, b.ring_, "poly mul");
  Poly r(a.ring_);
  const std::size_t n = a.ring_->size();
  Exponents e(n);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

Poly& Poly::operator*=(const Poly& other) { return *this = *this * other; }

Poly& Poly::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Poly Poly::pow(unsigned exponent) const {
  Poly result(ring_, Scalar(1));
  Poly base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.empty() && b.terms_.empty()) return true;
  if (a.ring_ && b.ring_ && !same_ring(a.ring_, b.ring_)) return false;
  return a.terms_ == b.terms_;
}

int Poly::max_total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(total_degree(e)));
  return d;
}

int Poly::weight_of(const Exponents& e) const {
  int w = 0;
  for (std::size_t i = 0; i < e.size(); ++i) w += static_cast<int>(e[i]) * ring_->weights[i];
  return w;
}

std::optional<int> Poly::homogeneous_weight() const {
  std::optional<int> w;
  for (const auto& [e, c] : terms_) {
    int we = weight_of(e);
    if (w && *w != we) return std::nullopt;
    w = we;
  }
  return w;
}

Poly Poly::derivative(std::size_t var) const {
  Poly r(ring_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents f = e;
    f[var] -= 1;
    r.add_term(f, c * Scalar(static_cast<long>(e[var])));
  }
  return r;
}

Scalar Poly::evaluate(const std::vector<Scalar>& point) const {
  if (point.size() != ring_->size()) throw PreconditionError("evaluate: point dimension mismatch");
  Scalar total;
  for (const auto& [e, c] : terms_) {
    Scalar t = c;
    for (std::size_t i = 0; i < e.size() && !t.is_zero(); ++i)
      if (e[i] > 0) t *= point[i].pow(e[i]);
    total += t;
  }
  return total;
}

Poly Poly::substitute(const std::vector<Poly>& images, const RingPtr& target) const {
  if (images.size() != ring_->size()) throw PreconditionError("substitute: image count mismatch");
  Poly r(target);
  // Cache powers of each image.
  std::vector<std::vector<Poly>> powers(images.size());
  for (const auto& [e, c] : terms_) {
    Poly t(target, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(Poly(target, Scalar(1)));
      while (pw.size() <= e[i]) pw.push_back(pw.back() * images[i]);
      t *= pw[e[i]];
    }
    r += t;
  }
  return r;
}

Poly Poly::rebase(const RingPtr& target) const {
  if (target->size() != ring_->size()) throw PreconditionError("rebase: variable count mismatch");
  Poly r(target);
  r.terms_ = terms_;
  return r;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    const bool is_const = total_degree(e) == 0;
    std::string coeff;
    bool negative = false;
    if (c.term_count() == 1) {
      std::string s = c.to_string();
      negative = s[0] == '-';
      coeff = negative ? s.substr(1) : s;
    } else {
      coeff = "(" + c.to_string() + ")";
    }
    if (!first) os << (negative ? " - " : " + ");
    else if (negative) os << "-";
    first = false;
    bool need_star = false;
    if (is_const || coeff != "1") {
      os << coeff;
      need_star = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (need_star) os << "*";
      os << ring_->names[i];
      if (e[i] > 1) os << "^" << e[i];
      need_star = true;
    }
  }
  return os.str();
}

std::vector<Exponents> monomials_of_degree(std::size_t n, unsigned degree) {
  std::vector<Exponents> out;
  if (n == 0) {
    if (degree == 0) out.emplace_back();
    return out;
  }
  Exponents e(n, 0);
  // Enumerate compositions recursively.
  auto rec = [&](auto&& self, std::size_t i, unsigned remaining) -> void {
    if (i + 1 == n) {
      e[i] = remaining;
      out.push_back(e);
      return;
    }
    for (unsigned k = 0; k <= remaining; ++k) {
      e[i] = k;
      self(self, i + 1, remaining - k);
    }
  };
  rec(rec, 0, degree);
  std::sort(out.begin(), out.end(), DegLexLess{});
  return out;
}

std::vector<Exponents> monomials_of_weight(const std::vector<int>& weights, int weight) {
  for (int w : weights)
    if (w <= 0) throw PreconditionError("weight-graded piece is infinite-dimensional: generator of weight <= 0");
  std::vector<Exponents> out;
  if (weight < 0) return out;
  const std::size_t n = weights.size();
  Exponents e(n, 0);
  auto rec = [&](auto&& self, std::size_t i, int remaining) -> void {
    if (i == n) {
      if (remaining == 0) out.push_back(e);
      return;
    }
    for (int k = 0; k * weights[i] <= remaining; ++k) {
      e[i] = static_cast<unsigned>(k);
      self(self, i + 1, remaining - k * weights[i]);
    }
    e[i] = 0;
  };
  rec(rec, 0, weight);
  std::sort(out.begin(), out.end(), DegLexLess{});
  return out;
}

}  // namespace mfc
