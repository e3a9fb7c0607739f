#include "mfc/dgmf.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "mfc/error.hpp"
#include "mfc/parse.hpp"

namespace mfc {

std::optional<std::string> DgSchemePresentation::defect() const {
  if (!even) return "presentation without an even ring";
  if (differential.size() != odd.size()) return "one differential per odd generator is required";
  for (std::size_t k = 0; k < odd.size(); ++k) {
    const Poly& p = differential[k];
    if (p.is_zero()) continue;
    if (!same_ring(p.ring(), even)) return "d(" + odd[k].name + ") lives over a different ring";
  }
  return std::nullopt;
}

std::optional<std::string> DgSchemePresentation::weight_defect() const {
  for (std::size_t k = 0; k < odd.size(); ++k) {
    const Poly& p = differential[k];
    if (p.is_zero()) continue;
    auto w = p.homogeneous_weight();
    if (!w || *w != odd[k].weight)
      return "d(" + odd[k].name + ") = " + p.to_string() + " does not have weight " + std::to_string(odd[k].weight);
  }
  return std::nullopt;
}

void DgSchemePresentation::validate() const {
  if (auto e = defect()) throw PreconditionError(*e);
}

DgSchemePresentation derived_zero_locus(const std::vector<Poly>& beta, const RingPtr& ring, std::vector<int> odd_weights) {
  if (!odd_weights.empty() && odd_weights.size() != beta.size())
    throw PreconditionError("derived_zero_locus: one weight per component of beta");
  DgSchemePresentation x{ring, {}, {}};
  for (std::size_t k = 0; k < beta.size(); ++k) {
    int w = 0;
    if (!odd_weights.empty()) w = odd_weights[k];
    else if (auto hw = beta[k].homogeneous_weight()) w = *hw;
    x.odd.push_back({"e" + std::to_string(k), w});
    x.differential.push_back(beta[k].is_zero() ? Poly(ring) : beta[k]);
  }
  x.validate();
  return x;
}

int merge_sign(const Subset& s, const Subset& t, Subset& out) {
  out.clear();
  std::size_t i = 0, j = 0;
  int inversions = 0;
  while (i < s.size() || j < t.size()) {
    if (j == t.size() || (i < s.size() && s[i] < t[j])) {
      out.push_back(s[i++]);
    } else if (i == s.size() || t[j] < s[i]) {
      inversions += static_cast<int>(s.size() - i);
      out.push_back(t[j++]);
    } else {
      return 0;
    }
  }
  return inversions % 2 == 0 ? 1 : -1;
}

DgFunction DgFunction::even(const Poly& p, std::size_t odd_count) {
  DgFunction g(p.ring(), odd_count);
  g.add_term({}, p);
  return g;
}

DgFunction DgFunction::generator(const RingPtr& ring, std::size_t odd_count, std::size_t k) {
  if (k >= odd_count) throw PreconditionError("odd generator index out of range");
  DgFunction g(ring, odd_count);
  g.add_term({k}, Poly(ring, Scalar(1)));
  return g;
}

Poly DgFunction::component(const Subset& s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? Poly(ring_) : it->second;
}

void DgFunction::add_term(const Subset& s, const Poly& p) {
  if (p.is_zero()) return;
  auto it = terms_.find(s);
  if (it == terms_.end()) {
    terms_.emplace(s, p);
    return;
  }
  it->second += p;
  if (it->second.is_zero()) terms_.erase(it);
}

std::optional<int> DgFunction::degree() const {
  std::optional<int> d;
  for (const auto& [s, p] : terms_) {
    const int k = -static_cast<int>(s.size());
    if (d && *d != k) return std::nullopt;
    d = k;
  }
  return d;
}

bool DgFunction::is_even() const {
  for (const auto& [s, p] : terms_)
    if (s.size() % 2 != 0) return false;
  return true;
}

bool DgFunction::is_odd() const {
  for (const auto& [s, p] : terms_)
    if (s.size() % 2 == 0) return false;
  return true;
}

std::optional<int> DgFunction::weight(const std::vector<Generator>& odd) const {
  std::optional<int> w;
  for (const auto& [s, p] : terms_) {
    int ow = 0;
    for (auto k : s) ow += odd.at(k).weight;
    for (const auto& [e, c] : p.terms()) {
      const int t = p.weight_of(e) + ow;
      if (w && *w != t) return std::nullopt;
      w = t;
    }
  }
  return w;
}

DgFunction operator+(const DgFunction& a, const DgFunction& b) {
  DgFunction out = a.ring_ ? a : DgFunction(b.ring_, b.odd_);
  if (!a.ring_) out.odd_ = b.odd_;
  for (const auto& [s, p] : b.terms_) out.add_term(s, p);
  return out;
}

DgFunction operator-(const DgFunction& a, const DgFunction& b) { return a + (-b); }

DgFunction operator*(const DgFunction& a, const DgFunction& b) {
  DgFunction out(a.ring_ ? a.ring_ : b.ring_, std::max(a.odd_, b.odd_));
  Subset merged;
  for (const auto& [s, p] : a.terms_)
    for (const auto& [t, q] : b.terms_) {
      const int sign = merge_sign(s, t, merged);
      if (sign == 0) continue;
      out.add_term(merged, sign > 0 ? p * q : -(p * q));
    }
  return out;
}

DgFunction operator*(const Scalar& c, const DgFunction& a) {
  DgFunction out(a.ring_, a.odd_);
  for (const auto& [s, p] : a.terms_) out.add_term(s, p * c);
  return out;
}

DgFunction DgFunction::operator-() const { return Scalar(-1) * *this; }

bool operator==(const DgFunction& a, const DgFunction& b) { return a.terms_ == b.terms_; }

std::string DgFunction::to_string(const std::vector<Generator>& odd) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [s, p] : terms_) {
    std::string wedge;
    for (auto k : s) {
      if (!wedge.empty()) wedge += "*";
      wedge += k < odd.size() ? odd[k].name : "e" + std::to_string(k);
    }
    std::string coeff = p.to_string();
    std::string term;
    if (wedge.empty()) term = coeff;
    else if (coeff == "1") term = wedge;
    else if (coeff == "-1") term = "-" + wedge;
    else term = "(" + coeff + ")*" + wedge;
    if (out.empty()) out = term;
    else if (term[0] == '-') out += " - " + term.substr(1);
    else out += " + " + term;
  }
  return out;
}

DgFunction apply_d(const DgSchemePresentation& x, const DgFunction& g) {
  DgFunction out(x.even, x.odd_count());
  for (const auto& [s, p] : g.terms()) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      const Poly& dk = x.differential.at(s[j]);
      if (dk.is_zero()) continue;
      Subset rest = s;
      rest.erase(rest.begin() + static_cast<long>(j));
      Poly term = p * dk;
      out.add_term(rest, j % 2 == 0 ? term : -term);
    }
  }
  return out;
}

namespace {

struct DgPolicy {
  using Value = DgFunction;
  const DgSchemePresentation& x;

  Value constant(const Scalar& c) const { return DgFunction::even(Poly(x.even, c), x.odd_count()); }
  Value number(const mpq_class& q) const { return constant(Scalar(q)); }
  Value identifier(const std::string& name) const {
    if (name == "z") {
      if (!x.even->field) throw PreconditionError("z used without a cyclotomic field");
      return constant(Scalar::zeta(x.even->field));
    }
    if (auto idx = x.even->index_of(name)) return DgFunction::even(Poly::variable(x.even, *idx), x.odd_count());
    for (std::size_t k = 0; k < x.odd.size(); ++k)
      if (x.odd[k].name == name) return DgFunction::generator(x.even, x.odd_count(), k);
    throw PreconditionError("unknown identifier '" + name + "'");
  }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value sub(const Value& a, const Value& b) const { return a - b; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Value div(const Value& a, const Value& b) const {
    if (b.terms().size() != 1 || !b.terms().count({}) || !b.component({}).is_constant())
      throw PreconditionError("division only by nonzero constants");
    return b.component({}).constant_term().inverse() * a;
  }
  Value neg(const Value& a) const { return -a; }
  Value pow(const Value& a, long e) const {
    if (e < 0) return pow(div(constant(Scalar(1)), a), -e);
    Value r = constant(Scalar(1));
    for (long i = 0; i < e; ++i) r = r * a;
    return r;
  }
};

}  // namespace

DgFunction parse_dg_function(std::string_view text, const DgSchemePresentation& x, int line, int column) {
  DgPolicy policy{x};
  return ExpressionParser<DgPolicy>(text, policy, line, column).parse();
}

DgFunction CurvedDifferential::apply(const DgFunction& p) const { return apply_d(scheme, p) + f * p; }

std::pair<std::vector<Subset>, std::vector<Subset>> exterior_basis(std::size_t n) {
  std::vector<Subset> all;
  for (std::size_t k = 0; k <= n; ++k) {
    Subset s(k);
    for (std::size_t i = 0; i < k; ++i) s[i] = i;
    for (;;) {
      all.push_back(s);
      std::size_t i = k;
      while (i > 0 && s[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++s[i - 1];
      for (std::size_t j = i; j < k; ++j) s[j] = s[j - 1] + 1;
    }
  }
  std::pair<std::vector<Subset>, std::vector<Subset>> out;
  for (auto& s : all) (s.size() % 2 == 0 ? out.first : out.second).push_back(std::move(s));
  return out;
}

namespace {

DgFunction basis_element(const RingPtr& ring, std::size_t n, const Subset& s) {
  DgFunction g(ring, n);
  g.add_term(s, Poly(ring, Scalar(1)));
  return g;
}

}  // namespace

std::optional<std::string> square_defect(const CurvedDifferential& c) {
  const std::size_t n = c.scheme.odd_count();
  auto [even, odd] = exterior_basis(n);
  even.insert(even.end(), odd.begin(), odd.end());
  for (const auto& s : even) {
    DgFunction b = basis_element(c.scheme.even, n, s);
    if (!(c.apply(c.apply(b)) == c.curvature * b))
      return "delta^2 != d(f) on the basis element " + b.to_string(c.scheme.odd);
  }
  return std::nullopt;
}

std::optional<std::string> leibniz_defect(const CurvedDifferential& c) {
  const auto& x = c.scheme;
  const std::size_t n = x.odd_count();
  std::vector<std::pair<DgFunction, int>> gens;
  for (std::size_t i = 0; i < x.even->size(); ++i)
    gens.emplace_back(DgFunction::even(Poly::variable(x.even, i), n), 1);
  for (std::size_t k = 0; k < n; ++k) gens.emplace_back(DgFunction::generator(x.even, n, k), -1);
  auto [even, odd] = exterior_basis(n);
  even.insert(even.end(), odd.begin(), odd.end());
  for (const auto& [phi, sign] : gens)
    for (const auto& s : even) {
      DgFunction p = basis_element(x.even, n, s);
      DgFunction lhs = c.apply(phi * p);
      DgFunction rhs = apply_d(x, phi) * p + Scalar(sign) * (phi * c.apply(p));
      if (!(lhs == rhs))
        return "Leibniz rule fails for " + phi.to_string(x.odd) + " times " + p.to_string(x.odd);
    }
  return std::nullopt;
}

CurvedDifferential dgmf_from_homotopy(const DgSchemePresentation& x, const DgFunction& f) {
  x.validate();
  if (!f.is_zero() && (!same_ring(f.ring(), x.even) || f.odd_count() != x.odd_count()))
    throw PreconditionError("f does not live on the given dg-scheme");
  if (!f.is_odd()) throw PreconditionError("f must be odd (exterior degree 1, 3, ...)");
  DgFunction fz = f.is_zero() ? DgFunction(x.even, x.odd_count()) : f;
  DgFunction sq = fz * fz;
  if (!sq.is_zero()) throw CertificateError("f^2 != 0: f^2 = " + sq.to_string(x.odd));
  CurvedDifferential c{x, fz, apply_d(x, fz)};
  if (auto e = square_defect(c)) throw CertificateError(*e);
  if (auto e = leibniz_defect(c)) throw CertificateError(*e);
  return c;
}

std::optional<std::string> MatrixFactorization::defect() const {
  const std::size_t n0 = p0.size(), n1 = p1.size();
  if (delta0.rows() != n1 || delta0.cols() != n0 || delta1.rows() != n0 || delta1.cols() != n1)
    return "delta0/delta1 shapes do not match the ranks (" + std::to_string(n0) + "|" + std::to_string(n1) + ")";
  if (!potential.is_zero() && !same_ring(potential.ring(), ring)) return "potential lives over a different ring";
  Poly w = potential.is_zero() ? Poly(ring) : potential;
  if (n0 > 0 && !(delta1 * delta0 == PolyMatrix::scalar_identity(w, n0))) return "delta1 delta0 != W id";
  if (n1 > 0 && !(delta0 * delta1 == PolyMatrix::scalar_identity(w, n1))) return "delta0 delta1 != W id";
  return std::nullopt;
}

std::optional<std::string> MatrixFactorization::weight_defect() const {
  int d = 0;
  if (!potential.is_zero()) {
    auto w = potential.homogeneous_weight();
    if (!w) return "potential is not quasihomogeneous";
    d = *w;
  }
  auto check = [&](const PolyMatrix& m, const std::vector<Generator>& src, const std::vector<Generator>& dst,
                   const char* name) -> std::optional<std::string> {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        for (const auto& [e, c] : m(i, j).terms()) {
          const int diff = m(i, j).weight_of(e) - (src[j].weight - dst[i].weight);
          if (d == 0 ? diff != 0 : diff % d != 0) {
            std::ostringstream os;
            os << name << " entry (" << i << ", " << j << ") has a term of the wrong weight";
            return os.str();
          }
        }
    return std::nullopt;
  };
  if (auto e = check(delta0, p0, p1, "delta0")) return e;
  return check(delta1, p1, p0, "delta1");
}

void MatrixFactorization::validate() const {
  if (auto e = defect()) throw CertificateError(*e);
  if (auto e = weight_defect()) throw CertificateError(*e);
}

MatrixFactorization MatrixFactorization::evaluate(const std::vector<Scalar>& point) const {
  auto base = point_ring(ring->field);
  Poly w(base, potential.is_zero() ? Scalar() : potential.evaluate(point));
  return {base, p0, p1, PolyMatrix::from_scalars(base, delta0.evaluate(point)),
          PolyMatrix::from_scalars(base, delta1.evaluate(point)), w};
}

MatrixFactorization MatrixFactorization::substitute(const std::vector<Poly>& images, const RingPtr& target) const {
  Poly w = potential.is_zero() ? Poly(target) : potential.substitute(images, target);
  return {target, p0, p1, delta0.substitute(images, target), delta1.substitute(images, target), w};
}

PolyMatrix MatrixFactorization::delta() const {
  const std::size_t n0 = p0.size(), n1 = p1.size();
  PolyMatrix m(ring, n0 + n1, n0 + n1);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n0; ++j) m(n0 + i, j) = delta0(i, j);
  for (std::size_t i = 0; i < n0; ++i)
    for (std::size_t j = 0; j < n1; ++j) m(i, n0 + j) = delta1(i, j);
  return m;
}

bool operator==(const MatrixFactorization& a, const MatrixFactorization& b) {
  Poly wa = a.potential.is_zero() ? Poly(a.ring) : a.potential;
  Poly wb = b.potential.is_zero() ? Poly(b.ring) : b.potential;
  return same_ring(a.ring, b.ring) && a.p0.size() == b.p0.size() && a.p1.size() == b.p1.size() &&
         a.delta0 == b.delta0 && a.delta1 == b.delta1 && wa == wb;
}

namespace {

std::vector<Generator> wedge_generators(const std::vector<Subset>& basis, const std::vector<Generator>& odd) {
  std::vector<Generator> out;
  for (const auto& s : basis) {
    Generator g{"", 0};
    for (auto k : s) {
      if (!g.name.empty()) g.name += "^";
      g.name += odd[k].name;
      g.weight += odd[k].weight;
    }
    if (g.name.empty()) g.name = "1";
    out.push_back(std::move(g));
  }
  return out;
}

std::map<Subset, std::size_t> index_of(const std::vector<Subset>& basis) {
  std::map<Subset, std::size_t> idx;
  for (std::size_t i = 0; i < basis.size(); ++i) idx[basis[i]] = i;
  return idx;
}

}  // namespace

MatrixFactorization koszul_mf(const std::vector<Poly>& alpha, const std::vector<Poly>& beta, std::vector<int> odd_weights) {
  if (alpha.size() != beta.size())
    throw PreconditionError("koszul_mf: alpha has " + std::to_string(alpha.size()) + " entries, beta has " +
                            std::to_string(beta.size()));
  if (alpha.empty()) throw PreconditionError("koszul_mf: rank must be positive");
  if (!odd_weights.empty() && odd_weights.size() != beta.size())
    throw PreconditionError("koszul_mf: one weight per component");
  const RingPtr ring = alpha.front().ring() ? alpha.front().ring() : beta.front().ring();
  const std::size_t n = alpha.size();
  Poly w(ring);
  for (std::size_t i = 0; i < n; ++i) {
    if (!alpha[i].is_zero()) require_same_ring(ring, alpha[i].ring(), "koszul_mf");
    if (!beta[i].is_zero()) require_same_ring(ring, beta[i].ring(), "koszul_mf");
    if (!alpha[i].is_zero() && !beta[i].is_zero()) w += alpha[i] * beta[i];
  }
  std::vector<Generator> odd;
  auto wd = w.homogeneous_weight();
  for (std::size_t k = 0; k < n; ++k) {
    int wk = 0;
    if (!odd_weights.empty()) wk = odd_weights[k];
    else if (auto hb = beta[k].homogeneous_weight()) wk = *hb;
    else if (auto ha = alpha[k].homogeneous_weight(); ha && wd) wk = *wd - *ha;
    odd.push_back({"e" + std::to_string(k), wk});
  }
  auto [even_basis, odd_basis] = exterior_basis(n);
  auto even_idx = index_of(even_basis);
  auto odd_idx = index_of(odd_basis);

  // One parity to the other: alpha ^ (via wedge_insert) plus iota_beta.
  auto build = [&](const std::vector<Subset>& src, const std::map<Subset, std::size_t>& dst_idx, std::size_t rows) {
    PolyMatrix m(ring, rows, src.size());
    std::vector<std::size_t> merged;
    for (std::size_t c = 0; c < src.size(); ++c) {
      const Subset& s = src[c];
      for (std::size_t i = 0; i < n; ++i) {
        if (alpha[i].is_zero()) continue;
        const int sign = wedge_insert(i, s, merged);
        if (sign == 0) continue;
        m(dst_idx.at(merged), c) += sign > 0 ? alpha[i] : -alpha[i];
      }
      for (std::size_t j = 0; j < s.size(); ++j) {
        if (beta[s[j]].is_zero()) continue;
        Subset rest = s;
        rest.erase(rest.begin() + static_cast<long>(j));
        m(dst_idx.at(rest), c) += j % 2 == 0 ? beta[s[j]] : -beta[s[j]];
      }
    }
    return m;
  };
  MatrixFactorization mf{ring,
                         wedge_generators(even_basis, odd),
                         wedge_generators(odd_basis, odd),
                         build(even_basis, odd_idx, odd_basis.size()),
                         build(odd_basis, even_idx, even_basis.size()),
                         w};
  if (auto e = mf.defect()) throw CertificateError("koszul_mf: " + *e);
  return mf;
}

MatrixFactorization fold_to_mf(const CurvedDifferential& c) {
  const auto& x = c.scheme;
  const std::size_t n = x.odd_count();
  for (const auto& [s, p] : c.curvature.terms())
    if (!s.empty()) throw CertificateError("curvature is not a function on the even coordinates");
  auto [even_basis, odd_basis] = exterior_basis(n);
  auto fold_part = [&](const std::vector<Subset>& src, const std::vector<Subset>& dst) {
    PolyMatrix m(x.even, dst.size(), src.size());
    for (std::size_t col = 0; col < src.size(); ++col) {
      DgFunction image = c.apply(basis_element(x.even, n, src[col]));
      for (std::size_t row = 0; row < dst.size(); ++row) m(row, col) = image.component(dst[row]);
    }
    return m;
  };
  MatrixFactorization mf{x.even,
                         wedge_generators(even_basis, x.odd),
                         wedge_generators(odd_basis, x.odd),
                         fold_part(even_basis, odd_basis),
                         fold_part(odd_basis, even_basis),
                         c.curvature.component({})};
  if (auto e = mf.defect()) throw CertificateError("fold_to_mf: " + *e);
  return mf;
}

MatrixFactorization unit_mf(const RingPtr& ring) {
  return {ring, {{"1", 0}}, {}, PolyMatrix(ring, 0, 1), PolyMatrix(ring, 1, 0), Poly(ring)};
}

namespace {

// Add sign * (a (x) b) into m at (row, col).
void put_kron(PolyMatrix& m, std::size_t row, std::size_t col, const PolyMatrix& a, const PolyMatrix& b, int sign) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) {
          if (b(k, l).is_zero()) continue;
          Poly v = a(i, j) * b(k, l);
          m(row + i * b.rows() + k, col + j * b.cols() + l) += sign > 0 ? v : -v;
        }
    }
}

std::vector<Generator> tensor_generators(const std::vector<Generator>& a, const std::vector<Generator>& b) {
  std::vector<Generator> out;
  for (const auto& x : a)
    for (const auto& y : b) out.push_back({x.name + "*" + y.name, x.weight + y.weight});
  return out;
}

}  // namespace

MatrixFactorization mf_tensor(const MatrixFactorization& m, const MatrixFactorization& n) {
  require_same_ring(m.ring, n.ring, "mf_tensor");
  const RingPtr& ring = m.ring;
  const std::size_t m0 = m.p0.size(), m1 = m.p1.size(), n0 = n.p0.size(), n1 = n.p1.size();
  auto id = [&](std::size_t k) { return PolyMatrix::identity(ring, k); };
  std::vector<Generator> p0 = tensor_generators(m.p0, n.p0);
  auto p0b = tensor_generators(m.p1, n.p1);
  p0.insert(p0.end(), p0b.begin(), p0b.end());
  std::vector<Generator> p1 = tensor_generators(m.p0, n.p1);
  auto p1b = tensor_generators(m.p1, n.p0);
  p1.insert(p1.end(), p1b.begin(), p1b.end());

  // P0 = [M0 N0, M1 N1], P1 = [M0 N1, M1 N0]; delta(a (x) b) = delta a (x) b + (-1)^|a| a (x) delta b.
  PolyMatrix d0(ring, p1.size(), p0.size());
  put_kron(d0, 0, 0, id(m0), n.delta0, 1);
  put_kron(d0, 0, m0 * n0, m.delta1, id(n1), 1);
  put_kron(d0, m0 * n1, 0, m.delta0, id(n0), 1);
  put_kron(d0, m0 * n1, m0 * n0, id(m1), n.delta1, -1);
  PolyMatrix d1(ring, p0.size(), p1.size());
  put_kron(d1, 0, 0, id(m0), n.delta1, 1);
  put_kron(d1, 0, m0 * n1, m.delta1, id(n0), 1);
  put_kron(d1, m0 * n0, 0, m.delta0, id(n1), 1);
  put_kron(d1, m0 * n0, m0 * n1, id(m1), n.delta0, -1);

  Poly w = (m.potential.is_zero() ? Poly(ring) : m.potential) + (n.potential.is_zero() ? Poly(ring) : n.potential);
  MatrixFactorization out{ring, std::move(p0), std::move(p1), std::move(d0), std::move(d1), w};
  if (auto e = out.defect()) throw CertificateError("mf_tensor: " + *e);
  return out;
}

PolyMatrix multiplication_matrix(const DgFunction& g) {
  const std::size_t n = g.odd_count();
  auto [even_basis, odd_basis] = exterior_basis(n);
  even_basis.insert(even_basis.end(), odd_basis.begin(), odd_basis.end());
  auto idx = index_of(even_basis);
  PolyMatrix m(g.ring(), even_basis.size(), even_basis.size());
  Subset merged;
  for (std::size_t c = 0; c < even_basis.size(); ++c)
    for (const auto& [s, p] : g.terms()) {
      const int sign = merge_sign(s, even_basis[c], merged);
      if (sign == 0) continue;
      m(idx.at(merged), c) += sign > 0 ? p : -p;
    }
  return m;
}

std::optional<PolyMatrix> nullhomotopy_solve(const MatrixFactorization& m, const PolyMatrix& target,
                                             unsigned degree_bound) {
  const RingPtr& ring = m.ring;
  const std::size_t n0 = m.p0.size();
  const std::size_t n = n0 + m.p1.size();
  if (target.rows() != n || target.cols() != n) throw PreconditionError("nullhomotopy target has the wrong shape");
  const PolyMatrix delta = m.delta();
  auto parity = [&](std::size_t i) { return i < n0 ? 0 : 1; };

  std::vector<Exponents> monos;
  for (unsigned k = 0; k <= degree_bound; ++k) {
    auto part = monomials_of_degree(ring->size(), k);
    monos.insert(monos.end(), part.begin(), part.end());
    if (ring->size() == 0) break;
  }
  struct Unknown {
    std::size_t row, col, mono;
  };
  std::vector<Unknown> unknowns;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (parity(i) != parity(j))
        for (std::size_t k = 0; k < monos.size(); ++k) unknowns.push_back({i, j, k});

  using Key = std::tuple<std::size_t, std::size_t, Exponents>;
  std::map<Key, std::size_t> eq_index;
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> columns(unknowns.size());
  auto eq = [&](std::size_t r, std::size_t c, const Exponents& e) {
    auto [it, fresh] = eq_index.try_emplace(Key{r, c, e}, eq_index.size());
    return it->second;
  };
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    const auto& [k, c, mi] = unknowns[u];
    const Poly xm = Poly::monomial(ring, monos[mi]);
    // (delta h)(r, c) gets delta(r, k) x^m; (h delta)(k, c2) gets x^m delta(c, c2).
    for (std::size_t r = 0; r < n; ++r) {
      if (delta(r, k).is_zero()) continue;
      const Poly v = delta(r, k) * xm;
      for (const auto& [e, coef] : v.terms()) columns[u].emplace_back(eq(r, c, e), coef);
    }
    for (std::size_t c2 = 0; c2 < n; ++c2) {
      if (delta(c, c2).is_zero()) continue;
      const Poly v = xm * delta(c, c2);
      for (const auto& [e, coef] : v.terms()) columns[u].emplace_back(eq(k, c2, e), coef);
    }
  }
  std::vector<std::pair<std::size_t, Scalar>> rhs_terms;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      for (const auto& [e, coef] : target(r, c).terms()) rhs_terms.emplace_back(eq(r, c, e), coef);

  ScalarMatrix a(eq_index.size(), unknowns.size());
  for (std::size_t u = 0; u < unknowns.size(); ++u)
    for (const auto& [row, coef] : columns[u]) a(row, u) += coef;
  std::vector<Scalar> b(eq_index.size());
  for (const auto& [row, coef] : rhs_terms) b[row] += coef;

  std::optional<std::vector<Scalar>> sol;
  if (unknowns.empty()) {
    bool zero = std::all_of(b.begin(), b.end(), [](const Scalar& s) { return s.is_zero(); });
    if (zero) sol = std::vector<Scalar>{};
  } else {
    sol = solve(a, b);
  }
  if (!sol) return std::nullopt;
  PolyMatrix h(ring, n, n);
  for (std::size_t u = 0; u < unknowns.size(); ++u)
    if (!(*sol)[u].is_zero()) h(unknowns[u].row, unknowns[u].col) += Poly::monomial(ring, monos[unknowns[u].mono], (*sol)[u]);
  if (!(delta * h + h * delta == target)) throw CertificateError("nullhomotopy solution failed verification");
  return h;
}

std::vector<SupportVerdict> support_check(const MatrixFactorization& m, const std::vector<std::vector<Scalar>>& points,
                                          unsigned degree_bound) {
  std::vector<SupportVerdict> out;
  for (const auto& p : points) {
    MatrixFactorization at = m.evaluate(p);
    SupportVerdict v{p, SupportVerdict::Kind::unknown, std::nullopt};
    const std::size_t n = at.p0.size() + at.p1.size();
    v.homotopy = nullhomotopy_solve(at, PolyMatrix::identity(at.ring, n), degree_bound);
    // Over a point the unknowns are constants, so the solve is complete.
    v.kind = v.homotopy ? SupportVerdict::Kind::contractible : SupportVerdict::Kind::noncontractible;
    out.push_back(std::move(v));
  }
  return out;
}

std::string to_string(SupportVerdict::Kind k) {
  switch (k) {
    case SupportVerdict::Kind::contractible: return "contractible";
    case SupportVerdict::Kind::noncontractible: return "noncontractible";
    default: return "unknown";
  }
}

std::pair<std::size_t, std::size_t> fiber_homology(const MatrixFactorization& m, const std::vector<Scalar>& point) {
  MatrixFactorization at = m.evaluate(point);
  if (!at.potential.is_zero()) throw PreconditionError("fiber homology needs a zero of the potential");
  const std::size_t r0 = at.p0.empty() || at.p1.empty() ? 0 : rank(at.delta0.to_scalars());
  const std::size_t r1 = at.p0.empty() || at.p1.empty() ? 0 : rank(at.delta1.to_scalars());
  return {at.p0.size() - r0 - r1, at.p1.size() - r0 - r1};
}

std::optional<DgFunction> find_primitive(const DgSchemePresentation& x, const DgFunction& target, int weight) {
  const std::size_t n = x.odd_count();
  const RingPtr& ring = x.even;
  struct Unknown {
    std::size_t k, l;
    Exponents mono;
  };
  std::vector<Unknown> unknowns;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = k + 1; l < n; ++l) {
      const int w = weight - x.odd[k].weight - x.odd[l].weight;
      if (w < 0) continue;
      for (auto& e : monomials_of_weight(ring->weights, w)) unknowns.push_back({k, l, e});
    }
  using Key = std::pair<Subset, Exponents>;
  std::map<Key, std::size_t> rows;
  std::vector<DgFunction> images;
  for (const auto& u : unknowns) {
    DgFunction h(ring, n);
    h.add_term({u.k, u.l}, Poly::monomial(ring, u.mono));
    images.push_back(apply_d(x, h));
    for (const auto& [s, p] : images.back().terms())
      for (const auto& [e, c] : p.terms()) rows.try_emplace({s, e}, rows.size());
  }
  for (const auto& [s, p] : target.terms())
    for (const auto& [e, c] : p.terms()) rows.try_emplace({s, e}, rows.size());
  ScalarMatrix a(rows.size(), unknowns.size());
  for (std::size_t u = 0; u < unknowns.size(); ++u)
    for (const auto& [s, p] : images[u].terms())
      for (const auto& [e, c] : p.terms()) a(rows.at({s, e}), u) += c;
  std::vector<Scalar> b(rows.size());
  for (const auto& [s, p] : target.terms())
    for (const auto& [e, c] : p.terms()) b[rows.at({s, e})] += c;
  DgFunction h(ring, n);
  if (unknowns.empty()) {
    if (target.is_zero()) return h;
    return std::nullopt;
  }
  auto sol = solve(a, b);
  if (!sol) return std::nullopt;
  for (std::size_t u = 0; u < unknowns.size(); ++u)
    if (!(*sol)[u].is_zero()) h.add_term({unknowns[u].k, unknowns[u].l}, Poly::monomial(ring, unknowns[u].mono, (*sol)[u]));
  if (!(apply_d(x, h) == target)) throw CertificateError("primitive failed verification");
  return h;
}

GaugeIntertwiner gauge_intertwiner(const CurvedDifferential& from, const CurvedDifferential& to, const DgFunction& h) {
  const auto& x = from.scheme;
  if (!h.is_even()) throw PreconditionError("gauge: h must be even");
  for (const auto& [s, p] : h.terms())
    if (s.empty()) throw PreconditionError("gauge: h must have no component of exterior degree 0");
  if (!(to.f - from.f == apply_d(x, h))) throw PreconditionError("gauge: f' - f != d(h)");
  const std::size_t n = x.odd_count();
  DgFunction e = DgFunction::even(Poly(x.even, Scalar(1)), n);
  DgFunction term = e;
  const DgFunction minus_h = -h;
  for (long k = 1;; ++k) {
    term = Scalar::rational(1, k) * (term * minus_h);
    if (term.is_zero()) break;
    e = e + term;
  }
  PolyMatrix full = multiplication_matrix(e);
  auto [even_basis, odd_basis] = exterior_basis(n);
  const std::size_t n0 = even_basis.size(), n1 = odd_basis.size();
  GaugeIntertwiner g{e, PolyMatrix(x.even, n0, n0), PolyMatrix(x.even, n1, n1)};
  for (std::size_t i = 0; i < n0 + n1; ++i)
    for (std::size_t j = 0; j < n0 + n1; ++j) {
      if (full(i, j).is_zero()) continue;
      if ((i < n0) != (j < n0)) throw CertificateError("gauge: exp(-h) is not even");
      if (i < n0) g.e0(i, j) = full(i, j);
      else g.e1(i - n0, j - n0) = full(i, j);
    }
  MatrixFactorization a = fold_to_mf(from);
  MatrixFactorization b = fold_to_mf(to);
  if (!(b.delta0 * g.e0 == g.e1 * a.delta0) || !(b.delta1 * g.e1 == g.e0 * a.delta1))
    throw CertificateError("gauge: exp(-h) does not intertwine the two differentials");
  return g;
}

}  // namespace mfc
