#include "mfc/complex.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

#include "mfc/error.hpp"

namespace mfc {

namespace {

const std::vector<Generator>& empty_generators() {
  static const std::vector<Generator> empty;
  return empty;
}

std::vector<int> union_degrees(const std::vector<int>& a, const std::vector<int>& b) {
  std::set<int> s(a.begin(), a.end());
  s.insert(b.begin(), b.end());
  return {s.begin(), s.end()};
}

}  // namespace

void FreeComplex::set_term(int degree, std::vector<Generator> generators) {
  terms_[degree] = std::move(generators);
}

void FreeComplex::set_differential(int degree, PolyMatrix d) {
  if (d.rows() != rank(degree + 1) || d.cols() != rank(degree))
    throw PreconditionError("differential in degree " + std::to_string(degree) + " has shape " +
                            std::to_string(d.rows()) + "x" + std::to_string(d.cols()) + ", expected " +
                            std::to_string(rank(degree + 1)) + "x" + std::to_string(rank(degree)));
  if (d.rows() == 0 || d.cols() == 0) return;
  require_same_ring(ring_, d.ring(), "set_differential");
  diffs_[degree] = std::move(d);
}

const std::vector<Generator>& FreeComplex::term(int degree) const {
  auto it = terms_.find(degree);
  return it == terms_.end() ? empty_generators() : it->second;
}

PolyMatrix FreeComplex::differential(int degree) const {
  auto it = diffs_.find(degree);
  if (it != diffs_.end()) return it->second;
  return PolyMatrix(ring_, rank(degree + 1), rank(degree));
}

std::vector<int> FreeComplex::degrees() const {
  std::vector<int> out;
  for (const auto& [deg, gens] : terms_)
    if (!gens.empty()) out.push_back(deg);
  return out;
}

int FreeComplex::euler_characteristic() const {
  int chi = 0;
  for (const auto& [deg, gens] : terms_) chi += (deg % 2 == 0 ? 1 : -1) * static_cast<int>(gens.size());
  return chi;
}

std::optional<std::string> FreeComplex::square_defect() const {
  for (int n : degrees()) {
    if (rank(n + 2) == 0) continue;
    PolyMatrix sq = differential(n + 1) * differential(n);
    if (!sq.is_zero()) return "d^" + std::to_string(n + 1) + " o d^" + std::to_string(n) + " != 0";
  }
  return std::nullopt;
}

std::optional<std::string> FreeComplex::weight_defect() const {
  for (const auto& [n, d] : diffs_) {
    const auto& src = term(n);
    const auto& dst = term(n + 1);
    for (std::size_t i = 0; i < d.rows(); ++i)
      for (std::size_t j = 0; j < d.cols(); ++j) {
        const Poly& p = d(i, j);
        if (p.is_zero()) continue;
        auto w = p.homogeneous_weight();
        if (!w || *w != src[j].weight - dst[i].weight) {
          std::ostringstream os;
          os << "differential entry (" << i << ", " << j << ") in degree " << n << " = " << p.to_string()
             << " does not preserve R-weight";
          return os.str();
        }
      }
  }
  return std::nullopt;
}

void FreeComplex::validate() const {
  if (auto e = square_defect()) throw CertificateError(*e);
  if (auto e = weight_defect()) throw CertificateError(*e);
}

FreeComplex FreeComplex::evaluate(const std::vector<Scalar>& point) const {
  auto base = point_ring(ring_->field);
  FreeComplex out(base);
  for (const auto& [deg, gens] : terms_) out.set_term(deg, gens);
  for (const auto& [deg, d] : diffs_) out.set_differential(deg, PolyMatrix::from_scalars(base, d.evaluate(point)));
  return out;
}

bool operator==(const FreeComplex& a, const FreeComplex& b) {
  if (a.degrees() != b.degrees()) return false;
  for (int n : a.degrees()) {
    if (a.term(n) != b.term(n)) return false;
    if (!(a.differential(n) == b.differential(n))) return false;
  }
  return true;
}

PolyMatrix ChainMap::at(int degree) const {
  auto it = components.find(degree);
  if (it != components.end()) return it->second;
  return PolyMatrix(source.ring(), target.rank(degree), source.rank(degree));
}

std::optional<std::string> ChainMap::defect() const {
  require_same_ring(source.ring(), target.ring(), "chain map");
  for (const auto& [n, m] : components)
    if (m.rows() != target.rank(n) || m.cols() != source.rank(n))
      return "component in degree " + std::to_string(n) + " has the wrong shape";
  for (int n : union_degrees(source.degrees(), target.degrees())) {
    for (int k : {n - 1, n}) {
      PolyMatrix lhs = target.differential(k) * at(k);
      PolyMatrix rhs = at(k + 1) * source.differential(k);
      if (!(lhs == rhs)) return "square in degree " + std::to_string(k) + " does not commute: d f != f d";
    }
  }
  return std::nullopt;
}

namespace {

// Place block into m at (row, col).
void put_block(PolyMatrix& m, std::size_t row, std::size_t col, const PolyMatrix& block, const Scalar& sign) {
  for (std::size_t i = 0; i < block.rows(); ++i)
    for (std::size_t j = 0; j < block.cols(); ++j)
      if (!block(i, j).is_zero()) m(row + i, col + j) = block(i, j) * sign;
}

}  // namespace

FreeComplex cone(const ChainMap& f) {
  if (auto e = f.defect()) throw PreconditionError("cone: not a chain map: " + *e);
  const FreeComplex& c = f.source;
  const FreeComplex& d = f.target;
  FreeComplex out(d.ring());
  std::vector<int> shifted;
  for (int n : c.degrees()) shifted.push_back(n - 1);
  std::vector<int> degs = union_degrees(d.degrees(), shifted);
  for (int n : degs) {
    std::vector<Generator> gens = d.term(n);
    const auto& cg = c.term(n + 1);
    gens.insert(gens.end(), cg.begin(), cg.end());
    out.set_term(n, std::move(gens));
  }
  for (int n : degs) {
    if (out.rank(n + 1) == 0) continue;
    PolyMatrix m(d.ring(), out.rank(n + 1), out.rank(n));
    put_block(m, 0, 0, d.differential(n), Scalar(1));
    put_block(m, 0, d.rank(n), f.at(n + 1), Scalar(1));
    put_block(m, d.rank(n + 1), d.rank(n), c.differential(n + 1), Scalar(-1));
    out.set_differential(n, std::move(m));
  }
  return out;
}

FreeComplex shift(const FreeComplex& c, int k) {
  FreeComplex out(c.ring());
  const Scalar sign = (k % 2 == 0) ? Scalar(1) : Scalar(-1);
  for (int n : c.degrees()) out.set_term(n - k, c.term(n));
  for (int n : c.degrees())
    if (c.rank(n + 1) > 0) out.set_differential(n - k, sign * c.differential(n));
  return out;
}

FreeComplex direct_sum(const FreeComplex& a, const FreeComplex& b) {
  require_same_ring(a.ring(), b.ring(), "direct_sum");
  FreeComplex out(a.ring());
  std::vector<int> degs = union_degrees(a.degrees(), b.degrees());
  for (int n : degs) {
    std::vector<Generator> gens = a.term(n);
    gens.insert(gens.end(), b.term(n).begin(), b.term(n).end());
    out.set_term(n, std::move(gens));
  }
  for (int n : degs) {
    if (out.rank(n + 1) == 0) continue;
    PolyMatrix m(a.ring(), out.rank(n + 1), out.rank(n));
    put_block(m, 0, 0, a.differential(n), Scalar(1));
    put_block(m, a.rank(n + 1), a.rank(n), b.differential(n), Scalar(1));
    out.set_differential(n, std::move(m));
  }
  return out;
}

FreeComplex tensor(const FreeComplex& c, const FreeComplex& d) {
  require_same_ring(c.ring(), d.ring(), "tensor");
  struct Index {
    int p;
    std::size_t i;
    std::size_t j;
  };
  std::map<int, std::vector<Index>> layout;
  for (int p : c.degrees())
    for (int q : d.degrees())
      for (std::size_t i = 0; i < c.rank(p); ++i)
        for (std::size_t j = 0; j < d.rank(q); ++j) layout[p + q].push_back({p, i, j});
  for (auto& [n, v] : layout)
    std::sort(v.begin(), v.end(), [](const Index& x, const Index& y) {
      return std::tie(x.p, x.i, x.j) < std::tie(y.p, y.i, y.j);
    });

  FreeComplex out(c.ring());
  for (const auto& [n, v] : layout) {
    std::vector<Generator> gens;
    for (const auto& ix : v) {
      const Generator& gc = c.term(ix.p)[ix.i];
      const Generator& gd = d.term(n - ix.p)[ix.j];
      gens.push_back({gc.name + "*" + gd.name, gc.weight + gd.weight});
    }
    out.set_term(n, std::move(gens));
  }
  for (const auto& [n, v] : layout) {
    auto next = layout.find(n + 1);
    if (next == layout.end()) continue;
    std::map<std::tuple<int, std::size_t, std::size_t>, std::size_t> pos;
    for (std::size_t r = 0; r < next->second.size(); ++r) {
      const auto& ix = next->second[r];
      pos[{ix.p, ix.i, ix.j}] = r;
    }
    PolyMatrix m(c.ring(), next->second.size(), v.size());
    for (std::size_t col = 0; col < v.size(); ++col) {
      const auto& ix = v[col];
      const int q = n - ix.p;
      if (c.rank(ix.p + 1) > 0) {
        PolyMatrix dc = c.differential(ix.p);
        for (std::size_t i2 = 0; i2 < dc.rows(); ++i2)
          if (!dc(i2, ix.i).is_zero()) m(pos.at({ix.p + 1, i2, ix.j}), col) += dc(i2, ix.i);
      }
      if (d.rank(q + 1) > 0) {
        PolyMatrix dd = d.differential(q);
        const Scalar sign = (ix.p % 2 == 0) ? Scalar(1) : Scalar(-1);
        for (std::size_t j2 = 0; j2 < dd.rows(); ++j2)
          if (!dd(j2, ix.j).is_zero()) m(pos.at({ix.p, ix.i, j2}), col) += dd(j2, ix.j) * sign;
      }
    }
    out.set_differential(n, std::move(m));
  }
  return out;
}

FreeComplex unit_complex(const RingPtr& ring) {
  FreeComplex u(ring);
  u.set_term(0, {{"1", 0}});
  return u;
}

ChainMap identity_map(const FreeComplex& c) {
  ChainMap f{c, c, {}};
  for (int n : c.degrees()) f.components[n] = PolyMatrix::identity(c.ring(), c.rank(n));
  return f;
}

ChainMap tensor_map(const ChainMap& f, const ChainMap& g) {
  ChainMap out{tensor(f.source, g.source), tensor(f.target, g.target), {}};
  auto offsets = [](const FreeComplex& a, const FreeComplex& b, int n) {
    std::map<int, std::size_t> off;
    std::size_t at = 0;
    for (int p : a.degrees()) {
      off[p] = at;
      at += a.rank(p) * b.rank(n - p);
    }
    return off;
  };
  for (int n : out.source.degrees()) {
    if (out.target.rank(n) == 0) continue;
    auto so = offsets(f.source, g.source, n);
    auto to = offsets(f.target, g.target, n);
    PolyMatrix m(out.source.ring(), out.target.rank(n), out.source.rank(n));
    for (auto [p, s0] : so) {
      auto it = to.find(p);
      if (it == to.end()) continue;
      const int q = n - p;
      PolyMatrix fp = f.at(p);
      PolyMatrix gq = g.at(q);
      const std::size_t sb = g.source.rank(q);
      const std::size_t tb = g.target.rank(q);
      for (std::size_t i = 0; i < fp.cols(); ++i)
        for (std::size_t j = 0; j < sb; ++j)
          for (std::size_t i2 = 0; i2 < fp.rows(); ++i2) {
            if (fp(i2, i).is_zero()) continue;
            for (std::size_t j2 = 0; j2 < tb; ++j2)
              if (!gq(j2, j).is_zero()) m(it->second + i2 * tb + j2, s0 + i * sb + j) += fp(i2, i) * gq(j2, j);
          }
    }
    out.components[n] = std::move(m);
  }
  return out;
}

FreeComplex substitute(const FreeComplex& c, const std::vector<Poly>& images, const RingPtr& target) {
  FreeComplex out(target);
  for (int n : c.degrees()) out.set_term(n, c.term(n));
  for (int n : c.degrees())
    if (c.rank(n + 1) > 0) out.set_differential(n, c.differential(n).substitute(images, target));
  return out;
}

std::map<int, std::size_t> homology_ranks(const FreeComplex& c) {
  if (!c.is_point_base()) throw PreconditionError("homology only over a point; restrict to a fiber first");
  std::map<int, std::size_t> out;
  std::map<int, std::size_t> ranks;
  auto rank_of = [&](int n) -> std::size_t {
    auto it = ranks.find(n);
    if (it != ranks.end()) return it->second;
    std::size_t r = (c.rank(n) == 0 || c.rank(n + 1) == 0) ? 0 : mfc::rank(c.differential(n).to_scalars());
    ranks[n] = r;
    return r;
  };
  for (int n : c.degrees()) out[n] = c.rank(n) - rank_of(n) - rank_of(n - 1);
  return out;
}

int wedge_insert(std::size_t i, const std::vector<std::size_t>& s, std::vector<std::size_t>& out) {
  out.clear();
  int below = 0;
  bool placed = false;
  for (std::size_t x : s) {
    if (x == i) return 0;
    if (x < i) {
      ++below;
      out.push_back(x);
    } else {
      if (!placed) {
        out.push_back(i);
        placed = true;
      }
      out.push_back(x);
    }
  }
  if (!placed) out.push_back(i);
  return below % 2 == 0 ? 1 : -1;
}

namespace {

void subsets_rec(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                 std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets_rec(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

SymPowerComplex sym_power_two_term(const std::vector<Generator>& a, const std::vector<Generator>& b,
                                   const PolyMatrix& f, int weight) {
  if (f.rows() != b.size() || f.cols() != a.size())
    throw PreconditionError("sym_power_two_term: map shape does not match the modules");
  std::vector<int> aw;
  for (const auto& g : a) aw.push_back(g.weight);
  for (const auto& g : b)
    if (g.weight <= 0) throw PreconditionError("sym_power_two_term: generator of weight <= 0 gives an infinite-dimensional graded piece");
  const RingPtr& ring = f.ring();
  SymPowerComplex out{FreeComplex(ring), {}};

  for (std::size_t k = 0; k <= b.size(); ++k) {
    std::vector<std::vector<std::size_t>> subsets;
    std::vector<std::size_t> cur;
    subsets_rec(b.size(), k, 0, cur, subsets);
    std::vector<SymBasisElement> basis;
    std::vector<Generator> gens;
    for (const auto& s : subsets) {
      int wb = 0;
      for (auto i : s) wb += b[i].weight;
      for (const auto& mono : monomials_of_weight(aw, weight - wb)) {
        basis.push_back({mono, s});
        std::string name;
        for (std::size_t j = 0; j < mono.size(); ++j) {
          if (mono[j] == 0) continue;
          if (!name.empty()) name += "*";
          name += a[j].name;
          if (mono[j] > 1) name += "^" + std::to_string(mono[j]);
        }
        if (name.empty()) name = "1";
        for (auto i : s) name += "^" + b[i].name;
        gens.push_back({name, weight});
      }
    }
    if (!gens.empty()) {
      out.complex.set_term(static_cast<int>(k), std::move(gens));
      out.basis[static_cast<int>(k)] = std::move(basis);
    }
  }

  for (auto& [k, basis] : out.basis) {
    auto next = out.basis.find(k + 1);
    if (next == out.basis.end()) continue;
    std::map<std::pair<Exponents, std::vector<std::size_t>>, std::size_t> pos;
    for (std::size_t r = 0; r < next->second.size(); ++r)
      pos[{next->second[r].monomial, next->second[r].wedge}] = r;
    PolyMatrix m(ring, next->second.size(), basis.size());
    std::vector<std::size_t> merged;
    for (std::size_t col = 0; col < basis.size(); ++col) {
      const auto& el = basis[col];
      for (std::size_t j = 0; j < a.size(); ++j) {
        if (el.monomial[j] == 0) continue;
        Exponents lower = el.monomial;
        lower[j] -= 1;
        const Scalar mult(static_cast<long>(el.monomial[j]));
        for (std::size_t i = 0; i < b.size(); ++i) {
          if (f(i, j).is_zero()) continue;
          int sign = wedge_insert(i, el.wedge, merged);
          if (sign == 0) continue;
          auto it = pos.find({lower, merged});
          if (it == pos.end()) continue;
          m(it->second, col) += f(i, j) * (mult * Scalar(sign));
        }
      }
    }
    out.complex.set_differential(k, std::move(m));
  }
  return out;
}

}  // namespace mfc
