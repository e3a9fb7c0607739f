#include "mfc/spin.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "mfc/error.hpp"

namespace mfc::spin {

using p1::Divisor;
using p1::Point;
using p1::RationalFunction;

namespace {

ScalarMatrix scaled(const Scalar& s, ScalarMatrix m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) *= s;
  return m;
}

ScalarMatrix stack(const ScalarMatrix& top, const ScalarMatrix& bottom) {
  const std::size_t cols = top.rows() ? top.cols() : bottom.cols();
  ScalarMatrix out(top.rows() + bottom.rows(), cols);
  for (std::size_t i = 0; i < top.rows(); ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = top(i, j);
  for (std::size_t i = 0; i < bottom.rows(); ++i)
    for (std::size_t j = 0; j < cols; ++j) out(top.rows() + i, j) = bottom(i, j);
  return out;
}

ScalarMatrix row_block(const ScalarMatrix& m, std::size_t first, std::size_t count) {
  ScalarMatrix out(count, m.cols());
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(first + i, j);
  return out;
}

ScalarMatrix columns_to_matrix(std::size_t rows, const std::vector<std::vector<Scalar>>& cols) {
  ScalarMatrix out(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) out(i, j) = cols[j][i];
  return out;
}

ScalarMatrix matrix_power(const ScalarMatrix& m, unsigned k) {
  ScalarMatrix out = ScalarMatrix::identity(m.rows());
  for (unsigned i = 0; i < k; ++i) out = out * m;
  return out;
}

// W(g v) as a polynomial in v: x_i -> sum_j g(i, j) x_j.
Poly pull(const Poly& w, const ScalarMatrix& g) {
  const RingPtr& r = w.ring();
  std::vector<Poly> images;
  for (std::size_t i = 0; i < r->size(); ++i) {
    Poly p(r);
    for (std::size_t j = 0; j < r->size(); ++j)
      if (!g(i, j).is_zero()) p += Poly::variable(r, j) * g(i, j);
    images.push_back(p);
  }
  return w.substitute(images, r);
}

// Linear images y_k -> sum_l m(k, l) target_l.
std::vector<Poly> linear_images(const ScalarMatrix& m, const RingPtr& target, std::size_t offset = 0) {
  std::vector<Poly> out;
  for (std::size_t k = 0; k < m.rows(); ++k) {
    Poly p(target);
    for (std::size_t l = 0; l < m.cols(); ++l)
      if (!m(k, l).is_zero()) p += Poly::variable(target, offset + l) * m(k, l);
    out.push_back(p);
  }
  return out;
}

// Rows of b spanning its row space give a left inverse on the column span.
ScalarMatrix left_inverse(const ScalarMatrix& b) {
  const std::size_t m = b.cols();
  ScalarMatrix out(m, b.rows());
  if (m == 0) return out;
  auto ech = row_reduce(b.transpose());
  if (ech.pivot_columns.size() != m) throw PreconditionError("basis of a fixed space is not independent");
  ScalarMatrix square(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) square(i, j) = b(ech.pivot_columns[i], j);
  auto inv = inverse(square);
  if (!inv) throw PreconditionError("basis of a fixed space is not independent");
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) out(i, ech.pivot_columns[k]) = (*inv)(i, k);
  return out;
}

bool mixes_weights(const ScalarMatrix& g, const std::vector<int>& weights) {
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      if (!g(i, j).is_zero() && weights[i] != weights[j]) return true;
  return false;
}

bool commute(const ScalarMatrix& a, const ScalarMatrix& b) { return a * b == b * a; }

int eta_order(const RationalFunction& eta, const Point& p) {
  return p.at_infinity ? eta.order_at(p) - 2 : eta.order_at(p);
}

std::vector<Point> component_points(const SpinCurveSpec& spec, std::size_t c) {
  std::vector<Point> out;
  for (const auto& m : spec.markings)
    if (m.component == c) out.push_back(m.point);
  return out;
}

bool contains(const std::vector<Point>& pts, const Point& p) { return std::find(pts.begin(), pts.end(), p) != pts.end(); }

}  // namespace

std::vector<std::size_t> SpinCurveSpec::open_markings() const {
  std::set<std::size_t> glued;
  for (const auto& n : nodes) {
    glued.insert(n.first);
    glued.insert(n.second);
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < markings.size(); ++i)
    if (!glued.count(i)) out.push_back(i);
  return out;
}

void SpinCurveSpec::validate(bool spin_conditions) const {
  if (!ring) throw PreconditionError("spec has no coordinate ring");
  const std::size_t n = ring->size();
  auto wd = w.homogeneous_weight();
  if (w.is_zero() || !wd || *wd != d)
    throw PreconditionError("W must be nonzero and quasihomogeneous of weight d = " + std::to_string(d));
  for (std::size_t k = 0; k < group.size(); ++k) {
    if (group[k].dimension() != n) throw PreconditionError("group generator " + std::to_string(k + 1) + " has the wrong size");
    if (pull(w, group[k].matrix()) != w)
      throw PreconditionError("W is not invariant under group generator " + std::to_string(k + 1));
  }
  if (j && pull(w, j->matrix()) != w) throw PreconditionError("W is not invariant under J");
  if (!nodes.empty()) {
    if (!j_sqrt) throw PreconditionError("nodes require J_sqrt");
    if (j_sqrt->dimension() != n) throw PreconditionError("J_sqrt has the wrong size");
    if (pull(w, j_sqrt->matrix()) != -w) throw PreconditionError("J_sqrt must satisfy chi(J_sqrt) = -1, i.e. W(J_sqrt x) = -W(x)");
  }
  for (const auto& c : components) {
    if (c.bundle.size() != n)
      throw PreconditionError("component " + c.name + ": one line bundle per coordinate is required");
    if (c.eta.is_zero()) throw PreconditionError("component " + c.name + ": eta is zero");
    for (const auto& [p, m] : c.d.terms)
      if (m < 0) throw PreconditionError("component " + c.name + ": D must be effective");
  }
  for (std::size_t i = 0; i < markings.size(); ++i) {
    const auto& m = markings[i];
    if (m.component >= components.size()) throw PreconditionError("marking " + m.name + " on an unknown component");
    if (m.gamma.dimension() != n) throw PreconditionError("marking " + m.name + ": gamma has the wrong size");
    if (mixes_weights(m.gamma.matrix(), ring->weights))
      throw PreconditionError("marking " + m.name + ": gamma must commute with the R-charge");
    if (m.rigidification.rows() != n || m.rigidification.cols() != n || !inverse(m.rigidification))
      throw PreconditionError("marking " + m.name + ": rigidification must be an invertible " + std::to_string(n) + "x" +
                              std::to_string(n) + " matrix");
    if (!commute(m.rigidification, m.gamma.matrix()) || mixes_weights(m.rigidification, ring->weights))
      throw PreconditionError("marking " + m.name + ": rigidification must commute with gamma and the R-charge");
    if (components[m.component].d.at(m.point) != 0)
      throw PreconditionError("marking " + m.name + " lies on D");
    for (std::size_t k = 0; k < i; ++k)
      if (markings[k].component == m.component && markings[k].point == m.point)
        throw PreconditionError("markings " + markings[k].name + " and " + m.name + " coincide");
  }
  std::set<std::size_t> used;
  for (const auto& nd : nodes) {
    if (nd.first >= markings.size() || nd.second >= markings.size() || nd.first == nd.second)
      throw PreconditionError("node refers to invalid markings");
    if (!used.insert(nd.first).second || !used.insert(nd.second).second)
      throw PreconditionError("a marking is used by two nodes");
    const auto& g1 = markings[nd.first].gamma;
    const auto& g2 = markings[nd.second].gamma;
    if (!(g1.matrix() * g2.matrix() == ScalarMatrix::identity(n)))
      throw PreconditionError("node " + markings[nd.first].name + "-" + markings[nd.second].name +
                              ": the two gammas must be mutually inverse");
    if (!commute(j_sqrt->matrix(), g1.matrix())) throw PreconditionError("J_sqrt must commute with the gamma of every node");
  }

  if (!spin_conditions) return;
  // eta: simple poles exactly at the special points of each component.
  for (std::size_t c = 0; c < components.size(); ++c) {
    const auto& comp = components[c];
    auto pts = component_points(*this, c);
    p1::UPoly expected(Scalar(1));
    for (const auto& p : pts) {
      if (eta_order(comp.eta, p) != -1)
        throw PreconditionError("component " + comp.name + ": eta must have a simple pole at " + p.to_string());
      if (!p.at_infinity) expected = expected * p1::UPoly::linear(p.value);
    }
    if (!(comp.eta.denominator() == expected))
      throw PreconditionError("component " + comp.name + ": eta has poles away from the markings");
    if (!contains(pts, Point::infinity()) && eta_order(comp.eta, Point::infinity()) < 0)
      throw PreconditionError("component " + comp.name + ": eta has a pole at infinity, which is not a marking");

    // W(s) eta must be a log form for every section s of V.
    std::vector<Point> check = pts;
    check.push_back(Point::infinity());
    for (const auto& e : comp.bundle)
      for (const auto& p : e.support())
        if (!contains(check, p)) check.push_back(p);
    for (const auto& [ex, coeff] : w.terms())
      for (const auto& p : check) {
        int pole = 0;
        for (std::size_t k = 0; k < n; ++k) pole += static_cast<int>(ex[k]) * comp.bundle[k].at(p);
        const int bound = contains(pts, p) ? -1 : 0;
        if (eta_order(comp.eta, p) - pole < bound)
          throw PreconditionError("component " + comp.name + ": bundle degrees are incompatible with W and eta at " +
                                  p.to_string());
      }
  }
}

FixedSpace fixed_space(const GroupElement& gamma, const std::vector<int>& weights) {
  const ScalarMatrix& g = gamma.matrix();
  const std::size_t n = g.rows();
  if (mixes_weights(g, weights)) throw PreconditionError("gamma must commute with the R-charge");
  FixedSpace out;
  std::set<int> distinct(weights.begin(), weights.end());
  std::vector<std::vector<Scalar>> cols;
  for (int w : distinct) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (weights[i] == w) idx.push_back(i);
    ScalarMatrix sub(idx.size(), idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = 0; b < idx.size(); ++b) sub(a, b) = g(idx[a], idx[b]) - (a == b ? Scalar(1) : Scalar());
    for (const auto& v : kernel_basis(sub)) {
      std::vector<Scalar> full(n);
      for (std::size_t a = 0; a < idx.size(); ++a) full[idx[a]] = v[a];
      cols.push_back(full);
      out.weights.push_back(w);
    }
  }
  out.basis = columns_to_matrix(n, cols);
  out.coordinates = left_inverse(out.basis);
  ScalarMatrix sum(n, n);
  for (unsigned k = 0; k < gamma.order(); ++k) sum = sum + matrix_power(g, k);
  out.projector = scaled(Scalar::rational(1, gamma.order()), sum);
  return out;
}

std::vector<std::string> marking_coordinates(std::size_t marking, std::size_t dim) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < dim; ++k)
    out.push_back(dim == 1 ? "x" + std::to_string(marking + 1)
                           : "x" + std::to_string(marking + 1) + "_" + std::to_string(k + 1));
  return out;
}

namespace {

// Fiber of a raw section at marking i as a coordinate vector of V.
std::vector<Scalar> fiber(const SpinCurveSpec& spec, const SectionRef& s, std::size_t marking) {
  const auto& m = spec.markings[marking];
  std::vector<Scalar> v(spec.ring->size());
  if (s.component != m.component) return v;
  v[s.coordinate] = p1::fiber_value(s.f, spec.components[s.component].bundle[s.coordinate], m.point);
  return v;
}

// proj(R fib(s)) for each raw section, as an n x raw matrix.
ScalarMatrix rigidified_fibers(const SpinCurveSpec& spec, const std::vector<SectionRef>& raw, std::size_t marking,
                               const FixedSpace& fs) {
  std::vector<std::vector<Scalar>> cols;
  const ScalarMatrix pr = fs.projector * spec.markings[marking].rigidification;
  for (const auto& s : raw) cols.push_back(pr.apply(fiber(spec, s, marking)));
  return columns_to_matrix(spec.ring->size(), cols);
}

std::map<int, std::size_t> with_both_degrees(std::map<int, std::size_t> m) {
  m.try_emplace(0, 0);
  m.try_emplace(1, 0);
  return m;
}

}  // namespace

TwoTermModel two_term_realization(const SpinCurveSpec& spec) {
  spec.validate(false);
  const std::size_t n = spec.ring->size();
  const auto& weights = spec.ring->weights;
  TwoTermModel model;

  // Raw sections and jets, block by block.
  std::vector<std::size_t> jet_start;
  std::size_t jets_total = 0;
  for (std::size_t c = 0; c < spec.components.size(); ++c) {
    const auto& comp = spec.components[c];
    for (std::size_t j = 0; j < n; ++j) {
      const Divisor twisted = comp.bundle[j] + comp.d;
      if (p1::h1(twisted) != 0)
        throw PreconditionError("divisor not ample enough: H^1(V(D)) != 0 on component " + comp.name);
      for (auto& f : p1::section_basis(twisted)) model.raw.push_back({c, j, std::move(f)});
      jet_start.push_back(jets_total);
      for (int k = 0; k < p1::jet_count(comp.d); ++k)
        model.b.push_back({"b" + std::to_string(jets_total + k + 1), weights[j]});
      jets_total += static_cast<std::size_t>(p1::jet_count(comp.d));
    }
  }
  const std::size_t raw_n = model.raw.size();
  model.f_raw = ScalarMatrix(jets_total, raw_n);
  for (std::size_t m = 0; m < raw_n; ++m) {
    const auto& s = model.raw[m];
    const auto& comp = spec.components[s.component];
    auto jv = p1::jets(s.f, comp.bundle[s.coordinate], comp.d);
    const std::size_t start = jet_start[s.component * n + s.coordinate];
    for (std::size_t k = 0; k < jv.size(); ++k) model.f_raw(start + k, m) = jv[k];
  }

  std::map<std::size_t, FixedSpace> fixed_all;
  for (std::size_t i = 0; i < spec.markings.size(); ++i) fixed_all.emplace(i, fixed_space(spec.markings[i].gamma, weights));

  // Node constraints in V coordinates: proj R fib at the second point equals
  // J_sqrt times the same at the first.
  ScalarMatrix constraint(0, raw_n);
  for (const auto& nd : spec.nodes) {
    ScalarMatrix a = rigidified_fibers(spec, model.raw, nd.first, fixed_all.at(nd.first));
    ScalarMatrix b = rigidified_fibers(spec, model.raw, nd.second, fixed_all.at(nd.second));
    constraint = stack(constraint, b - spec.j_sqrt->matrix() * a);
  }
  // Kernel weight by weight so that every basis vector of A is homogeneous.
  std::vector<std::vector<Scalar>> incl_cols;
  std::set<int> distinct(weights.begin(), weights.end());
  for (int w : distinct) {
    std::vector<std::size_t> idx;
    for (std::size_t m = 0; m < raw_n; ++m)
      if (weights[model.raw[m].coordinate] == w) idx.push_back(m);
    if (idx.empty()) continue;
    ScalarMatrix sub(constraint.rows(), idx.size());
    for (std::size_t r = 0; r < constraint.rows(); ++r)
      for (std::size_t k = 0; k < idx.size(); ++k) sub(r, k) = constraint(r, idx[k]);
    std::vector<std::vector<Scalar>> kernel;
    if (constraint.rows() == 0) {
      for (std::size_t k = 0; k < idx.size(); ++k) {
        std::vector<Scalar> e(idx.size());
        e[k] = Scalar(1);
        kernel.push_back(e);
      }
    } else {
      kernel = kernel_basis(sub);
    }
    for (const auto& v : kernel) {
      std::vector<Scalar> full(raw_n);
      for (std::size_t k = 0; k < idx.size(); ++k) full[idx[k]] = v[k];
      incl_cols.push_back(full);
      model.a.push_back({"u" + std::to_string(model.a.size() + 1), w});
    }
  }
  model.inclusion = columns_to_matrix(raw_n, incl_cols);
  model.f = model.f_raw * model.inclusion;

  // Evaluation-then-projection onto the fixed spaces of the open markings.
  model.open = spec.open_markings();
  std::vector<std::string> y_names;
  std::vector<int> y_weights;
  model.z_raw = ScalarMatrix(0, raw_n);
  for (auto i : model.open) {
    const FixedSpace& fs = fixed_all.at(i);
    model.fixed.push_back(fs);
    model.y_offset.push_back(y_names.size());
    auto names = marking_coordinates(i, fs.basis.cols());
    y_names.insert(y_names.end(), names.begin(), names.end());
    y_weights.insert(y_weights.end(), fs.weights.begin(), fs.weights.end());
    model.z_raw = stack(model.z_raw, fs.coordinates * rigidified_fibers(spec, model.raw, i, fs));
  }
  model.z = model.z_raw * model.inclusion;

  std::vector<std::string> a_names;
  std::vector<int> a_weights;
  for (const auto& g : model.a) {
    a_names.push_back(g.name);
    a_weights.push_back(g.weight);
  }
  model.a_ring = make_ring(spec.field, a_names, a_weights);
  model.y_ring = make_ring(spec.field, y_names, y_weights);

  auto point = point_ring(spec.field);
  model.complex = FreeComplex(point);
  model.complex.set_term(0, model.a);
  model.complex.set_term(1, model.b);
  model.complex.set_differential(0, PolyMatrix::from_scalars(point, model.f));
  model.homology = with_both_degrees(homology_ranks(model.complex));

  // Oracle: Cech cohomology on each component, corrected by the node
  // conditions on global sections of V itself.
  std::size_t h0 = 0, h1 = 0;
  std::vector<SectionRef> global;
  for (std::size_t c = 0; c < spec.components.size(); ++c)
    for (std::size_t j = 0; j < n; ++j) {
      const Divisor& e = spec.components[c].bundle[j];
      auto ranks = with_both_degrees(homology_ranks(p1::cech_complex(e.degree(), spec.field)));
      h0 += ranks[0];
      h1 += ranks[1];
      for (auto& f : p1::section_basis(e)) global.push_back({c, j, std::move(f)});
    }
  if (!spec.nodes.empty()) {
    ScalarMatrix gc(0, global.size());
    std::size_t node_dims = 0;
    for (const auto& nd : spec.nodes) {
      ScalarMatrix a = rigidified_fibers(spec, global, nd.first, fixed_all.at(nd.first));
      ScalarMatrix b = rigidified_fibers(spec, global, nd.second, fixed_all.at(nd.second));
      gc = stack(gc, b - spec.j_sqrt->matrix() * a);
      node_dims += fixed_all.at(nd.first).basis.cols();
    }
    const std::size_t r = global.empty() ? 0 : rank(gc);
    h0 -= r;
    h1 += node_dims - r;
  }
  model.oracle = {{0, h0}, {1, h1}};
  if (model.homology != model.oracle)
    throw CertificateError("two-term model homology differs from the Cech oracle");

  if (model.z.rows() > 0 && (model.z.cols() == 0 || rank(model.z) != model.z.rows()))
    throw PreconditionError("divisor misses markings: increase D (Z is not surjective)");
  return model;
}

Poly restricted_potential(const SpinCurveSpec& spec, const TwoTermModel& model) {
  Poly total(model.y_ring);
  for (std::size_t k = 0; k < model.open.size(); ++k)
    total += spec.w.substitute(linear_images(model.fixed[k].basis, model.y_ring, model.y_offset[k]), model.y_ring);
  return total;
}

namespace {

// Polynomials in the raw section coordinates with rational-function coefficients.
using RFPoly = std::map<Exponents, RationalFunction>;

RFPoly rf_multiply(const RFPoly& a, const RFPoly& b) {
  RFPoly out;
  for (const auto& [ea, fa] : a)
    for (const auto& [eb, fb] : b) {
      Exponents e = ea;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      auto it = out.find(e);
      if (it == out.end()) out.emplace(e, fa * fb);
      else it->second = it->second + fa * fb;
    }
  return out;
}

// Res_p(W(s(u)) eta) as a polynomial over `ring` whose variables are the raw sections.
Poly residue_of_potential(const SpinCurveSpec& spec, const std::vector<SectionRef>& raw, std::size_t marking,
                          const RingPtr& ring) {
  const auto& m = spec.markings[marking];
  const std::size_t n = spec.ring->size();
  std::vector<RFPoly> linear(n);
  for (std::size_t k = 0; k < raw.size(); ++k) {
    if (raw[k].component != m.component) continue;
    Exponents e(raw.size(), 0);
    e[k] = 1;
    linear[raw[k].coordinate].emplace(e, raw[k].f);
  }
  Poly out(ring);
  for (const auto& [ex, coeff] : spec.w.terms()) {
    RFPoly term{{Exponents(raw.size(), 0), RationalFunction(coeff)}};
    for (std::size_t j = 0; j < n; ++j)
      for (unsigned p = 0; p < ex[j]; ++p) term = rf_multiply(term, linear[j]);
    for (const auto& [e, f] : term) {
      Scalar r = (f * spec.components[m.component].eta).residue(m.point);
      if (!r.is_zero()) out += Poly::monomial(ring, e, r);
    }
  }
  return out;
}

}  // namespace

ResidueReport residue_structure(const SpinCurveSpec& spec, const TwoTermModel& model, unsigned samples, unsigned seed) {
  spec.validate();
  ResidueReport report;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coeff(-5, 5);
  bool theorem = true, triangle = true;
  for (std::size_t c = 0; c < spec.components.size(); ++c) {
    auto pts = component_points(spec, c);
    LineBundlePair pair = omega_log_pair(pts, spec.field);
    report.kernel.push_back(check_commutation(PairMorphism::p1_projection(), pair));
    auto pushed = pair_pushforward(PairMorphism::p1_projection(), pair);
    report.rj_ranks.push_back(with_both_degrees(homology_ranks(rj_shriek(pushed.object))));

    Divisor kernel = pair.e;
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (!pair.scale[i].is_zero()) kernel.add(pts[i], -1);
    const Divisor d = default_divisor(kernel, pts);
    const auto log_sections = p1::section_basis(pair.e + d);
    std::vector<Point> poles = pts;
    for (const auto& q : d.support()) poles.push_back(q);
    if (!contains(poles, Point::infinity())) poles.push_back(Point::infinity());

    // Residue theorem on random sections of omega^log(D).
    for (unsigned s = 0; s < samples; ++s) {
      RationalFunction f;
      for (const auto& b : log_sections) f = f + RationalFunction(Scalar(coeff(rng))) * b;
      Scalar total;
      for (const auto& p : poles) total += f.residue(p);
      if (!total.is_zero()) {
        theorem = false;
        report.detail += "nonzero total residue on component " + spec.components[c].name + "; ";
      }
    }

    // Connecting map: lift a in k^Sigma through the comparison map, then
    // take the trace of its principal parts along D.
    auto trace = [&](const RationalFunction& f) {
      Scalar t;
      for (const auto& q : d.support()) t -= f.residue(q);
      return t;
    };
    ScalarMatrix res(pts.size(), log_sections.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t k = 0; k < log_sections.size(); ++k)
        res(i, k) = pair.scale[i] * p1::fiber_value(log_sections[k], pair.e, pts[i]);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      std::vector<Scalar> a(pts.size());
      a[i] = Scalar(1);
      auto lift = solve(res, a);
      if (!lift) {
        triangle = false;
        report.detail += "comparison map is not surjective; ";
        continue;
      }
      RationalFunction f;
      for (std::size_t k = 0; k < log_sections.size(); ++k) f = f + RationalFunction((*lift)[k]) * log_sections[k];
      if (trace(f) != Scalar(1)) {
        triangle = false;
        report.detail += "tr o connecting map differs from the summation; ";
      }
    }
    for (const auto& s : p1::section_basis(kernel + d))
      if (!trace(s).is_zero()) {
        triangle = false;
        report.detail += "trace does not vanish on global sections of omega(D); ";
      }
  }

  // Residues of W(s) eta at the open markings against W_i(Z_i s).
  std::vector<std::string> names;
  std::vector<int> weights;
  for (const auto& s : model.raw) {
    names.push_back("r" + std::to_string(names.size() + 1));
    weights.push_back(spec.ring->weights[s.coordinate]);
  }
  auto raw_ring = make_ring(spec.field, names, weights);
  bool compatible = true;
  for (std::size_t k = 0; k < model.open.size(); ++k) {
    const std::size_t i = model.open[k];
    Poly wi = spec.w.substitute(linear_images(model.fixed[k].basis, model.y_ring, model.y_offset[k]), model.y_ring);
    Poly lhs = wi.substitute(linear_images(model.z_raw, raw_ring), raw_ring);
    if (lhs != residue_of_potential(spec, model.raw, i, raw_ring)) {
      compatible = false;
      report.detail += "Res(W(s) eta) differs from W_i(Z_i s) at " + spec.markings[i].name + "; ";
    }
  }
  report.residue_theorem = theorem;
  report.triangle = triangle;
  report.compatibility = compatible;
  return report;
}

Obstruction build_obstruction(const SpinCurveSpec& spec, const TwoTermModel& model) {
  Obstruction ob;
  const RingPtr& ar = model.a_ring;
  ob.scheme.even = ar;
  ob.scheme.odd = model.b;
  for (std::size_t k = 0; k < model.b.size(); ++k) {
    Poly l(ar);
    for (std::size_t m = 0; m < model.a.size(); ++m)
      if (!model.f(k, m).is_zero()) l += Poly::variable(ar, m) * model.f(k, m);
    ob.scheme.differential.push_back(l);
  }
  if (auto e = ob.scheme.weight_defect()) throw CertificateError(*e);
  Poly c = restricted_potential(spec, model).substitute(linear_images(model.z, ar), ar);
  ob.c = DgFunction::even(c, model.b.size());

  auto point = point_ring(spec.field);
  ob.sym = sym_power_two_term(model.a, model.b, PolyMatrix::from_scalars(point, model.f), spec.d);

  // Target: the weight-d monomials of each V^{gamma_i}.
  std::vector<Generator> tgens;
  std::vector<std::pair<std::size_t, Exponents>> tkeys;
  for (std::size_t k = 0; k < model.open.size(); ++k) {
    const auto& fs = model.fixed[k];
    for (auto& e : monomials_of_weight(fs.weights, spec.d)) {
      std::string name;
      auto coords = marking_coordinates(model.open[k], fs.weights.size());
      for (std::size_t v = 0; v < e.size(); ++v)
        if (e[v]) name += (name.empty() ? "" : "*") + coords[v] + (e[v] > 1 ? "^" + std::to_string(e[v]) : "");
      tgens.push_back({name, spec.d});
      tkeys.emplace_back(k, std::move(e));
    }
  }
  ob.target = FreeComplex(point);
  ob.target.set_term(0, tgens);

  const auto& src = ob.sym.basis.count(0) ? ob.sym.basis.at(0) : std::vector<SymBasisElement>{};
  ScalarMatrix map(tgens.size(), src.size());
  for (std::size_t col = 0; col < src.size(); ++col) {
    Poly image(model.y_ring, Scalar(1));
    for (std::size_t m = 0; m < src[col].monomial.size(); ++m) {
      Poly lin(model.y_ring);
      for (std::size_t r = 0; r < model.z.rows(); ++r)
        if (!model.z(r, m).is_zero()) lin += Poly::variable(model.y_ring, r) * model.z(r, m);
      image *= lin.pow(src[col].monomial[m]);
    }
    for (std::size_t row = 0; row < tkeys.size(); ++row) {
      const auto& [k, e] = tkeys[row];
      Exponents full(model.y_ring->size(), 0);
      for (std::size_t v = 0; v < e.size(); ++v) full[model.y_offset[k] + v] = e[v];
      map(row, col) = image.coefficient(full);
    }
  }
  ob.restriction = {ob.sym.complex, ob.target, {{0, PolyMatrix::from_scalars(point, map)}}};
  if (auto e = ob.restriction.defect()) throw CertificateError("S(Z)_d is not a chain map: " + *e);
  ob.k = shift(cone(ob.restriction), -1);

  // E: kernel of S(Z)_d in degree 0, S(A -> B)_d above.
  ob.e = FreeComplex(point);
  std::vector<std::vector<Scalar>> ker;
  if (map.cols() > 0) {
    if (map.rows() == 0) {
      for (std::size_t j = 0; j < map.cols(); ++j) {
        std::vector<Scalar> v(map.cols());
        v[j] = Scalar(1);
        ker.push_back(v);
      }
    } else {
      ker = kernel_basis(map);
    }
  }
  std::vector<Generator> e0;
  for (std::size_t k = 0; k < ker.size(); ++k) e0.push_back({"k" + std::to_string(k + 1), spec.d});
  ob.e.set_term(0, e0);
  for (int deg : ob.sym.complex.degrees())
    if (deg > 0) ob.e.set_term(deg, ob.sym.complex.term(deg));
  if (!ob.e.term(0).empty() && ob.sym.complex.rank(1) > 0) {
    ob.e.set_term(1, ob.sym.complex.term(1));
    ScalarMatrix d0 = ob.sym.complex.differential(0).to_scalars() * columns_to_matrix(src.size(), ker);
    ob.e.set_differential(0, PolyMatrix::from_scalars(point, d0));
  }
  for (int deg : ob.sym.complex.degrees())
    if (deg > 0 && ob.sym.complex.rank(deg + 1) > 0) ob.e.set_differential(deg, ob.sym.complex.differential(deg));
  return ob;
}

DgFunction solve_f_minus_one(const DgSchemePresentation& x, const DgFunction& c, int d, PivotOrder order) {
  const RingPtr& ring = x.even;
  const std::size_t n = x.odd_count();
  for (const auto& [s, p] : c.terms())
    if (!s.empty()) throw PreconditionError("c must be a function of degree 0");
  const Poly target = -c.component({});
  struct Unknown {
    std::size_t k;
    Exponents mono;
  };
  std::vector<Unknown> unknowns;
  for (std::size_t k = 0; k < n; ++k) {
    const int w = d - x.odd[k].weight;
    if (w < 0) continue;
    for (auto& e : monomials_of_weight(ring->weights, w)) unknowns.push_back({k, std::move(e)});
  }
  std::map<Exponents, std::size_t, DegLexLess> rows;
  std::vector<Poly> images;
  for (const auto& u : unknowns) {
    images.push_back(Poly::monomial(ring, u.mono) * x.differential[u.k]);
    for (const auto& [e, coef] : images.back().terms()) rows.try_emplace(e, 0);
  }
  for (const auto& [e, coef] : target.terms()) rows.try_emplace(e, 0);
  std::size_t r = 0;
  for (auto& [e, idx] : rows) idx = r++;
  ScalarMatrix a(rows.size(), unknowns.size());
  for (std::size_t u = 0; u < unknowns.size(); ++u)
    for (const auto& [e, coef] : images[u].terms()) a(rows.at(e), u) += coef;
  std::vector<Scalar> b(rows.size());
  for (const auto& [e, coef] : target.terms()) b[rows.at(e)] = coef;

  DgFunction f(ring, n);
  if (unknowns.empty()) {
    if (!target.is_zero()) throw PreconditionError("spin-structure data violates the residue constraint");
    return f;
  }
  auto sol = solve(a, b, order);
  if (!sol) throw PreconditionError("spin-structure data violates the residue constraint");
  for (std::size_t u = 0; u < unknowns.size(); ++u)
    if (!(*sol)[u].is_zero()) f.add_term({unknowns[u].k}, Poly::monomial(ring, unknowns[u].mono, (*sol)[u]));
  if (!(apply_d(x, f) + c).is_zero()) throw CertificateError("f_{-1} failed verification: d(f) + c != 0");
  return f;
}

FundamentalResult fundamental_mf(const SpinCurveSpec& spec, PivotOrder order) {
  spec.validate();
  FundamentalResult r;
  r.model = two_term_realization(spec);
  r.obstruction = build_obstruction(spec, r.model);
  r.f_minus_one = solve_f_minus_one(r.obstruction.scheme, r.obstruction.c, spec.d, order);
  const auto& x = r.obstruction.scheme;
  auto curved = dgmf_from_homotopy(x, -r.f_minus_one);
  r.over_a = fold_to_mf(curved);
  if (r.over_a.potential != r.obstruction.c.component({}))
    throw CertificateError("folded potential differs from Z^*(sum W_i)");
  r.restricted = restricted_potential(spec, r.model);

  // Greedy slice: linear forms of B completing Z to coordinates on A.
  const std::size_t rank_a = r.model.a.size();
  ScalarMatrix rows = r.model.z;
  std::size_t current = rows.rows();
  for (std::size_t k = 0; k < r.model.b.size() && current < rank_a; ++k) {
    ScalarMatrix trial = stack(rows, row_block(r.model.f, k, 1));
    if (rank(trial) > current) {
      rows = trial;
      current = rows.rows();
      r.slice.push_back(k);
    }
  }
  if (current != rank_a) {
    r.mf = r.over_a;
    r.over_product = false;
    return r;
  }
  r.over_product = true;
  if (rank_a > 0) {
    auto inv = inverse(rows);
    if (!inv) throw CertificateError("slice coordinates are not invertible");
    r.splitting = *inv;
  }
  const RingPtr& y = r.model.y_ring;
  // u = splitting (y, v) restricted to v = 0.
  ScalarMatrix to_y(rank_a, y->size());
  for (std::size_t m = 0; m < rank_a; ++m)
    for (std::size_t l = 0; l < y->size(); ++l) to_y(m, l) = r.splitting(m, l);
  auto images = linear_images(to_y, y);

  std::vector<Poly> alpha, beta;
  std::vector<int> weights;
  for (std::size_t k = 0; k < r.model.b.size(); ++k) {
    if (std::find(r.slice.begin(), r.slice.end(), k) != r.slice.end()) continue;
    alpha.push_back((-r.f_minus_one).component({k}).substitute(images, y));
    beta.push_back(x.differential[k].substitute(images, y));
    weights.push_back(r.model.b[k].weight);
  }
  if (alpha.empty()) {
    if (!r.restricted.is_zero()) throw CertificateError("slice reduction left no odd generators but W_i does not vanish");
    r.mf = unit_mf(y);
  } else {
    r.mf = koszul_mf(alpha, beta, weights);
  }
  if (r.mf.potential != r.restricted)
    throw CertificateError("fundamental MF potential differs from the restricted potential");
  r.mf.validate();
  return r;
}

std::vector<std::vector<Scalar>> sample_points(const RingPtr& ring, std::size_t count, unsigned seed) {
  std::vector<std::vector<Scalar>> out;
  if (ring->size() == 0) return out;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coord(-3, 3);
  while (out.size() < count) {
    std::vector<Scalar> p;
    bool nonzero = false;
    for (std::size_t i = 0; i < ring->size(); ++i) {
      long v = coord(rng);
      nonzero = nonzero || v != 0;
      p.push_back(Scalar(v));
    }
    if (nonzero) out.push_back(std::move(p));
  }
  return out;
}

namespace {

bool same_configuration(const SpinCurveSpec& a, const SpinCurveSpec& b) {
  if (a.components.size() != b.components.size() || a.markings.size() != b.markings.size()) return false;
  if (!same_ring(a.ring, b.ring) || a.w != b.w) return false;
  for (std::size_t c = 0; c < a.components.size(); ++c) {
    const auto& x = a.components[c];
    const auto& y = b.components[c];
    if (x.bundle.size() != y.bundle.size() || !(x.eta == y.eta)) return false;
    for (std::size_t j = 0; j < x.bundle.size(); ++j)
      if (x.bundle[j].degree() != y.bundle[j].degree()) return false;
  }
  for (std::size_t i = 0; i < a.markings.size(); ++i) {
    const auto& m = a.markings[i];
    const auto& n = b.markings[i];
    if (m.component != n.component || !(m.point == n.point) || !(m.gamma.matrix() == n.gamma.matrix()) ||
        !(m.rigidification == n.rigidification))
      return false;
  }
  return true;
}

std::size_t index_in(const std::vector<std::size_t>& v, std::size_t x) {
  return static_cast<std::size_t>(std::find(v.begin(), v.end(), x) - v.begin());
}

bool contractible_at(const MatrixFactorization& m, const std::vector<Scalar>& p) {
  auto at = m.evaluate(p);
  return nullhomotopy_solve(at, PolyMatrix::identity(at.ring, at.p0.size() + at.p1.size()), 0).has_value();
}

}  // namespace

GlueCertificate twisted_diagonal_glue(const SpinCurveSpec& disconnected, const SpinCurveSpec& glued, unsigned points,
                                      unsigned seed) {
  if (!disconnected.nodes.empty()) throw PreconditionError("the disconnected spec must not have nodes");
  if (glued.nodes.empty()) throw PreconditionError("the glued spec has no nodes");
  if (!same_configuration(disconnected, glued))
    throw PreconditionError("the two specs do not describe the same configuration");
  GlueCertificate cert;
  FundamentalResult disc = fundamental_mf(disconnected);
  cert.glued = fundamental_mf(glued);
  const auto& dm = disc.model;
  const auto& gm = cert.glued.model;
  const ScalarMatrix& jh = glued.j_sqrt->matrix();

  // Twisted diagonal in the y coordinates of each node: y_second = T y_first.
  std::vector<ScalarMatrix> twist;
  ScalarMatrix constraint(0, dm.raw.size());
  bool cartesian = true;
  for (const auto& nd : glued.nodes) {
    const std::size_t k1 = index_in(dm.open, nd.first), k2 = index_in(dm.open, nd.second);
    const auto& f1 = dm.fixed[k1];
    const auto& f2 = dm.fixed[k2];
    ScalarMatrix moved = jh * f1.basis;
    if (!(f2.projector * moved == moved)) {
      cartesian = false;
      cert.detail += "J_sqrt does not map V^gamma into the fixed space at the other branch; ";
    }
    ScalarMatrix t = f2.coordinates * moved;
    twist.push_back(t);
    ScalarMatrix z1 = row_block(dm.z_raw, dm.y_offset[k1], f1.basis.cols());
    ScalarMatrix z2 = row_block(dm.z_raw, dm.y_offset[k2], f2.basis.cols());
    constraint = stack(constraint, z2 - t * z1);
  }
  // A level: the glued A is exactly the fiber product A x_{V x V} V.
  if (!(gm.f_raw == dm.f_raw) || !(gm.f == dm.f_raw * gm.inclusion)) {
    cartesian = false;
    cert.detail += "B level differs; ";
  }
  for (std::size_t col = 0; col < gm.inclusion.cols() && cartesian; ++col) {
    auto v = gm.inclusion.column(col);
    auto img = constraint.apply(v);
    if (std::any_of(img.begin(), img.end(), [](const Scalar& s) { return !s.is_zero(); })) {
      cartesian = false;
      cert.counterexample = v;
      cert.detail += "a glued section leaves the twisted diagonal; ";
    }
  }
  if (cartesian) {
    auto ker = constraint.rows() ? kernel_basis(constraint) : std::vector<std::vector<Scalar>>{};
    const std::size_t expected = constraint.rows() ? ker.size() : dm.raw.size();
    const std::size_t have = gm.inclusion.cols() ? rank(gm.inclusion) : 0;
    if (have != expected) {
      cartesian = false;
      cert.detail += "glued A is not the fiber product; ";
      for (const auto& v : ker) {
        ScalarMatrix with = gm.inclusion;
        std::vector<std::vector<Scalar>> cols;
        for (std::size_t c = 0; c < with.cols(); ++c) cols.push_back(with.column(c));
        cols.push_back(v);
        if (rank(columns_to_matrix(v.size(), cols)) > have) {
          cert.counterexample = v;
          break;
        }
      }
    }
  }
  cert.cartesian = cartesian;

  // Dg level: pull f_{-1} back along tot(A_glued) -> tot(A_disc) and compare
  // with the glued solution, bit-exactly or through a gauge exp(-h).
  if (cartesian && gm.b.size() == dm.b.size()) {
    const ScalarMatrix m = left_inverse(dm.inclusion) * gm.inclusion;
    std::vector<Poly> u;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      Poly p(gm.a_ring);
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (!m(i, j).is_zero()) p += Poly::variable(gm.a_ring, j) * m(i, j);
      u.push_back(std::move(p));
    }
    DgFunction pulled(gm.a_ring, gm.b.size());
    for (const auto& [sub, poly] : disc.f_minus_one.terms()) pulled.add_term(sub, poly.substitute(u, gm.a_ring));
    const auto& gs = cert.glued.obstruction.scheme;
    if (!(apply_d(gs, pulled) + cert.glued.obstruction.c).is_zero()) {
      cert.detail += "pulled-back f_{-1} does not solve the glued equation; ";
    } else if (pulled == cert.glued.f_minus_one) {
      cert.identification = "identified";
    } else if (auto h = find_primitive(gs, cert.glued.f_minus_one - pulled, glued.d)) {
      cert.gauge = gauge_intertwiner(dgmf_from_homotopy(gs, -pulled), dgmf_from_homotopy(gs, -cert.glued.f_minus_one), -*h);
      cert.identification = "gauge-identified";
    }
  }

  // Pull back along id x Delta^{J^{1/2}}: drop the coordinates of each second branch.
  const RingPtr& yd = dm.y_ring;
  std::vector<bool> dropped(yd->size(), false);
  for (const auto& nd : glued.nodes) {
    const std::size_t k2 = index_in(dm.open, nd.second);
    for (std::size_t v = 0; v < dm.fixed[k2].basis.cols(); ++v) dropped[dm.y_offset[k2] + v] = true;
  }
  std::vector<std::string> names;
  std::vector<int> weights;
  std::vector<std::size_t> position(yd->size(), 0);
  for (std::size_t v = 0; v < yd->size(); ++v)
    if (!dropped[v]) {
      position[v] = names.size();
      names.push_back(yd->names[v]);
      weights.push_back(yd->weights[v]);
    }
  auto pull_ring = make_ring(disconnected.field, names, weights);
  std::vector<Poly> images(yd->size(), Poly(pull_ring));
  for (std::size_t v = 0; v < yd->size(); ++v)
    if (!dropped[v]) images[v] = Poly::variable(pull_ring, position[v]);
  for (std::size_t n = 0; n < glued.nodes.size(); ++n) {
    const auto& nd = glued.nodes[n];
    const std::size_t k1 = index_in(dm.open, nd.first), k2 = index_in(dm.open, nd.second);
    for (std::size_t a = 0; a < twist[n].rows(); ++a) {
      Poly p(pull_ring);
      for (std::size_t b = 0; b < twist[n].cols(); ++b)
        if (!twist[n](a, b).is_zero()) p += Poly::variable(pull_ring, position[dm.y_offset[k1] + b]) * twist[n](a, b);
      images[dm.y_offset[k2] + a] = p;
    }
  }
  if (!disc.over_product) {
    cert.detail += "disconnected fundamental MF is not over the product of fixed spaces; ";
    cert.identification = "unresolved";
    return cert;
  }
  cert.pulled_back = disc.mf.substitute(images, pull_ring);
  if (auto e = cert.pulled_back.defect()) throw CertificateError("pulled-back MF: " + *e);

  // The glued potential lives on the open markings, a subset of the pullback coordinates.
  const RingPtr& yg = gm.y_ring;
  std::vector<Poly> embed;
  for (std::size_t v = 0; v < yg->size(); ++v) {
    auto idx = pull_ring->index_of(yg->names[v]);
    if (!idx) throw CertificateError("glued coordinate " + yg->names[v] + " missing from the pullback");
    embed.push_back(Poly::variable(pull_ring, *idx));
  }
  const Poly glued_potential = cert.glued.restricted.substitute(embed, pull_ring);
  cert.potential_match = cert.pulled_back.potential == glued_potential;
  if (!cert.potential_match) cert.detail += "pulled-back potential differs from the glued potential; ";

  if (!cert.identification.empty()) return cert;
  if (cert.glued.over_product) {
    MatrixFactorization g = cert.glued.mf.substitute(embed, pull_ring);
    if (g == cert.pulled_back) {
      cert.identification = "identified";
    } else {
      bool agree = true;
      for (const auto& p : sample_points(pull_ring, points, seed))
        agree = agree && contractible_at(g, p) == contractible_at(cert.pulled_back, p);
      cert.identification = agree ? "consistent" : "unresolved";
    }
  } else {
    cert.identification = "unresolved";
  }
  return cert;
}

bool EquivarianceReport::passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const EquivarianceEntry& e) { return e.passed; });
}

ScalarMatrix action_on_markings(const FundamentalResult& r, const SpinCurveSpec& spec, const GroupElement& g) {
  const auto& m = r.model;
  ScalarMatrix t(m.y_ring->size(), m.y_ring->size());
  for (std::size_t k = 0; k < m.open.size(); ++k) {
    if (!commute(g.matrix(), spec.markings[m.open[k]].gamma.matrix()))
      throw PreconditionError("element does not centralize gamma at " + spec.markings[m.open[k]].name);
    ScalarMatrix block = m.fixed[k].coordinates * g.matrix() * m.fixed[k].basis;
    for (std::size_t a = 0; a < block.rows(); ++a)
      for (std::size_t b = 0; b < block.cols(); ++b) t(m.y_offset[k] + a, m.y_offset[k] + b) = block(a, b);
  }
  return t;
}

std::optional<std::pair<ScalarMatrix, ScalarMatrix>> intertwiner(const MatrixFactorization& m,
                                                                  const ScalarMatrix& action) {
  const RingPtr& ring = m.ring;
  auto moved = m.substitute(linear_images(action, ring), ring);
  if (moved.potential != m.potential) return std::nullopt;
  const std::size_t n0 = m.p0.size(), n1 = m.p1.size();
  const std::size_t unknowns = n0 * n0 + n1 * n1;
  auto e0_index = [&](std::size_t i, std::size_t j) { return i * n0 + j; };
  auto e1_index = [&](std::size_t i, std::size_t j) { return n0 * n0 + i * n1 + j; };

  // moved.delta0 E0 - E1 delta0 = 0 and moved.delta1 E1 - E0 delta1 = 0.
  using Key = std::tuple<int, std::size_t, std::size_t, Exponents>;
  std::map<Key, std::size_t> rows;
  std::vector<std::tuple<std::size_t, std::size_t, Scalar>> entries;
  auto add = [&](const Key& key, std::size_t unknown, const Scalar& c) {
    auto [it, fresh] = rows.try_emplace(key, rows.size());
    entries.emplace_back(it->second, unknown, c);
  };
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n0; ++j) {
      for (std::size_t k = 0; k < n0; ++k)
        for (const auto& [e, c] : moved.delta0(i, k).terms()) add({0, i, j, e}, e0_index(k, j), c);
      for (std::size_t k = 0; k < n1; ++k)
        for (const auto& [e, c] : m.delta0(k, j).terms()) add({0, i, j, e}, e1_index(i, k), -c);
    }
  for (std::size_t i = 0; i < n0; ++i)
    for (std::size_t j = 0; j < n1; ++j) {
      for (std::size_t k = 0; k < n1; ++k)
        for (const auto& [e, c] : moved.delta1(i, k).terms()) add({1, i, j, e}, e1_index(k, j), c);
      for (std::size_t k = 0; k < n0; ++k)
        for (const auto& [e, c] : m.delta1(k, j).terms()) add({1, i, j, e}, e0_index(i, k), -c);
    }
  ScalarMatrix a(rows.size(), unknowns);
  for (const auto& [r, u, c] : entries) a(r, u) += c;
  std::vector<std::vector<Scalar>> ker;
  if (rows.empty()) {
    for (std::size_t u = 0; u < unknowns; ++u) {
      std::vector<Scalar> v(unknowns);
      v[u] = Scalar(1);
      ker.push_back(v);
    }
  } else {
    ker = kernel_basis(a);
  }
  if (ker.empty()) return std::nullopt;
  // A generic member of the solution space is invertible if any is.
  for (long t = 1; t <= static_cast<long>(2 * unknowns + 4); ++t) {
    std::vector<Scalar> v(unknowns);
    Scalar power(1);
    for (const auto& k : ker) {
      for (std::size_t u = 0; u < unknowns; ++u) v[u] += power * k[u];
      power *= Scalar(t);
    }
    ScalarMatrix e0(n0, n0), e1(n1, n1);
    for (std::size_t i = 0; i < n0; ++i)
      for (std::size_t j = 0; j < n0; ++j) e0(i, j) = v[e0_index(i, j)];
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n1; ++j) e1(i, j) = v[e1_index(i, j)];
    if ((n0 == 0 || inverse(e0)) && (n1 == 0 || inverse(e1))) return std::make_pair(e0, e1);
  }
  return std::nullopt;
}

EquivarianceReport check_equivariance(const SpinCurveSpec& spec, const FundamentalResult& r,
                                      const std::vector<GroupElement>& claimed_central) {
  EquivarianceReport report;
  std::vector<std::pair<std::string, GroupElement>> elements;
  if (spec.j) elements.emplace_back("J", *spec.j);
  for (std::size_t k = 0; k < spec.group.size(); ++k) elements.emplace_back("g" + std::to_string(k + 1), spec.group[k]);

  auto commutator = [&](const GroupElement& g) -> std::optional<ScalarMatrix> {
    for (const auto& h : spec.group) {
      ScalarMatrix c = g.matrix() * h.matrix() - h.matrix() * g.matrix();
      if (!c.is_zero()) return c;
    }
    return std::nullopt;
  };
  for (std::size_t k = 0; k < claimed_central.size(); ++k) {
    EquivarianceEntry e;
    e.name = "claimed central " + std::to_string(k + 1);
    e.commutator = commutator(claimed_central[k]);
    e.central = !e.commutator;
    e.passed = e.central;
    e.detail = e.central ? "central" : "not central: commutator witness attached";
    report.entries.push_back(std::move(e));
  }
  for (const auto& [name, g] : elements) {
    EquivarianceEntry e;
    e.name = name;
    e.central = !commutator(g);
    bool centralizes = true;
    for (auto i : r.model.open) centralizes = centralizes && commute(g.matrix(), spec.markings[i].gamma.matrix());
    if (!centralizes) {
      e.passed = true;
      e.detail = "not in the centralizer of every gamma_i; no action on the output";
    } else if (!r.over_product) {
      e.passed = true;
      e.detail = "output lives over tot(A); action not checked";
    } else {
      auto t = action_on_markings(r, spec, g);
      auto it = intertwiner(r.mf, t);
      e.passed = it.has_value();
      e.detail = e.passed ? "delta intertwined by a constant invertible (E0, E1)" : "no constant intertwiner";
    }
    report.entries.push_back(std::move(e));
  }
  return report;
}

SpinCurveSpec change_rigidification(const SpinCurveSpec& spec, std::size_t marking, const GroupElement& epsilon) {
  if (marking >= spec.markings.size()) throw PreconditionError("no such marking");
  const auto& m = spec.markings[marking];
  if (!commute(epsilon.matrix(), m.gamma.matrix()))
    throw PreconditionError("epsilon must centralize gamma at " + m.name);
  if (pull(spec.w, epsilon.matrix()) != spec.w) throw PreconditionError("epsilon must preserve W");
  SpinCurveSpec out = spec;
  out.markings[marking].rigidification = epsilon.matrix() * m.rigidification;
  return out;
}

bool rigidification_transport(const SpinCurveSpec& spec, std::size_t marking, const GroupElement& epsilon,
                              std::string* detail) {
  auto before = fundamental_mf(spec);
  auto after = fundamental_mf(change_rigidification(spec, marking, epsilon));
  auto note = [&](const std::string& s) {
    if (detail) *detail = s;
    return false;
  };
  if (!before.over_product || !after.over_product) return note("output not over the product of fixed spaces");
  const auto& m = before.model;
  ScalarMatrix t = ScalarMatrix::identity(m.y_ring->size());
  const std::size_t k = index_in(m.open, marking);
  if (k < m.open.size()) {
    auto inv = inverse(m.fixed[k].coordinates * epsilon.matrix() * m.fixed[k].basis);
    if (!inv) return note("epsilon does not act invertibly on the fixed space");
    for (std::size_t a = 0; a < inv->rows(); ++a)
      for (std::size_t b = 0; b < inv->cols(); ++b) t(m.y_offset[k] + a, m.y_offset[k] + b) = (*inv)(a, b);
  }
  auto transported = before.mf.substitute(linear_images(t, m.y_ring), m.y_ring);
  if (!(transported == after.mf)) return note("rerun differs from the transported output");
  if (detail) *detail = "bit-exact";
  return true;
}

}  // namespace mfc::spin
