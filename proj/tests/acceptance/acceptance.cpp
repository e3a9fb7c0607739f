// Acceptance suite: one PASS/FAIL line per criterion. Every check is exact.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "mfc/dgmf.hpp"
#include "mfc/error.hpp"
#include "mfc/pairs.hpp"
#include "mfc/parse.hpp"
#include "mfc/spin.hpp"
#include "pair_generators.hpp"
#include "spin_fixtures.hpp"
#include "support.hpp"

using namespace mfc;
using namespace mfc::testing;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream notes;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) notes << what;
    ok = ok && cond;
  }
};

Poly P(const RingPtr& r, const std::string& s) { return parse_poly(s, r); }

// delta1 delta0 and delta0 delta1 against W id, multiplied out here.
bool squares_to_potential(const MatrixFactorization& m, const Poly& w) {
  if (m.delta0.rows() != m.p1.size() || m.delta0.cols() != m.p0.size()) return false;
  if (m.delta1.rows() != m.p0.size() || m.delta1.cols() != m.p1.size()) return false;
  auto check = [&](const PolyMatrix& a, const PolyMatrix& b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Poly s(m.ring);
        for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
        if (s != (i == j ? w : Poly(m.ring))) return false;
      }
    return true;
  };
  return check(m.delta1, m.delta0, m.p0.size()) && check(m.delta0, m.delta1, m.p1.size());
}

Poly pairing(const std::vector<Poly>& a, const std::vector<Poly>& b, const RingPtr& r) {
  Poly w(r);
  for (std::size_t i = 0; i < a.size(); ++i) w += a[i] * b[i];
  return w;
}

std::vector<Poly> random_polys(Rng& rng, const RingPtr& r, std::size_t n, unsigned deg) {
  std::vector<Poly> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_poly(rng, r, deg, 3));
  return out;
}

DgFunction basis_element(const RingPtr& r, std::size_t n, const Subset& s) {
  DgFunction e(r, n);
  e.add_term(s, Poly(r, Scalar(1)));
  return e;
}

std::vector<Subset> all_subsets(std::size_t n) {
  auto [even, odd] = exterior_basis(n);
  even.insert(even.end(), odd.begin(), odd.end());
  return even;
}

// ---------------------------------------------------------------------------

void algebraic_certificates(Outcome& out) {
  Rng rng(101);
  auto r = make_ring(nullptr, {"x", "y", "z3"});
  std::uniform_int_distribution<std::size_t> rank(1, 3);
  int constructions = 0;
  for (int t = 0; t < 80; ++t, ++constructions) {
    const std::size_t n = rank(rng);
    auto a = random_polys(rng, r, n, 3), b = random_polys(rng, r, n, 3);
    auto m = koszul_mf(a, b, std::vector<int>(n, 0));
    out.require(m.potential == pairing(a, b, r), "koszul potential differs from <alpha, beta>; ");
    out.require(squares_to_potential(m, pairing(a, b, r)), "koszul delta^2 != W id; ");
  }
  for (int t = 0; t < 60; ++t, ++constructions) {
    const std::size_t n1 = rank(rng), n2 = rank(rng);
    auto a1 = random_polys(rng, r, n1, 2), b1 = random_polys(rng, r, n1, 2);
    auto a2 = random_polys(rng, r, n2, 2), b2 = random_polys(rng, r, n2, 2);
    auto m = mf_tensor(koszul_mf(a1, b1, std::vector<int>(n1, 0)), koszul_mf(a2, b2, std::vector<int>(n2, 0)));
    const Poly w = pairing(a1, b1, r) + pairing(a2, b2, r);
    out.require(m.potential == w, "tensor potential is not additive; ");
    out.require(squares_to_potential(m, w), "tensor delta^2 != W id; ");
  }
  std::size_t complexes = 0;
  for (int t = 0; t < 60; ++t, ++constructions) {
    const std::size_t n = rank(rng);
    auto beta = random_polys(rng, r, n, 2);
    auto x = derived_zero_locus(beta, r, std::vector<int>(n, 0));
    DgFunction f(r, n);
    for (std::size_t k = 0; k < n; ++k) f.add_term({k}, random_poly(rng, r, 2, 3));
    auto c = dgmf_from_homotopy(x, f);
    const DgFunction curvature = apply_d(x, f);
    out.require(c.curvature == curvature, "curvature differs from d(f); ");
    auto delta = [&](const DgFunction& p) { return apply_d(x, p) + f * p; };
    // Leibniz on pairs of basis monomials, one side scaled by a polynomial.
    for (const auto& s : all_subsets(n))
      for (const auto& u : all_subsets(n)) {
        const DgFunction phi = DgFunction::even(random_poly(rng, r, 1, 2), n) * basis_element(r, n, s);
        const DgFunction p = basis_element(r, n, u);
        const DgFunction sign_phi = s.size() % 2 ? -phi : phi;
        out.require(delta(phi * p) == apply_d(x, phi) * p + sign_phi * delta(p), "Leibniz fails; ");
      }
    for (const auto& s : all_subsets(n)) {
      const DgFunction e = basis_element(r, n, s);
      out.require(delta(delta(e)) == curvature * e, "delta^2 != d(f) on a basis element; ");
    }
    auto m = fold_to_mf(c);
    out.require(squares_to_potential(m, curvature.component({})), "folded delta^2 != W id; ");
    // d^2 = 0 on the complexes attached to the construction.
    std::vector<Generator> gens;
    for (std::size_t i = 0; i < n; ++i) gens.push_back({"a" + std::to_string(i), 1});
    PolyMatrix fm(point_ring(nullptr), n, n);
    ScalarMatrix rnd = random_matrix(rng, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) fm(i, j) = Poly(fm.ring(), rnd(i, j));
    std::vector<Generator> bg;
    for (std::size_t i = 0; i < n; ++i) bg.push_back({"b" + std::to_string(i), 1});
    auto sym = sym_power_two_term(gens, bg, fm, 2);
    out.require(!sym.complex.square_defect(), "symmetric power: d^2 != 0; ");
    ++complexes;
  }
  Rng prng(102);
  auto base = point_ring(nullptr);
  for (int t = 0; t < 40; ++t) {
    auto p = random_pair(prng, base);
    auto q = random_pair(prng, base);
    for (const auto& c : {rj_shriek(p), tensor(p.alpha, q.beta), cone(p.phi_map()), shift(p.beta, 3)}) {
      out.require(!c.square_defect(), "complex with d^2 != 0; ");
      ++complexes;
    }
  }
  out.notes << constructions << " constructions, " << complexes << " complexes";
}

void koszul_pushforward(Outcome& out) {
  Rng rng(202);
  const std::vector<RingPtr> rings{make_ring(nullptr, {"x"}), make_ring(nullptr, {"x", "y"}),
                                   make_ring(nullptr, {"x", "y", "w"})};
  for (int t = 0; t < 20; ++t) {
    const auto& r = rings[t % 3];
    const std::size_t n = 1 + t % 3;
    auto alpha = random_polys(rng, r, n, 4), beta = random_polys(rng, r, n, 4);
    auto x = derived_zero_locus(beta, r, std::vector<int>(n, 0));
    DgFunction f(r, n);
    for (std::size_t k = 0; k < n; ++k) f.add_term({k}, alpha[k]);
    auto fold = fold_to_mf(dgmf_from_homotopy(x, f));
    auto kz = koszul_mf(alpha, beta, std::vector<int>(n, 0));
    out.require(fold.delta0 == kz.delta0 && fold.delta1 == kz.delta1 && fold.potential == kz.potential &&
                    fold.p0 == kz.p0 && fold.p1 == kz.p1,
                "fold differs from koszul_mf; ");
  }
  out.notes << "20 instances bit-exact";
}

void support_dichotomy(Outcome& out) {
  auto r = make_ring(nullptr, {"x"});
  int points = 0;
  for (int rr : {2, 3, 5}) {
    auto m = koszul_mf({P(r, "x^" + std::to_string(rr - 1))}, {P(r, "x")});
    std::vector<std::vector<Scalar>> pts;
    for (long v = -3; v <= 3; ++v) pts.push_back({Scalar(v)});
    pts.push_back({Scalar::rational(1, 2)});
    for (const auto& v : support_check(m, pts, 4)) {
      const bool off = !v.point[0].is_zero();
      out.require(v.kind == (off ? SupportVerdict::Kind::contractible : SupportVerdict::Kind::noncontractible),
                  "wrong verdict for r = " + std::to_string(rr) + " at " + v.point[0].to_string() + "; ");
      ++points;
    }
  }
  out.notes << points << " point restrictions";
}

void pairs_triangle(Outcome& out) {
  Rng rng(303);
  auto base = point_ring(nullptr);
  for (int t = 0; t < 50; ++t) {
    auto p = random_pair(rng, base);
    out.require(!p.defect(), "random pair is not a pair object; ");
    auto hr = homology_ranks(rj_shriek(p));
    auto ha = homology_ranks(p.alpha);
    auto hb = homology_ranks(p.beta);
    for (int n = -1; n <= 4; ++n) {
      const std::size_t expected = (get(ha, n - 1) - induced_rank(p, n - 1)) + (get(hb, n) - induced_rank(p, n));
      out.require(get(hr, n) == expected, "long exact sequence rank mismatch; ");
    }
  }
  using p1::Point;
  const std::vector<std::vector<Point>> configs{
      {Point::finite(Scalar(0))},
      {Point::finite(Scalar(0)), Point::infinity()},
      {Point::finite(Scalar(0)), Point::finite(Scalar(1)), Point::infinity()},
  };
  const std::map<int, std::size_t> expected{{0, 0}, {1, 1}};
  for (const auto& marks : configs) {
    auto cert = check_commutation(PairMorphism::p1_projection(), omega_log_pair(marks));
    out.require(cert.passed && cert.lhs_ranks == expected && cert.rhs_ranks == expected,
                "commutation fails with " + std::to_string(marks.size()) + " markings: " + cert.detail + "; ");
  }
  out.notes << "50 random pairs, projections with 1-3 markings";
}

void residue_suite(Outcome& out) {
  Rng rng(404);
  std::uniform_int_distribution<long> num(-9, 9), den(1, 4), count(1, 4);
  int sections = 0;
  while (sections < 30) {
    // Distinct simple poles; numerator degree below the denominator's keeps
    // the pole at infinity logarithmic.
    std::vector<Scalar> poles;
    const long k = count(rng);
    while (static_cast<long>(poles.size()) < k) {
      Scalar q = Scalar::rational(num(rng), den(rng));
      if (std::find(poles.begin(), poles.end(), q) == poles.end()) poles.push_back(q);
    }
    p1::UPoly q(Scalar(1));
    for (const auto& p : poles) q = q * p1::UPoly::linear(p);
    std::vector<Scalar> pc;
    for (long i = 0; i < k; ++i) pc.push_back(Scalar::rational(num(rng), den(rng)));
    p1::UPoly pn(pc);
    if (pn.is_zero()) continue;
    p1::RationalFunction f(pn, q);
    Scalar total;
    for (const auto& p : poles) {
      Scalar dq(1);
      for (const auto& o : poles)
        if (!(o == p)) dq *= p - o;
      const Scalar expected = pn.evaluate(p) / dq;
      out.require(f.residue(p1::Point::finite(p)) == expected, "finite residue differs from P(p)/Q'(p); ");
      total += f.residue(p1::Point::finite(p));
    }
    const Scalar at_inf = -pn.coeff(static_cast<int>(k) - 1);
    out.require(f.residue(p1::Point::infinity()) == at_inf, "residue at infinity differs; ");
    total += f.residue(p1::Point::infinity());
    out.require(total.is_zero(), "total residue is not zero; ");
    ++sections;
  }
  for (const auto& s : {r2_two_point(), r2_two_point(1), narrow_three_point()}) {
    auto res = spin::residue_structure(s, spin::two_term_realization(s));
    out.require(res.residue_theorem, "residue theorem fails on a model: " + res.detail + "; ");
    out.require(res.triangle, "residue triangle does not commute: " + res.detail + "; ");
  }
  out.notes << sections << " random sections, triangle on 3 models";
}

std::size_t cech_rank_b(const spin::SpinCurveSpec& s) {
  auto h0 = [](int n) { return n >= 0 ? n + 1 : 0; };
  auto h1 = [](int n) { return n <= -2 ? -n - 1 : 0; };
  int b = 0;
  for (const auto& c : s.components)
    for (const auto& e : c.bundle) {
      const int deg = e.degree(), dd = c.d.degree();
      b += h0(deg + dd) - (h0(deg) - h1(deg));
    }
  return static_cast<std::size_t>(b);
}

void fundamental_cases(Outcome& out) {
  {
    auto r = spin::fundamental_mf(narrow_three_point());
    out.require(r.mf.p0.size() == 1 && r.mf.p1.empty() && r.mf.potential.is_zero(), "narrow case is not the unit; ");
    out.require(r.mf == unit_mf(r.model.y_ring), "narrow case differs from unit_mf; ");
  }
  auto s = r2_two_point();
  auto r = spin::fundamental_mf(s);
  const RingPtr& y = r.mf.ring;
  const Poly w = P(y, "x1^2 + x2^2");
  out.require(r.over_product, "broad case is not over the product; ");
  out.require(r.mf.potential == w && squares_to_potential(r.mf, w), "broad case: delta^2 != (x1^2 + x2^2) id; ");
  const std::size_t rank_b = cech_rank_b(s);
  out.require(r.model.b.size() == rank_b, "rank B differs from the Cech count; ");
  out.require(r.mf.p0.size() + r.mf.p1.size() == (std::size_t{1} << rank_b), "MF rank is not 2^{rk B}; ");
  for (const auto& v : support_check(r.mf, spin::sample_points(y, 10, 606), 4))
    out.require(v.kind == SupportVerdict::Kind::contractible, "not contractible at a nonzero point; ");
  out.notes << "rank " << r.mf.p0.size() << "|" << r.mf.p1.size() << ", rk B = " << rank_b;
}

void choice_independence(Outcome& out) {
  auto small = spin::fundamental_mf(r2_two_point());
  auto big = spin::fundamental_mf(r2_two_point(1));
  out.require(big.model.a.size() == small.model.a.size() + 1, "enlarged D did not enlarge A; ");
  auto pts = spin::sample_points(small.mf.ring, 10, 707);
  pts.push_back({Scalar(0), Scalar(0)});
  auto a = support_check(small.mf, pts, 4), b = support_check(big.mf, pts, 4);
  for (std::size_t i = 0; i < pts.size(); ++i) out.require(a[i].kind == b[i].kind, "contractibility verdicts differ; ");
  // Zero locus of x1^2 + x2^2: x1 = +-z x2.
  const Scalar z = Scalar::zeta(r2_two_point().field);
  Rng rng(708);
  std::uniform_int_distribution<long> coord(1, 6);
  std::bernoulli_distribution flip(0.5);
  for (int k = 0; k < 5; ++k) {
    const Scalar t(coord(rng) * (flip(rng) ? 1 : -1));
    std::vector<Scalar> p{flip(rng) ? z * t : -z * t, t};
    out.require(small.mf.potential.evaluate(p).is_zero(), "sample point is off the zero locus; ");
    out.require(fiber_homology(small.mf, p) == fiber_homology(big.mf, p), "fiber homology differs; ");
  }
  out.notes << pts.size() << " verdicts, 5 zero-locus fibers";
}

bool intertwines(const MatrixFactorization& from, const MatrixFactorization& to, const PolyMatrix& e0,
                 const PolyMatrix& e1) {
  return to.delta0 * e0 == e1 * from.delta0 && to.delta1 * e1 == e0 * from.delta1;
}

void gauge_and_equivariance(Outcome& out) {
  auto s = r2_two_point(2);
  auto m = spin::two_term_realization(s);
  auto ob = spin::build_obstruction(s, m);
  auto f1 = spin::solve_f_minus_one(ob.scheme, ob.c, s.d, PivotOrder::forward);
  auto f2 = spin::solve_f_minus_one(ob.scheme, ob.c, s.d, PivotOrder::reverse);
  out.require((apply_d(ob.scheme, f1) + ob.c).is_zero() && (apply_d(ob.scheme, f2) + ob.c).is_zero(),
              "a pivot order does not solve d(f) = -c; ");
  const DgFunction diff = f2 - f1;
  out.require(!diff.is_zero(), "pivot orders agree, gauge not exercised; ");
  out.require(apply_d(ob.scheme, diff).is_zero(), "difference is not a cocycle; ");
  if (auto h = find_primitive(ob.scheme, diff, s.d)) {
    out.require(apply_d(ob.scheme, *h) == diff, "primitive does not hit the difference; ");
    auto from = dgmf_from_homotopy(ob.scheme, -f1);
    auto to = dgmf_from_homotopy(ob.scheme, -f2);
    auto g = gauge_intertwiner(from, to, -*h);
    out.require(intertwines(fold_to_mf(from), fold_to_mf(to), g.e0, g.e1), "exp(-h) does not intertwine; ");
    const std::vector<Scalar> origin(m.a_ring->size());
    out.require(inverse(g.e0.evaluate(origin)).has_value() && inverse(g.e1.evaluate(origin)).has_value(),
                "exp(-h) is not invertible; ");
  } else {
    out.require(false, "difference of pivot solutions is not exact at the bound; ");
  }

  auto base = r2_two_point();
  auto r = spin::fundamental_mf(base);
  // J = -1 acts on each fixed line by -1; delta is linear in y.
  std::vector<Poly> minus;
  for (std::size_t v = 0; v < r.mf.ring->size(); ++v) minus.push_back(-Poly::variable(r.mf.ring, v));
  auto moved = r.mf.substitute(minus, r.mf.ring);
  auto t = spin::action_on_markings(r, base, *base.j);
  auto it = spin::intertwiner(r.mf, t);
  out.require(it.has_value(), "no intertwiner for J; ");
  if (it) {
    auto e0 = PolyMatrix::from_scalars(r.mf.ring, it->first), e1 = PolyMatrix::from_scalars(r.mf.ring, it->second);
    out.require(intertwines(r.mf, moved, e0, e1), "J does not conjugate delta to delta; ");
  }
  out.require(spin::check_equivariance(base, r).passed(), "equivariance report fails; ");

  // Rigidification at p1 changed by J: the new output is the original with x1 -> -x1.
  auto changed = spin::fundamental_mf(spin::change_rigidification(base, 0, *base.j));
  std::vector<Poly> flip{-Poly::variable(r.mf.ring, 0), Poly::variable(r.mf.ring, 1)};
  auto transported = r.mf.substitute(flip, r.mf.ring);
  out.require(changed.mf == transported, "rigidification change is not the transport; ");
  out.require(spin::rigidification_transport(base, 0, *base.j), "library transport check fails; ");
  out.notes << "gauge, J, rigidification";
}

void gluing_shadow(Outcome& out) {
  auto cert = spin::twisted_diagonal_glue(r2_cylinder_pair(false), r2_cylinder_pair(true));
  out.require(cert.cartesian, "not cartesian: " + cert.detail + "; ");
  out.require(cert.potential_match, "potentials differ; ");
  const RingPtr& pr = cert.pulled_back.ring;
  const Poly expected = P(pr, "x1^2 + x4^2");
  out.require(cert.pulled_back.potential == expected, "pulled-back potential is not x1^2 + x4^2; ");
  out.require(squares_to_potential(cert.pulled_back, expected), "pulled-back delta^2 != W id; ");
  const RingPtr& gr = cert.glued.mf.ring;
  out.require(cert.glued.mf.potential == P(gr, "x1^2 + x4^2"), "glued potential is not x1^2 + x4^2; ");
  out.notes << "identification: " << cert.identification;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
      {"algebraic certificates", algebraic_certificates},
      {"Koszul factorization as pushforward", koszul_pushforward},
      {"regular-section support dichotomy", support_dichotomy},
      {"pairs triangle and commutation", pairs_triangle},
      {"residue suite", residue_suite},
      {"fundamental matrix factorization", fundamental_cases},
      {"choice independence", choice_independence},
      {"gauge and equivariance", gauge_and_equivariance},
      {"gluing shadow", gluing_shadow},
  };
  int failed = 0;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(out);
    } catch (const std::exception& e) {
      out.ok = false;
      out.notes << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %zu: %s  %s (%s; %.2fs)\n", i + 1, out.ok ? "PASS" : "FAIL", criteria[i].first,
                out.notes.str().c_str(), secs);
    failed += out.ok ? 0 : 1;
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("total %.2fs, %d failed\n", total, failed);
  return failed == 0 ? 0 : 1;
}
