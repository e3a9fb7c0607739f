#include "mfc/pairs.hpp"

#include "mfc/error.hpp"

namespace mfc {

using p1::Divisor;
using p1::Point;
using p1::RationalFunction;
using p1::UPoly;

std::optional<std::string> PairObject::defect() const {
  if (!same_ring(alpha.ring(), beta.ring())) return "alpha and beta live over different rings";
  if (auto e = alpha.square_defect()) return "alpha: " + *e;
  if (auto e = beta.square_defect()) return "beta: " + *e;
  if (auto e = phi_map().defect()) return "phi: " + *e;
  return std::nullopt;
}

void PairObject::validate() const {
  if (auto e = defect()) throw CertificateError(*e);
}

PairObject unit_pair(const RingPtr& ring) {
  PairObject p{unit_complex(ring), unit_complex(ring), {}};
  p.phi[0] = PolyMatrix::identity(ring, 1);
  return p;
}

PairObject pair_tensor(const PairObject& p, const PairObject& q) {
  if (!same_ring(p.beta.ring(), q.beta.ring())) throw PreconditionError("pair_tensor: base mismatch");
  ChainMap phi = tensor_map(p.phi_map(), q.phi_map());
  return {tensor(p.alpha, q.alpha), tensor(p.beta, q.beta), std::move(phi.components)};
}

PairObject j_lower_shriek(const FreeComplex& g) { return {FreeComplex(g.ring()), g, {}}; }

FreeComplex rj_shriek(const PairObject& p) { return shift(cone(p.phi_map()), -1); }

PairObject acyclic_extension(const PairObject& p) {
  PairObject out{p.alpha, direct_sum(p.beta, p.alpha), {}};
  for (int n : p.alpha.degrees()) {
    PolyMatrix m(p.alpha.ring(), p.alpha.rank(n), p.beta.rank(n) + p.alpha.rank(n));
    PolyMatrix phi = p.phi_map().at(n);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < phi.cols(); ++j) m(i, j) = phi(i, j);
      m(i, phi.cols() + i) = Poly(p.alpha.ring(), Scalar(1));
    }
    out.phi[n] = std::move(m);
  }
  return out;
}

LineBundlePair omega_log_pair(const std::vector<Point>& markings, const FieldPtr& field) {
  LineBundlePair out{field, {}, markings, {}};
  bool infinity_marked = false;
  for (const auto& p : markings) {
    if (p.at_infinity) {
      infinity_marked = true;
      out.scale.push_back(Scalar(-1));
    } else {
      out.e.add(p, 1);
      out.scale.push_back(Scalar(1));
    }
  }
  out.e.add(Point::infinity(), infinity_marked ? -1 : -2);
  return out;
}

Divisor default_divisor(const Divisor& e, const std::vector<Point>& avoid) {
  Divisor d;
  const int need = -1 - e.degree();
  if (need <= 0) return d;
  for (long q = 1;; ++q) {
    Point p = Point::finite(Scalar(q));
    bool taken = e.at(p) != 0;
    for (const auto& a : avoid) taken = taken || a == p;
    if (!taken) return d.add(p, need);
  }
}

DivisorModel divisor_model(const Divisor& e, const Divisor& d, const FieldPtr& field) {
  for (const auto& [q, m] : d.terms)
    if (m < 0) throw PreconditionError("divisor D must be effective");
  const Divisor twisted = e + d;
  if (p1::h1(twisted) != 0)
    throw PreconditionError("divisor not ample enough: H^1(L(D)) != 0 for deg L(D) = " +
                            std::to_string(twisted.degree()));
  DivisorModel out{e, d, p1::section_basis(twisted), FreeComplex(point_ring(field))};
  const int nj = p1::jet_count(d);
  std::vector<Generator> a, b;
  for (std::size_t k = 0; k < out.sections.size(); ++k) a.push_back({"s" + std::to_string(k), 0});
  for (int k = 0; k < nj; ++k) b.push_back({"j" + std::to_string(k), 0});
  out.complex.set_term(0, a);
  out.complex.set_term(1, b);
  ScalarMatrix f(b.size(), a.size());
  for (std::size_t c = 0; c < a.size(); ++c) {
    auto j = p1::jets(out.sections[c], e, d);
    for (std::size_t r = 0; r < b.size(); ++r) f(r, c) = j[r];
  }
  out.complex.set_differential(0, PolyMatrix::from_scalars(out.complex.ring(), f));
  return out;
}

PairMorphism PairMorphism::finite(RingPtr target, std::vector<Poly> forward, std::vector<Poly> inverse) {
  if (forward.size() != target->size())
    throw PreconditionError("finite morphism: need one image per target variable");
  if (forward.empty()) {
    if (!inverse.empty()) throw PreconditionError("finite morphism: inverse does not match the source ring");
  } else {
    const RingPtr& source = forward.front().ring();
    if (inverse.size() != source->size())
      throw PreconditionError("finite morphism: need one inverse image per source variable");
    for (std::size_t i = 0; i < forward.size(); ++i)
      if (!(forward[i].substitute(inverse, target) == Poly::variable(target, i)))
        throw PreconditionError("finite morphism: images are not mutually inverse");
    for (std::size_t i = 0; i < inverse.size(); ++i)
      if (!(inverse[i].substitute(forward, source) == Poly::variable(source, i)))
        throw PreconditionError("finite morphism: images are not mutually inverse");
  }
  PairMorphism f;
  f.kind = Kind::finite;
  f.target_ring = std::move(target);
  f.forward = std::move(forward);
  f.inverse = std::move(inverse);
  return f;
}

PairMorphism PairMorphism::p1_projection(Divisor d) {
  PairMorphism f;
  f.kind = Kind::p1_projection;
  f.d = std::move(d);
  return f;
}

namespace {

[[noreturn]] void unsupported() {
  throw PreconditionError(
      "unsupported morphism shape: supported are (a) identity or finite maps of affine models by restriction of "
      "scalars and (b) the projection (P^1, Sigma) -> (pt, pt)");
}

FreeComplex push_complex(const PairMorphism& f, const FreeComplex& c) {
  if (f.kind == PairMorphism::Kind::identity) return c;
  if (f.forward.empty() && c.ring()->size() == 0) {
    FreeComplex out(f.target_ring);
    for (int n : c.degrees()) out.set_term(n, c.term(n));
    for (int n : c.degrees())
      if (c.rank(n + 1) > 0) out.set_differential(n, c.differential(n).rebase(f.target_ring));
    return out;
  }
  if (!same_ring(c.ring(), f.forward.front().ring()))
    throw PreconditionError("finite morphism: object does not live over the source ring");
  return substitute(c, f.inverse, f.target_ring);
}

std::map<int, PolyMatrix> push_map(const PairMorphism& f, const std::map<int, PolyMatrix>& m) {
  if (f.kind == PairMorphism::Kind::identity) return m;
  std::map<int, PolyMatrix> out;
  for (const auto& [n, x] : m)
    out[n] = f.forward.empty() ? x.rebase(f.target_ring) : x.substitute(f.inverse, f.target_ring);
  return out;
}

std::map<int, std::size_t> ranks_at_origin(const FreeComplex& c) {
  if (c.is_point_base()) return homology_ranks(c);
  return homology_ranks(c.evaluate(std::vector<Scalar>(c.ring()->size())));
}

UPoly lcm(const UPoly& a, const UPoly& b) { return divmod(a * b, p1::gcd(a, b)).first; }

// Coordinates of h in the span of basis, or nullopt.
std::optional<std::vector<Scalar>> coordinates(const RationalFunction& h, const std::vector<RationalFunction>& basis) {
  UPoly den = h.denominator();
  for (const auto& b : basis) den = lcm(den, b.denominator());
  auto numerator = [&](const RationalFunction& f) {
    RationalFunction g = f * RationalFunction(den);
    if (g.denominator().degree() != 0) throw CertificateError("coordinates: denominator did not clear");
    return g.numerator() * UPoly(g.denominator().leading().inverse());
  };
  std::vector<UPoly> cols;
  int maxdeg = 0;
  for (const auto& b : basis) {
    cols.push_back(numerator(b));
    maxdeg = std::max(maxdeg, cols.back().degree());
  }
  UPoly target = numerator(h);
  maxdeg = std::max(maxdeg, target.degree());
  ScalarMatrix m(static_cast<std::size_t>(maxdeg + 1), cols.size());
  std::vector<Scalar> rhs(static_cast<std::size_t>(maxdeg + 1));
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (int k = 0; k <= maxdeg; ++k) m(static_cast<std::size_t>(k), c) = cols[c].coeff(k);
  for (int k = 0; k <= maxdeg; ++k) rhs[static_cast<std::size_t>(k)] = target.coeff(k);
  if (cols.empty()) {
    if (h.is_zero()) return std::vector<Scalar>{};
    return std::nullopt;
  }
  return solve(m, rhs);
}

}  // namespace

PushforwardResult pair_pushforward(const PairMorphism& f, const PairObject& p) {
  if (f.kind == PairMorphism::Kind::p1_projection)
    throw PreconditionError("the P^1 projection acts on line bundle pairs [L, Sigma]");
  if (f.kind != PairMorphism::Kind::identity && f.kind != PairMorphism::Kind::finite) unsupported();
  p.validate();
  PushforwardResult out{{push_complex(f, p.alpha), push_complex(f, p.beta), push_map(f, p.phi)}, std::nullopt};
  out.object.validate();
  return out;
}

PushforwardResult pair_pushforward(const PairMorphism& f, const LineBundlePair& p) {
  if (f.kind != PairMorphism::Kind::p1_projection) unsupported();
  if (p.scale.size() != p.markings.size()) throw PreconditionError("one comparison scale per marking is required");
  std::vector<Point> avoid = p.markings;
  Divisor d = f.d.terms.empty() ? default_divisor(p.e, avoid) : f.d;
  for (const auto& q : d.support())
    for (const auto& m : p.markings)
      if (q == m) throw PreconditionError("divisor D meets the marking " + m.to_string());
  DivisorModel model = divisor_model(p.e, d, p.field);
  const RingPtr& base = model.complex.ring();
  FreeComplex alpha(base);
  std::vector<Generator> sigma;
  for (std::size_t i = 0; i < p.markings.size(); ++i) sigma.push_back({"p" + std::to_string(i), 0});
  alpha.set_term(0, sigma);
  ScalarMatrix phi(sigma.size(), model.sections.size());
  for (std::size_t i = 0; i < sigma.size(); ++i)
    for (std::size_t k = 0; k < model.sections.size(); ++k)
      phi(i, k) = p.scale[i] * p1::fiber_value(model.sections[k], p.e, p.markings[i]);
  PushforwardResult out{{alpha, model.complex, {}}, model};
  out.object.phi[0] = PolyMatrix::from_scalars(base, phi);
  out.object.validate();
  return out;
}

ScalarMatrix p1_product_comparison(const DivisorModel& m1, const DivisorModel& m2, const DivisorModel& product) {
  const std::size_t n2 = m2.sections.size();
  ScalarMatrix out(product.sections.size(), m1.sections.size() * n2);
  for (std::size_t i = 0; i < m1.sections.size(); ++i)
    for (std::size_t j = 0; j < n2; ++j) {
      auto c = coordinates(m1.sections[i] * m2.sections[j], product.sections);
      if (!c) throw CertificateError("product of sections is not a section of the product bundle");
      for (std::size_t r = 0; r < c->size(); ++r) out(r, i * n2 + j) = (*c)[r];
    }
  return out;
}

CommutationCertificate check_commutation(const PairMorphism& f, const PairObject& p) {
  CommutationCertificate cert;
  FreeComplex lhs = rj_shriek(pair_pushforward(f, p).object);
  FreeComplex rhs = push_complex(f, rj_shriek(p));
  cert.lhs_ranks = ranks_at_origin(lhs);
  cert.rhs_ranks = ranks_at_origin(rhs);
  if (lhs == rhs) {
    cert.quasi_isomorphism = identity_map(rhs);
    cert.passed = cert.lhs_ranks == cert.rhs_ranks;
    cert.detail = "both sides agree as complexes";
  } else {
    cert.detail = "the two sides differ as complexes";
  }
  return cert;
}

CommutationCertificate check_commutation(const PairMorphism& f, const LineBundlePair& p) {
  CommutationCertificate cert;
  if (f.kind != PairMorphism::Kind::p1_projection) unsupported();
  // Rj_! of [L, Sigma] is the kernel sheaf L(-Sigma') where Sigma' are the
  // markings with nonzero comparison.
  Divisor kernel = p.e;
  for (std::size_t i = 0; i < p.markings.size() && i < p.scale.size(); ++i)
    if (!p.scale[i].is_zero()) kernel.add(p.markings[i], -1);
  // One divisor D serves both sides.
  PairMorphism g = f;
  if (g.d.terms.empty()) g.d = default_divisor(kernel, p.markings);

  PushforwardResult push = pair_pushforward(g, p);
  const DivisorModel& model = *push.model;
  FreeComplex lhs = rj_shriek(push.object);
  cert.lhs_ranks = homology_ranks(lhs);

  DivisorModel rhs_model = divisor_model(kernel, model.d, p.field);
  cert.rhs_ranks = homology_ranks(rhs_model.complex);
  for (int n : {0, 1}) {
    cert.lhs_ranks[n];
    cert.rhs_ranks[n];
  }

  auto cech = homology_ranks(p1::cech_complex(kernel.degree(), p.field));
  if (cech[0] != cert.rhs_ranks[0] || cech[1] != cert.rhs_ranks[1]) {
    cert.detail = "divisor model of the kernel sheaf disagrees with the Cech complex";
    return cert;
  }

  const RingPtr& base = lhs.ring();
  ChainMap q{rhs_model.complex, lhs, {}};
  PolyMatrix m0(base, lhs.rank(0), rhs_model.complex.rank(0));
  for (std::size_t c = 0; c < rhs_model.sections.size(); ++c) {
    auto coords = coordinates(rhs_model.sections[c], model.sections);
    if (!coords) {
      cert.detail = "kernel section is not a section of L(D)";
      return cert;
    }
    // Degree 0 of Rj_! is alpha^{-1} (+) beta^0 with alpha^{-1} = 0.
    for (std::size_t r = 0; r < coords->size(); ++r) m0(r, c) = Poly(base, (*coords)[r]);
  }
  q.components[0] = std::move(m0);
  const std::size_t marks = push.object.alpha.rank(0);
  PolyMatrix m1(base, lhs.rank(1), rhs_model.complex.rank(1));
  for (std::size_t r = 0; r < m1.cols(); ++r) m1(marks + r, r) = Poly(base, Scalar(1));
  q.components[1] = std::move(m1);

  if (auto e = q.defect()) {
    cert.detail = "comparison map is not a chain map: " + *e;
    return cert;
  }
  auto cone_ranks = homology_ranks(cone(q));
  bool acyclic = true;
  for (auto [n, h] : cone_ranks) acyclic = acyclic && h == 0;
  if (!acyclic) {
    cert.detail = "comparison map is not a quasi-isomorphism";
    return cert;
  }
  cert.quasi_isomorphism = std::move(q);
  cert.passed = cert.lhs_ranks == cert.rhs_ranks;
  cert.detail = cert.passed ? "explicit quasi-isomorphism with acyclic cone" : "homology ranks differ";
  return cert;
}

}  // namespace mfc
