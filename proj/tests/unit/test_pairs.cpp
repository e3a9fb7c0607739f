#include <doctest.h>

#include "mfc/error.hpp"
#include "mfc/pairs.hpp"
#include "mfc/parse.hpp"
#include "pair_generators.hpp"

using namespace mfc;
using namespace mfc::testing;
using p1::Point;

TEST_CASE("unit pair is a tensor unit") {
  Rng rng(1);
  auto base = point_ring(nullptr);
  for (int t = 0; t < 10; ++t) {
    PairObject p = random_pair(rng, base);
    PairObject q = pair_tensor(p, unit_pair(base));
    CHECK_FALSE(q.defect());
    CHECK(q.alpha.degrees() == p.alpha.degrees());
    CHECK(q.beta.degrees() == p.beta.degrees());
    for (int n : p.beta.degrees()) {
      CHECK(q.beta.differential(n) == p.beta.differential(n));
      CHECK(q.phi_map().at(n) == p.phi_map().at(n));
    }
  }
}

TEST_CASE("tensor of pairs multiplies ranks") {
  Rng rng(2);
  auto base = point_ring(nullptr);
  for (int t = 0; t < 15; ++t) {
    PairObject p = random_pair(rng, base);
    PairObject q = random_pair(rng, base);
    PairObject pq = pair_tensor(p, q);
    CHECK_FALSE(pq.defect());
    std::size_t ra = 0, rb = 0, pa = 0, pb = 0, qa = 0, qb = 0;
    for (int n = -2; n <= 6; ++n) {
      ra += pq.alpha.rank(n);
      rb += pq.beta.rank(n);
      pa += p.alpha.rank(n);
      pb += p.beta.rank(n);
      qa += q.alpha.rank(n);
      qb += q.beta.rank(n);
    }
    CHECK(ra == pa * qa);
    CHECK(rb == pb * qb);
  }
  FreeComplex g = random_complex(rng, base, 0, 1, "g");
  FreeComplex h = random_complex(rng, base, 0, 1, "h");
  PairObject jj = pair_tensor(j_lower_shriek(g), j_lower_shriek(h));
  CHECK(jj.alpha.degrees().empty());
}

TEST_CASE("tensor rejects mismatched bases") {
  CHECK_THROWS_AS(pair_tensor(unit_pair(point_ring(nullptr)), unit_pair(make_ring(nullptr, {"x"}))),
                  PreconditionError);
}

TEST_CASE("rj_shriek on extensions by zero and on alpha-only pairs") {
  Rng rng(3);
  auto base = point_ring(nullptr);
  for (int t = 0; t < 10; ++t) {
    FreeComplex g = random_complex(rng, base, -1, 2, "g");
    CHECK(rj_shriek(j_lower_shriek(g)) == g);
    PairObject alpha_only{g, FreeComplex(base), {}};
    CHECK(rj_shriek(alpha_only) == shift(g, -1));
  }
}

TEST_CASE("long exact sequence of the triangle") {
  Rng rng(4);
  auto base = point_ring(nullptr);
  for (int t = 0; t < 50; ++t) {
    PairObject p = random_pair(rng, base);
    REQUIRE_FALSE(p.defect());
    auto hr = homology_ranks(rj_shriek(p));
    auto ha = homology_ranks(p.alpha);
    auto hb = homology_ranks(p.beta);
    for (int n = -1; n <= 4; ++n) {
      // H^n(Rj_!) = coker(H^{n-1} beta -> H^{n-1} alpha) (+) ker(H^n beta -> H^n alpha).
      const std::size_t expected =
          (get(ha, n - 1) - induced_rank(p, n - 1)) + (get(hb, n) - induced_rank(p, n));
      CHECK(get(hr, n) == expected);
    }
  }
}

TEST_CASE("acyclic extension resolves the pair") {
  Rng rng(5);
  auto base = point_ring(nullptr);
  for (int t = 0; t < 20; ++t) {
    PairObject p = random_pair(rng, base);
    PairObject m = acyclic_extension(p);
    CHECK_FALSE(m.defect());
    for (int n : p.alpha.degrees()) CHECK(rank(m.phi_map().at(n).to_scalars()) == p.alpha.rank(n));
    // The kernel of the surjection [phi, id] is isomorphic to beta.
    auto hm = homology_ranks(rj_shriek(m));
    auto hb = homology_ranks(p.beta);
    for (int n = -1; n <= 4; ++n) CHECK(get(hm, n) == get(hb, n));
  }
}

TEST_CASE("pushforward along identity and finite maps") {
  auto ring = make_ring(nullptr, {"x", "y"});
  auto target = make_ring(nullptr, {"u", "v"});
  FreeComplex kx(ring), ky(ring);
  kx.set_term(-1, {{"e", 0}});
  kx.set_term(0, {{"1", 0}});
  ky.set_term(-1, {{"f", 0}});
  ky.set_term(0, {{"1", 0}});
  PolyMatrix dx(ring, 1, 1), dy(ring, 1, 1);
  dx(0, 0) = Poly::variable(ring, 0);
  dy(0, 0) = Poly::variable(ring, 1);
  kx.set_differential(-1, dx);
  ky.set_differential(-1, dy);
  PairObject p{ky, kx, {{-1, dx}, {0, dy}}};
  REQUIRE_FALSE(p.defect());

  auto id = pair_pushforward(PairMorphism::identity(), p);
  CHECK(id.object.beta == p.beta);
  CHECK(id.object.alpha == p.alpha);

  // u = x + y, v = y.
  auto f = PairMorphism::finite(target, {parse_poly("x + y", ring), Poly::variable(ring, 1)},
                                {Poly::variable(target, 0) - Poly::variable(target, 1), Poly::variable(target, 1)});
  auto pushed = pair_pushforward(f, p);
  CHECK_FALSE(pushed.object.defect());
  for (int n : {-1, 0}) {
    CHECK(pushed.object.alpha.rank(n) == p.alpha.rank(n));
    CHECK(pushed.object.beta.rank(n) == p.beta.rank(n));
  }
  auto cert = check_commutation(f, p);
  CHECK(cert.passed);
  CHECK(cert.lhs_ranks == cert.rhs_ranks);
  CHECK(check_commutation(PairMorphism::identity(), p).passed);

  CHECK_THROWS_AS(PairMorphism::finite(target, {Poly::variable(ring, 0), Poly::variable(ring, 0)},
                                       {Poly::variable(target, 0), Poly::variable(target, 1)}),
                  PreconditionError);
  CHECK_THROWS_WITH_AS(pair_pushforward(PairMorphism::p1_projection(), p),
                       doctest::Contains("line bundle pairs"), PreconditionError);
  CHECK_THROWS_WITH_AS(pair_pushforward(PairMorphism::identity(), omega_log_pair({Point::infinity()})),
                       doctest::Contains("supported are"), PreconditionError);
}

TEST_CASE("finite pushforward of random point pairs commutes with rj_shriek") {
  Rng rng(6);
  auto base = point_ring(nullptr);
  auto f = PairMorphism::finite(point_ring(nullptr), {}, {});
  for (int t = 0; t < 10; ++t) {
    PairObject p = random_pair(rng, base);
    auto cert = check_commutation(f, p);
    CHECK(cert.passed);
    CHECK(cert.lhs_ranks == homology_ranks(rj_shriek(p)));
  }
}

TEST_CASE("projection of omega^log with two markings") {
  auto pair = omega_log_pair({Point::finite(Scalar(0)), Point::infinity()});
  auto push = pair_pushforward(PairMorphism::p1_projection(), pair);
  CHECK(homology_ranks(push.object.beta) == std::map<int, std::size_t>{{0, 1}});
  CHECK(push.object.beta.rank(1) == 0);
  CHECK(push.object.alpha.rank(0) == 2);
  // The section dt/t has residues 1 and -1.
  CHECK(push.object.phi_map().at(0).to_scalars() == ScalarMatrix({{Scalar(1)}, {Scalar(-1)}}));
  auto h = homology_ranks(rj_shriek(push.object));
  CHECK(get(h, 0) == 0);
  CHECK(get(h, 1) == 1);
}

TEST_CASE("commutation for the projection with one to three markings") {
  std::vector<std::vector<Point>> configs = {
      {Point::finite(Scalar(0))},
      {Point::finite(Scalar(0)), Point::infinity()},
      {Point::finite(Scalar(0)), Point::finite(Scalar(1)), Point::finite(Scalar(-1))},
      {Point::finite(Scalar(2)), Point::finite(Scalar::rational(1, 2)), Point::infinity()},
  };
  for (const auto& marks : configs) {
    auto cert = check_commutation(PairMorphism::p1_projection(), omega_log_pair(marks));
    CHECK_MESSAGE(cert.passed, cert.detail);
    CHECK(cert.lhs_ranks == std::map<int, std::size_t>{{0, 0}, {1, 1}});
    CHECK(cert.rhs_ranks == std::map<int, std::size_t>{{0, 0}, {1, 1}});
    CHECK(cert.quasi_isomorphism.has_value());
  }
  // A larger divisor than necessary gives the same answer.
  p1::Divisor d;
  d.add(Point::finite(Scalar(5)), 2).add(Point::finite(Scalar(7)), 1);
  auto cert = check_commutation(PairMorphism::p1_projection(d), omega_log_pair({Point::finite(Scalar(0))}));
  CHECK(cert.passed);
  p1::Divisor bad;
  bad.add(Point::finite(Scalar(0)), 3);
  CHECK_THROWS_AS(pair_pushforward(PairMorphism::p1_projection(bad), omega_log_pair({Point::finite(Scalar(0))})),
                  PreconditionError);
}

TEST_CASE("products of sections are compatible with the fiber maps") {
  p1::Divisor e1, e2, d1, d2;
  e1.add(Point::finite(Scalar(0)), 1);
  e2.add(Point::infinity(), 1).add(Point::finite(Scalar(1)), -1);
  d1.add(Point::finite(Scalar(3)), 1);
  auto m1 = divisor_model(e1, d1, nullptr);
  auto m2 = divisor_model(e2, d2, nullptr);
  auto m12 = divisor_model(e1 + e2, d1 + d2, nullptr);
  ScalarMatrix prod = p1_product_comparison(m1, m2, m12);
  for (const auto& pt : {Point::finite(Scalar(2)), Point::infinity(), Point::finite(Scalar(-1))}) {
    for (std::size_t i = 0; i < m1.sections.size(); ++i)
      for (std::size_t j = 0; j < m2.sections.size(); ++j) {
        Scalar lhs;
        for (std::size_t r = 0; r < m12.sections.size(); ++r)
          lhs += prod(r, i * m2.sections.size() + j) * p1::fiber_value(m12.sections[r], e1 + e2, pt);
        CHECK(lhs == p1::fiber_value(m1.sections[i], e1, pt) * p1::fiber_value(m2.sections[j], e2, pt));
      }
  }
}
