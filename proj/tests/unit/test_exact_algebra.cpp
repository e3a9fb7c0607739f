#include <doctest.h>

#include "mfc/error.hpp"
#include "mfc/group.hpp"
#include "mfc/parse.hpp"
#include "support.hpp"

using namespace mfc;
using mfc::testing::Rng;

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == std::vector<mpz_class>{-1, 1});
  CHECK(cyclotomic_polynomial(4) == std::vector<mpz_class>{1, 0, 1});
  CHECK(cyclotomic_polynomial(5) == std::vector<mpz_class>{1, 1, 1, 1, 1});
  CHECK(cyclotomic_polynomial(6) == std::vector<mpz_class>{1, -1, 1});
  CHECK(cyclotomic_polynomial(12) == std::vector<mpz_class>{1, 0, -1, 0, 1});
}

TEST_CASE("scalar arithmetic examples") {
  auto f4 = CyclotomicField::make(4);
  auto z4 = Scalar::zeta(f4);
  CHECK(z4 * z4 == Scalar(-1));
  CHECK(Scalar::rational(1, 2) + Scalar::rational(1, 3) == Scalar::rational(5, 6));

  auto f5 = CyclotomicField::make(5);
  auto z5 = Scalar::zeta(f5);
  // Oracle: z5^4 written out in the reduced basis is -1 - z - z^2 - z^3.
  Scalar z5_4(f5, {mpq_class(-1), mpq_class(-1), mpq_class(-1), mpq_class(-1)});
  CHECK(z5.inverse() == z5_4);
  CHECK(z5.pow(4) == z5_4);
  CHECK(z5 * z5_4 == Scalar(1));

  CHECK_THROWS_WITH_AS(Scalar().inverse(), "division by zero", PreconditionError);
}

TEST_CASE("zeta has exact multiplicative order N") {
  for (unsigned n : {1U, 2U, 3U, 4U, 5U, 6U, 8U, 9U, 12U}) {
    auto f = CyclotomicField::make(n);
    auto z = Scalar::zeta(f);
    for (unsigned k = 1; k < n; ++k) CHECK_FALSE(z.pow(k).is_one());
    CHECK(z.pow(n).is_one());
  }
}

TEST_CASE("field axioms on randomized triples") {
  Rng rng(17);
  for (unsigned n : {3U, 5U, 8U, 12U}) {
    auto f = CyclotomicField::make(n);
    for (int t = 0; t < 250; ++t) {
      Scalar a = testing::random_scalar(rng, f);
      Scalar b = testing::random_scalar(rng, f);
      Scalar c = testing::random_scalar(rng, f);
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a - a == Scalar());
      if (!a.is_zero()) CHECK(a * a.inverse() == Scalar(1));
    }
  }
}

TEST_CASE("scalar and polynomial text round-trip") {
  Rng rng(5);
  auto f = CyclotomicField::make(12);
  auto ring = make_ring(f, {"x", "y", "w"}, {1, 2, 3});
  for (int t = 0; t < 100; ++t) {
    Scalar s = testing::random_scalar(rng, f);
    CHECK(parse_scalar(s.to_string(), f) == s);
    Poly p = testing::random_poly(rng, ring, 4, 5);
    p *= testing::random_scalar(rng, f);
    CHECK(parse_poly(p.to_string(), ring) == p);
  }
  CHECK(parse_poly("(1 + z)*x^2*y - 1/2", ring).to_string() == "(1 + z)*x^2*y - 1/2");
}

TEST_CASE("parse errors carry positions") {
  auto ring = make_ring(CyclotomicField::make(3), {"x"});
  try {
    parse_poly("x + q", ring, 3, 5);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 9);
  }
  CHECK_THROWS_AS(parse_poly("x +", ring), ParseError);
  CHECK_THROWS_AS(parse_poly("x / x", ring), ParseError);
}

TEST_CASE("weight_of examples") {
  auto f = CyclotomicField::make(5);
  auto r1 = make_ring(f, {"x"});
  auto r2 = make_ring(f, {"x", "y"});
  auto w = weight_of(parse_poly("x^5", r1));
  CHECK(w.kind == WeightReport::Kind::homogeneous);
  CHECK(w.degree == 5);
  w = weight_of(parse_poly("x^2*y + y^3", r2));
  CHECK(w.kind == WeightReport::Kind::homogeneous);
  CHECK(w.degree == 3);
  w = weight_of(parse_poly("x^2 + x^3", r1));
  CHECK(w.kind == WeightReport::Kind::inhomogeneous);
  CHECK(w.offending_terms.size() == 1);
  CHECK(weight_of(Poly(r1)).kind == WeightReport::Kind::zero);
}

TEST_CASE("weights add under products") {
  Rng rng(9);
  auto ring = make_ring(nullptr, {"x", "y", "u"}, {2, 3, 5});
  for (int t = 0; t < 50; ++t) {
    std::uniform_int_distribution<int> wd(1, 12);
    int a = wd(rng), b = wd(rng);
    Poly p = testing::random_weighted_poly(rng, ring, a, 3);
    Poly q = testing::random_weighted_poly(rng, ring, b, 3);
    if (p.is_zero() || q.is_zero()) continue;
    auto wp = weight_of(p * q);
    CHECK(wp.kind == WeightReport::Kind::homogeneous);
    CHECK(wp.degree == a + b);
  }
}

TEST_CASE("group action examples") {
  auto f5 = CyclotomicField::make(5);
  auto r1 = make_ring(f5, {"x"});
  GroupElement g(ScalarMatrix({{Scalar::zeta(f5)}}), f5);
  CHECK(g.order() == 5);
  CHECK(act(g, parse_poly("x^5", r1)) == parse_poly("x^5", r1));
  CHECK(act(g, parse_poly("x", r1)) == parse_poly("z*x", r1));

  auto f4 = CyclotomicField::make(4);
  auto r2 = make_ring(f4, {"x", "y"});
  GroupElement swap(ScalarMatrix({{Scalar(0), Scalar(1)}, {Scalar(1), Scalar(0)}}), f4);
  CHECK(act(swap, parse_poly("x^2*y", r2)) == parse_poly("y^2*x", r2));
  CHECK_THROWS_AS(act(swap, parse_poly("x", r1)), PreconditionError);

  // Order 4 does not fit Q(zeta_3), whose roots of unity have order dividing 6.
  auto f3 = CyclotomicField::make(3);
  CHECK_THROWS_AS(GroupElement(ScalarMatrix({{Scalar(0), Scalar(-1)}, {Scalar(1), Scalar(0)}}), f3),
                  PreconditionError);
}

TEST_CASE("action is a left action") {
  Rng rng(23);
  auto f = CyclotomicField::make(4);
  auto ring = make_ring(f, {"x", "y"});
  std::vector<GroupElement> gens = {
      GroupElement(ScalarMatrix({{Scalar(0), Scalar(1)}, {Scalar(1), Scalar(0)}}), f),
      GroupElement(ScalarMatrix({{Scalar::zeta(f), Scalar(0)}, {Scalar(0), Scalar(1)}}), f),
      GroupElement(ScalarMatrix({{Scalar(0), Scalar(-1)}, {Scalar(1), Scalar(0)}}), f),
      GroupElement(ScalarMatrix({{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(-1)}}), f),
  };
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  for (int t = 0; t < 60; ++t) {
    const auto& g = gens[pick(rng)];
    const auto& h = gens[pick(rng)];
    Poly p = testing::random_poly(rng, ring, 3, 4);
    CHECK(act(g * h, p) == act(g, act(h, p)));
  }
}

TEST_CASE("nondegeneracy examples") {
  auto ring1 = make_ring(nullptr, {"x"});
  auto ring2 = make_ring(nullptr, {"x", "y"});
  auto v = nondegeneracy_check(parse_poly("x^5", ring1), 6);
  CHECK(v.kind == NondegeneracyVerdict::Kind::nondegenerate);
  CHECK(v.power == 4);

  v = nondegeneracy_check(parse_poly("x^2*y", ring2), 8);
  REQUIRE(v.kind == NondegeneracyVerdict::Kind::degenerate);
  // Oracle: 2xy = x^2 = 0 forces x = 0, so the witness lies on the y-axis.
  CHECK(v.witness[0].is_zero());
  CHECK_FALSE(v.witness[1].is_zero());

  v = nondegeneracy_check(parse_poly("x^3 + y^3", ring2), 6);
  CHECK(v.kind == NondegeneracyVerdict::Kind::nondegenerate);
  CHECK(v.power == 3);

  // Too small a bound is inconclusive, never a wrong verdict.
  v = nondegeneracy_check(parse_poly("x^3 + y^3", ring2), 2);
  CHECK(v.kind == NondegeneracyVerdict::Kind::inconclusive);
}

TEST_CASE("nondegeneracy verdicts are monotone in the bound") {
  auto ring = make_ring(nullptr, {"x", "y"}, {1, 1});
  auto wring = make_ring(nullptr, {"x", "y"}, {1, 2});
  std::vector<Poly> samples = {parse_poly("x^4 + y^4", ring), parse_poly("x^3*y + x*y^3", ring),
                               parse_poly("x^2*y^2", ring), parse_poly("x^4 + y^2", wring),
                               parse_poly("x^2*y + y^3", ring)};
  for (const auto& w : samples) {
    bool seen_nondeg = false;
    bool seen_deg = false;
    for (unsigned b = 0; b <= 8; ++b) {
      auto v = nondegeneracy_check(w, b);
      if (v.kind == NondegeneracyVerdict::Kind::nondegenerate) seen_nondeg = true;
      else if (seen_nondeg) FAIL("verdict regressed for ", w.to_string());
      if (v.kind == NondegeneracyVerdict::Kind::degenerate) seen_deg = true;
    }
    CHECK_FALSE((seen_nondeg && seen_deg));
  }
}
