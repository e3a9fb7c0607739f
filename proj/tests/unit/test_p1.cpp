#include <doctest.h>

#include "mfc/error.hpp"
#include "mfc/p1.hpp"
#include "support.hpp"

using namespace mfc;
using namespace mfc::p1;
using mfc::testing::Rng;

namespace {

Point pt(long v) { return Point::finite(Scalar(v)); }

Divisor divisor(std::initializer_list<std::pair<Point, int>> terms) {
  Divisor d;
  for (const auto& [p, n] : terms) d.add(p, n);
  return d;
}

}  // namespace

TEST_CASE("laurent expansions and residues") {
  RationalFunction f = parse_rational("1/(t - 1)", nullptr);
  CHECK(f.order_at(pt(1)) == -1);
  CHECK(f.order_at(Point::infinity()) == 1);
  CHECK(f.laurent(pt(1), -1, 1) == std::vector<Scalar>{Scalar(1), Scalar(0), Scalar(0)});
  // 1/(t-1) = -(1 + t + t^2 + ...) near 0.
  CHECK(f.laurent(pt(0), 0, 2) == std::vector<Scalar>{Scalar(-1), Scalar(-1), Scalar(-1)});

  RationalFunction inv_t = parse_rational("1/t", nullptr);
  CHECK(inv_t.residue(pt(0)) == Scalar(1));
  CHECK(inv_t.residue(Point::infinity()) == Scalar(-1));
  CHECK(RationalFunction(Scalar(1)).residue(Point::infinity()) == Scalar(0));

  RationalFunction eta = parse_rational("1/(t*(t^2 - 1))", nullptr);
  CHECK(eta.residue(pt(0)) == Scalar(-1));
  CHECK(eta.residue(pt(1)) == Scalar::rational(1, 2));
  CHECK(eta.residue(pt(-1)) == Scalar::rational(1, 2));
  CHECK(eta.residue(Point::infinity()) == Scalar(0));
}

TEST_CASE("rational function parsing") {
  auto f4 = CyclotomicField::make(4);
  RationalFunction f = parse_rational("(t^2 + 1)/(t - z)", f4);
  CHECK(f == RationalFunction(UPoly::linear(-Scalar::zeta(f4))));
  CHECK_THROWS_AS(parse_rational("x + 1", nullptr), ParseError);
  CHECK_THROWS_AS(parse_rational("1/(t - t)", nullptr), ParseError);
}

TEST_CASE("residue theorem on random rational functions") {
  Rng rng(31);
  std::uniform_int_distribution<long> root(-4, 4);
  std::uniform_int_distribution<int> mult(1, 3);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Point> poles;
    UPoly den(Scalar(1));
    for (int k = 0; k < 3; ++k) {
      Point p = pt(root(rng));
      bool seen = false;
      for (const auto& q : poles) seen = seen || q == p;
      if (seen) continue;
      poles.push_back(p);
      den = den * UPoly::linear(p.value).pow(static_cast<unsigned>(mult(rng)));
    }
    std::vector<Scalar> nc;
    for (int k = 0; k < 6; ++k) nc.push_back(testing::random_rational(rng));
    RationalFunction f(UPoly(nc), den);
    Scalar total = f.residue(Point::infinity());
    for (const auto& p : poles) total += f.residue(p);
    CHECK(total.is_zero());
  }
}

TEST_CASE("cech complex matches the monomial count") {
  for (int a = -6; a <= 6; ++a) {
    auto h = homology_ranks(cech_complex(a));
    // H^0 is spanned by t^0..t^a, H^1 by t^{a+1}..t^{-1}.
    CHECK(h[0] == static_cast<std::size_t>(std::max(a + 1, 0)));
    CHECK(h[1] == static_cast<std::size_t>(std::max(-a - 1, 0)));
  }
  CHECK(homology_ranks(cech_complex(-3)) == std::map<int, std::size_t>{{0, 0}, {1, 2}});
}

TEST_CASE("section bases") {
  Divisor e = divisor({{pt(1), 2}, {pt(0), -1}, {Point::infinity(), 1}});
  auto basis = section_basis(e);
  CHECK(static_cast<int>(basis.size()) == h0(e));
  CHECK(basis.size() == 3);
  for (const auto& s : basis) CHECK(is_section(s, e));
  CHECK_FALSE(is_section(parse_rational("1/(t - 2)", nullptr), e));
  CHECK_FALSE(is_section(parse_rational("1", nullptr), e));
  CHECK(section_basis(divisor({{Point::infinity(), -1}})).empty());
  CHECK(h1(divisor({{Point::infinity(), -3}})) == 2);
}

TEST_CASE("fiber values in the divisor trivialization") {
  Divisor e = divisor({{Point::infinity(), 2}});
  RationalFunction s = parse_rational("3*t^2 + t - 5", nullptr);
  CHECK(fiber_value(s, e, Point::infinity()) == Scalar(3));
  CHECK(fiber_value(s, e, pt(0)) == Scalar(-5));
  Divisor e2 = divisor({{pt(0), 1}});
  CHECK(fiber_value(parse_rational("(2 + t)/t", nullptr), e2, pt(0)) == Scalar(2));
}

TEST_CASE("jets vanish exactly on sections of the smaller bundle") {
  Rng rng(12);
  Divisor e = divisor({{Point::infinity(), -1}});
  Divisor d = divisor({{pt(1), 2}, {pt(-2), 1}});
  CHECK(jet_count(d) == 3);
  auto big = section_basis(e + d);
  REQUIRE(big.size() == 3);
  for (int trial = 0; trial < 20; ++trial) {
    RationalFunction s;
    for (const auto& b : big) s = s + b * RationalFunction(testing::random_rational(rng));
    auto j = jets(s, e, d);
    bool all_zero = std::all_of(j.begin(), j.end(), [](const Scalar& x) { return x.is_zero(); });
    CHECK(all_zero == is_section(s, e));
  }
  // The restriction H^0(O(E+D)) -> jets is injective when H^0(O(E)) = 0.
  ScalarMatrix m(3, 3);
  for (std::size_t c = 0; c < 3; ++c) {
    auto j = jets(big[c], e, d);
    for (std::size_t r = 0; r < 3; ++r) m(r, c) = j[r];
  }
  CHECK(rank(m) == 3);
}
