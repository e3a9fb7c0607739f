#include <doctest.h>

#include <filesystem>

#include "mfc/error.hpp"
#include "mfc/io.hpp"
#include "mfc/parse.hpp"
#include "spin_fixtures.hpp"

using namespace mfc;

namespace {

std::string data(const std::string& name) { return std::string(MFC_TEST_DATA) + "/" + name; }

int parse_line_of(const std::string& text) {
  try {
    io::parse_document(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("problem files match the hand-built configurations") {
  SUBCASE("two-point") {
    auto doc = io::read_document(data("r2_two_point.spec"));
    REQUIRE(doc.has_curve);
    auto a = spin::fundamental_mf(doc.curve);
    auto b = spin::fundamental_mf(testing::r2_two_point());
    CHECK(a.mf == b.mf);
    CHECK(a.mf.potential.to_string() == "x1^2 + x2^2");
  }
  SUBCASE("enlarged D") {
    auto doc = io::read_document(data("r2_two_point_big_d.spec"));
    CHECK(spin::two_term_realization(doc.curve).a.size() == 3);
  }
  SUBCASE("narrow") {
    auto doc = io::read_document(data("narrow.spec"));
    auto r = spin::fundamental_mf(doc.curve);
    CHECK(r.mf == unit_mf(r.model.y_ring));
  }
  SUBCASE("cylinder pair") {
    auto disc = io::read_document(data("r2_cylinder_disc.spec"));
    auto glued = io::read_document(data("r2_cylinder_glued.spec"));
    REQUIRE(glued.curve.nodes.size() == 1);
    CHECK(glued.curve.nodes[0].first == 1);
    CHECK(glued.curve.nodes[0].second == 2);
    CHECK(spin::twisted_diagonal_glue(disc.curve, glued.curve).passed());
  }
  SUBCASE("default J is the exponential grading element") {
    auto doc = io::read_document(data("fermat5.spec"));
    REQUIRE(doc.j);
    CHECK(doc.j->matrix()(0, 0) == Scalar::zeta(doc.field));
    CHECK(doc.d == 5);
    REQUIRE(doc.group.size() == 1);
    CHECK(doc.group[0].first == "g");
  }
  SUBCASE("koszul and dg-scheme sections") {
    auto k = io::read_document(data("koszul_xy.spec"));
    REQUIRE(k.koszul);
    CHECK(k.koszul->first.size() == 2);
    auto f = io::read_document(data("fold_cubic.spec"));
    REQUIRE(f.scheme);
    REQUIRE(f.homotopy);
    auto mf = fold_to_mf(dgmf_from_homotopy(*f.scheme, *f.homotopy));
    CHECK(mf.potential == parse_poly("a^3", f.ring));
  }
}

TEST_CASE("parse errors carry line and column") {
  CHECK(parse_line_of("[potential]\nvariables = x\nW = x^2 +\n") == 3);
  CHECK(parse_line_of("[nonsense]\n") == 1);
  CHECK(parse_line_of("order = 3\n") == 1);
  CHECK(parse_line_of("[potential]\nvariables = x\n[curve]\ncomponent C\n  eta = 1/t\nmarking p C 0\n  gamma = K\n") == 7);
  CHECK(parse_line_of("[potential]\nvariables = x\n[curve]\ncomponent C\n  D = 1\n") == 4);
  try {
    io::parse_document("[potential]\nvariables = x, y\nW = x^2 + 3*w\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 13);
  }
}

TEST_CASE("semantic problems are preconditions, not parse errors") {
  CHECK_THROWS_AS(io::parse_document("[field]\norder = 4\n[potential]\nvariables = x\n[group]\ng = [[2]]\n"),
                  PreconditionError);
}

TEST_CASE("matrix-factorization files round trip") {
  auto ring = make_ring(CyclotomicField::make(4), {"x", "y"}, {1, 2});
  std::vector<MatrixFactorization> cases{
      koszul_mf({parse_poly("y^2 + z*x^4", ring), parse_poly("x^2", ring)}, {parse_poly("x", ring), parse_poly("y", ring)}),
      koszul_mf({parse_poly("1/3*x", ring)}, {parse_poly("-x", ring)}),
      unit_mf(ring),
      unit_mf(point_ring(nullptr)),
  };
  for (const auto& m : cases) {
    const std::string text = io::write_mf(m, {"convention test"});
    auto back = io::parse_mf(text);
    CHECK(back == m);
    CHECK(back.p0 == m.p0);
    CHECK(back.p1 == m.p1);
    CHECK_FALSE(back.defect());
    CHECK(io::write_mf(back, {"convention test"}) == text);
  }
  SUBCASE("tampered files are caught") {
    std::string text = io::write_mf(koszul_mf({parse_poly("x", ring)}, {parse_poly("x", ring)}));
    auto pos = text.find("delta1\n[x]");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 10, "delta1\n[y]");
    auto back = io::parse_mf(text);
    CHECK(back.defect());
    CHECK_THROWS_AS(io::parse_mf("matrix-factorization\nfield 4\n"), ParseError);
  }
}

TEST_CASE("atomic writes replace the target") {
  auto dir = std::filesystem::temp_directory_path() / "mfc_io_test";
  std::filesystem::create_directories(dir);
  auto path = dir / "out.txt";
  io::write_file_atomic(path, "one\n");
  io::write_file_atomic(path, "two\n");
  CHECK(io::read_file(path) == "two\n");
  CHECK_FALSE(std::filesystem::exists(dir / "out.txt.tmp"));
  std::filesystem::remove_all(dir);
}
