#include <benchmark/benchmark.h>

#include "mfc/dgmf.hpp"
#include "mfc/parse.hpp"
#include "mfc/spin.hpp"
#include "spin_fixtures.hpp"

using namespace mfc;

namespace {

std::vector<Poly> polys(const RingPtr& r, std::initializer_list<const char*> texts) {
  std::vector<Poly> out;
  for (const char* t : texts) out.push_back(parse_poly(t, r));
  return out;
}

void BM_KoszulMF(benchmark::State& state) {
  auto r = make_ring(nullptr, {"x", "y", "w"});
  auto alpha = polys(r, {"y^2 + w", "x^3 - y", "w^2*x"});
  auto beta = polys(r, {"x", "y^2", "w - x*y"});
  const auto n = static_cast<std::size_t>(state.range(0));
  alpha.resize(n);
  beta.resize(n);
  for (auto _ : state) benchmark::DoNotOptimize(koszul_mf(alpha, beta, std::vector<int>(n, 0)));
}
BENCHMARK(BM_KoszulMF)->DenseRange(1, 3);

void BM_FoldDerivedZeroLocus(benchmark::State& state) {
  auto r = make_ring(nullptr, {"x", "y", "w"});
  auto alpha = polys(r, {"y^2 + w", "x^3 - y", "w^2*x"});
  auto beta = polys(r, {"x", "y^2", "w - x*y"});
  auto x = derived_zero_locus(beta, r, {0, 0, 0});
  DgFunction f(r, 3);
  for (std::size_t k = 0; k < 3; ++k) f.add_term({k}, alpha[k]);
  for (auto _ : state) benchmark::DoNotOptimize(fold_to_mf(dgmf_from_homotopy(x, f)));
}
BENCHMARK(BM_FoldDerivedZeroLocus);

void BM_NullhomotopySolve(benchmark::State& state) {
  auto r = make_ring(nullptr, {"x"});
  auto m = koszul_mf(polys(r, {"x^4"}), polys(r, {"x"}));
  auto id = PolyMatrix::identity(r, 2);
  const auto bound = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(nullhomotopy_solve(m, id, bound));
}
BENCHMARK(BM_NullhomotopySolve)->DenseRange(0, 4, 2);

void BM_FundamentalMF(benchmark::State& state) {
  auto spec = testing::r2_two_point(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(spin::fundamental_mf(spec));
}
BENCHMARK(BM_FundamentalMF)->DenseRange(0, 3);

void BM_TwistedDiagonalGlue(benchmark::State& state) {
  auto disc = testing::r2_cylinder_pair(false);
  auto glued = testing::r2_cylinder_pair(true);
  for (auto _ : state) benchmark::DoNotOptimize(spin::twisted_diagonal_glue(disc, glued));
}
BENCHMARK(BM_TwistedDiagonalGlue);

}  // namespace

BENCHMARK_MAIN();
