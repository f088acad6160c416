#include <benchmark/benchmark.h>

#include "hst/countable_thermo.hpp"
#include "hst/expansion.hpp"
#include "hst/inducing.hpp"
#include "hst/measures.hpp"
#include "hst/potentials.hpp"
#include "hst/symbolic.hpp"

namespace {

using namespace hst;
const maps::MapParams kParams = maps::MapParams::standard();

void BM_EnumerateAdmissible(benchmark::State& s) {
  const int n = static_cast<int>(s.range(0));
  for (auto _ : s) benchmark::DoNotOptimize(symbolic::enumerate_admissible(n));
  s.SetItemsProcessed(s.iterations() * static_cast<long>(symbolic::count_admissible(n)));
}
BENCHMARK(BM_EnumerateAdmissible)->Arg(12)->Arg(16)->Arg(20);

void BM_PointFromItinerary(benchmark::State& s) {
  const auto w = inducing::random_admissible(80, 3, false, false);
  const symbolic::TwoSidedWindow win{w.substr(0, 40), w.substr(40)};
  for (auto _ : s) benchmark::DoNotOptimize(symbolic::point_from_itinerary(win, kParams));
}
BENCHMARK(BM_PointFromItinerary);

void BM_MarkovEquilibrium(benchmark::State& s) {
  const auto phi = potentials::central_potential(kParams, 0.5);
  const int L = static_cast<int>(s.range(0));
  for (auto _ : s) benchmark::DoNotOptimize(measures::markov_equilibrium(phi, L, kParams));
}
BENCHMARK(BM_MarkovEquilibrium)->Arg(6)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_BuildInducedTable(benchmark::State& s) {
  const auto phi = potentials::AdmissibleFamily::make(0.84, 0.0, -1.0).at(1.0);
  const int K = static_cast<int>(s.range(0));
  for (auto _ : s) benchmark::DoNotOptimize(inducing::build_induced_table(phi, 0.4, K, 12, kParams, 1));
}
BENCHMARK(BM_BuildInducedTable)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);

void BM_GibbsApprox(benchmark::State& s) {
  const auto table = inducing::build_induced_table(potentials::central_potential(kParams, 1.0), 0.4, 14, 12, kParams, 1);
  for (auto _ : s) benchmark::DoNotOptimize(thermo::gibbs_approx(table, 14));
}
BENCHMARK(BM_GibbsApprox);

void BM_PressureCurve(benchmark::State& s) {
  std::vector<double> grid;
  for (int i = 0; i < 31; ++i) grid.push_back(-1.0 + 3.0 * i / 30);
  for (auto _ : s) benchmark::DoNotOptimize(expansion::pressure_curve(grid, 8, kParams, 1));
}
BENCHMARK(BM_PressureCurve)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
