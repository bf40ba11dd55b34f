#include <benchmark/benchmark.h>

#include "comlim/families.hpp"
#include "comlim/oracle.hpp"
#include "comlim/plausibility.hpp"

using namespace comlim;

namespace {

const GameSpec& spec08() {
  static const GameSpec spec = make_duopoly({0.8, 0.0});
  return spec;
}

const GameSpec& spec12() {
  static const GameSpec spec = make_duopoly({1.2, 0.0});
  return spec;
}

const OracleContext& ctx08() {
  static const OracleContext ctx = [] {
    std::vector<double> hints = representative_points(cournot_set(spec08()));
    return OracleContext::build(spec08(),
                                Grid::build(spec08().leader_space, 201, hints));
  }();
  return ctx;
}

void BM_BestResponse(benchmark::State& state) {
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(best_response_follower(spec08(), x));
    x = x < 1.5 ? x + 1e-3 : 0.1;
  }
}
BENCHMARK(BM_BestResponse);

void BM_Gamma(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gamma_action(spec08(), x, 5.0 / 11));
    x = x < 0.44 ? x + 1e-3 : 0.0;
  }
}
BENCHMARK(BM_Gamma);

void BM_CournotSet(benchmark::State& state) {
  GameSpec spec = spec12();
  spec.tol.grid_n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cournot_set(spec));
  }
}
BENCHMARK(BM_CournotSet)->Arg(501)->Arg(2001);

void BM_SimplyPlausibleSet(benchmark::State& state) {
  GameSpec spec = spec12();
  spec.tol.grid_n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(simply_plausible_set(spec));
  }
}
BENCHMARK(BM_SimplyPlausibleSet)->Arg(501)->Arg(2001);

void BM_SpeOutcomesCutoff(benchmark::State& state) {
  const OracleContext& ctx = ctx08();
  FiniteCst cst;
  cst.elements.push_back(IntervalUnion::interval(0.0, 1.0, true, false));
  cst.elements.push_back(IntervalUnion::interval(1.0, ctx.grid.points.back()));
  for (auto _ : state) {
    benchmark::DoNotOptimize(spe_outcomes(ctx, cst));
  }
}
BENCHMARK(BM_SpeOutcomesCutoff);

void BM_CertifyIntervalCover(benchmark::State& state) {
  const OracleContext& ctx = ctx08();
  const CstFamily fams[] = {CstFamily::IntervalPlusComplement};
  for (auto _ : state) {
    benchmark::DoNotOptimize(certify(ctx, 1.0, fams));
  }
}
BENCHMARK(BM_CertifyIntervalCover);

}  // namespace

BENCHMARK_MAIN();
