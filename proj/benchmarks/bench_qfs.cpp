#include <benchmark/benchmark.h>

#include "qfs/data.hpp"
#include "qfs/infotheory.hpp"
#include "qfs/qubo.hpp"
#include "qfs/rng.hpp"
#include "qfs/selection.hpp"
#include "qfs/solve.hpp"

namespace {

qfs::qubo::QuboInstance random_qubo(std::size_t n, std::uint64_t seed) {
  auto eng = qfs::make_stream(seed, 0);
  const auto nn = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd q(nn, nn);
  for (Eigen::Index i = 0; i < nn; ++i)
    for (Eigen::Index j = i; j < nn; ++j) q(i, j) = q(j, i) = 2.0 * qfs::uniform01(eng) - 1.0;
  return qfs::qubo::QuboInstance(std::move(q));
}

void BM_Exhaustive(benchmark::State& state) {
  const auto q = random_qubo(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(qfs::solve::solve_exhaustive(q));
  state.SetComplexityN(std::int64_t{1} << state.range(0));
}
BENCHMARK(BM_Exhaustive)->DenseRange(10, 20, 5)->Unit(benchmark::kMillisecond)->Complexity(benchmark::oN);

void BM_Annealing(benchmark::State& state) {
  const auto q = random_qubo(static_cast<std::size_t>(state.range(0)), 2);
  qfs::solve::SolverConfig cfg;
  cfg.kind = qfs::solve::SolverKind::Annealing;
  cfg.shots = 10;
  for (auto _ : state) benchmark::DoNotOptimize(qfs::solve::solve_annealing(q, cfg));
}
BENCHMARK(BM_Annealing)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_TabuDecomposed(benchmark::State& state) {
  const auto q = random_qubo(static_cast<std::size_t>(state.range(0)), 3);
  qfs::solve::SolverConfig cfg;
  cfg.kind = qfs::solve::SolverKind::TabuDecomposition;
  cfg.shots = 4;
  cfg.tabu.subproblem_size = 8;
  for (auto _ : state) benchmark::DoNotOptimize(qfs::solve::solve_tabu_decomposed(q, cfg));
}
BENCHMARK(BM_TabuDecomposed)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_Redundancy(benchmark::State& state) {
  const auto synth = qfs::data::gen_synth({static_cast<int>(state.range(0)), 4, 10000, 1});
  const auto d = qfs::data::discretize(synth.dataset, 20);
  for (auto _ : state) benchmark::DoNotOptimize(qfs::info::redundancy(d));
}
BENCHMARK(BM_Redundancy)->Arg(10)->Arg(34)->Unit(benchmark::kMillisecond);

void BM_SelectK(benchmark::State& state) {
  const auto synth = qfs::data::gen_synth({10, 4, 10000, 1});
  const auto d = qfs::data::discretize(synth.dataset, 20);
  const auto I = qfs::info::importance(d);
  const auto R = qfs::info::redundancy(d);
  for (auto _ : state) benchmark::DoNotOptimize(qfs::selection::select_k(I, R, 4, {}));
}
BENCHMARK(BM_SelectK)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
