#include <algorithm>
#include <cmath>
#include <limits>

#include "flip_state.hpp"
#include "qfs/parallel.hpp"
#include "qfs/rng.hpp"
#include "qfs/solve.hpp"

namespace qfs::solve {
namespace {

struct Schedule {
  double t_start;
  double t_end;
};

Schedule default_schedule(const QuboInstance& q, const AnnealingParams& p) {
  const auto abs = q.matrix().cwiseAbs();
  const double max_abs = abs.maxCoeff();
  double min_nonzero = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < abs.rows(); ++i)
    for (Eigen::Index j = 0; j < abs.cols(); ++j)
      if (abs(i, j) > 0.0) min_nonzero = std::min(min_nonzero, abs(i, j));
  double t0 = max_abs * static_cast<double>(q.size());
  double t1 = 1e-3 * min_nonzero;
  if (!(max_abs > 0.0)) t0 = t1 = 1.0;
  t0 = p.t_start.value_or(t0);
  t1 = std::min(p.t_end.value_or(t1), t0);
  return {t0, t1};
}

}  // namespace

SampleSet solve_annealing(const QuboInstance& q, const SolverConfig& cfg) {
  cfg.validate();
  const std::size_t n = q.size();
  const auto shots = static_cast<std::size_t>(cfg.shots);
  const int sweeps = cfg.annealing.sweeps;
  const Schedule sched = default_schedule(q, cfg.annealing);
  const double ratio =
      sweeps > 1 ? std::pow(sched.t_end / sched.t_start, 1.0 / static_cast<double>(sweeps - 1)) : 1.0;

  std::vector<BitVector> finals(shots);
  parallel_for(shots, cfg.threads, [&](std::size_t shot) {
    Engine eng = make_stream(cfg.seed, shot);
    BitVector x(n);
    for (auto& b : x) b = static_cast<std::uint8_t>(eng() >> 63);
    detail::FlipState state(q, std::move(x));
    double t = sweeps > 1 ? sched.t_start : sched.t_end;
    for (int s = 0; s < sweeps; ++s) {
      for (std::size_t i = 0; i < n; ++i) {
        const double d = state.delta(i);
        if (d <= 0.0 || uniform01(eng) < std::exp(-d / t)) state.flip(i);
      }
      t *= ratio;
    }
    finals[shot] = state.x();
  });
  return make_sample_set(q, finals);
}

}  // namespace qfs::solve
