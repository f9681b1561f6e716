#include <algorithm>
#include <cmath>
#include <numeric>

#include "flip_state.hpp"
#include "qfs/parallel.hpp"
#include "qfs/rng.hpp"
#include "qfs/solve.hpp"

namespace qfs::solve {
namespace {

bool improves(double candidate, double incumbent) {
  return candidate < incumbent - 1e-12 * std::max(1.0, std::abs(incumbent));
}

}  // namespace

BitVector tabu_search(const QuboInstance& q, BitVector start, int tenure, std::size_t iterations) {
  const std::size_t n = q.size();
  detail::FlipState state(q, std::move(start));
  BitVector best = state.x();
  double best_energy = state.energy();
  // At least one move must stay admissible.
  const std::size_t eff_tenure = std::min<std::size_t>(static_cast<std::size_t>(std::max(tenure, 0)), n - 1);
  std::vector<std::size_t> tabu_until(n, 0);

  for (std::size_t it = 1; it <= iterations; ++it) {
    std::size_t pick = n;
    double pick_delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = state.delta(i);
      const bool admissible = tabu_until[i] < it || improves(state.energy() + d, best_energy);
      if (admissible && (pick == n || d < pick_delta)) {
        pick = i;
        pick_delta = d;
      }
    }
    if (pick == n) break;
    state.flip(pick);
    tabu_until[pick] = it + eff_tenure;
    if (improves(state.energy(), best_energy)) {
      best = state.x();
      best_energy = state.energy();
    }
  }
  return best;
}

BitVector decompose_from(const QuboInstance& q, BitVector start, const TabuParams& params) {
  const std::size_t n = q.size();
  const auto s = std::min<std::size_t>(static_cast<std::size_t>(params.subproblem_size), n);
  BitVector x = std::move(start);
  double e = qubo::energy(q, x);

  int stall = 0;
  while (stall < params.stall_rounds) {
    bool improved = false;
    // Impact: energy increase when negating each bit of the current solution.
    std::vector<double> impact(n);
    {
      const detail::FlipState state(q, x);
      for (std::size_t i = 0; i < n; ++i) impact[i] = state.delta(i);
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return impact[a] > impact[b]; });

    for (std::size_t begin = 0; begin < n; begin += s) {
      std::vector<std::size_t> free(order.begin() + static_cast<long>(begin),
                                    order.begin() + static_cast<long>(std::min(begin + s, n)));
      std::sort(free.begin(), free.end());
      const QuboInstance sub = qubo::clamp(q, free, x);
      BitVector y(free.size());
      for (std::size_t a = 0; a < free.size(); ++a) y[a] = x[free[a]];
      if (free.size() <= static_cast<std::size_t>(params.exact_limit)) {
        y = solve_exhaustive(sub, 1).best;
      } else {
        y = tabu_search(sub, std::move(y), params.tenure,
                        static_cast<std::size_t>(params.iterations_per_var) * free.size());
      }
      BitVector candidate = x;
      for (std::size_t a = 0; a < free.size(); ++a) candidate[free[a]] = y[a];
      const double ce = qubo::energy(q, candidate);
      if (improves(ce, e)) {
        x = std::move(candidate);
        e = ce;
        improved = true;
      }
    }
    stall = improved ? 0 : stall + 1;
  }
  return x;
}

SampleSet solve_tabu_decomposed(const QuboInstance& q, const SolverConfig& cfg) {
  cfg.validate();
  const std::size_t n = q.size();
  const auto restarts = static_cast<std::size_t>(cfg.shots);
  std::vector<BitVector> finals(restarts);
  parallel_for(restarts, cfg.threads, [&](std::size_t r) {
    Engine eng = make_stream(cfg.seed, r);
    BitVector x(n);
    for (auto& b : x) b = static_cast<std::uint8_t>(eng() >> 63);
    x = tabu_search(q, std::move(x), cfg.tabu.tenure,
                    static_cast<std::size_t>(cfg.tabu.iterations_per_var) * n);
    finals[r] = decompose_from(q, std::move(x), cfg.tabu);
  });
  return make_sample_set(q, finals);
}

}  // namespace qfs::solve
