#include <algorithm>
#include <numeric>

#include "qfs/selection.hpp"

namespace qfs::selection {
namespace {

std::string describe_trace(const std::vector<Probe>& trace) {
  std::string s;
  for (const auto& p : trace) {
    if (!s.empty()) s += ", ";
    s += "(" + std::to_string(p.alpha) + ", " + std::to_string(p.k) + ")";
  }
  return s;
}

std::size_t weight(const BitVector& x) {
  return static_cast<std::size_t>(std::count(x.begin(), x.end(), std::uint8_t{1}));
}

}  // namespace

UnreachableK::UnreachableK(std::size_t k_, std::vector<Probe> trace_, std::optional<Probe> below_,
                           std::optional<Probe> above_)
    : Error("no probe reached k = " + std::to_string(k_) + " before the alpha bracket collapsed; trace: " +
            describe_trace(trace_)),
      k(k_),
      trace(std::move(trace_)),
      below(below_),
      above(above_) {}

NonMonotoneTrace::NonMonotoneTrace(std::size_t k_, std::vector<Probe> trace_)
    : Error("selected weight decreased while alpha increased (searching k = " + std::to_string(k_) +
            "); retry with more shots or the exhaustive solver; trace: " + describe_trace(trace_)),
      k(k_),
      trace(std::move(trace_)) {}

qubo::QuboInstance probe_instance(const info::ImportanceVector& importance,
                                  const info::RedundancyMatrix& redundancy, double alpha,
                                  const SelectOptions& options) {
  const auto q = qubo::build(importance, redundancy, alpha);
  const double mu = qubo::resolve_mu(q, options.mu);
  return qubo::apply_epsilon_mu(q, importance, alpha, options.epsilon, mu);
}

ProbeResult solve_probe(const qubo::QuboInstance& q, const solve::SolverConfig& solver,
                        std::optional<std::size_t> prefer_weight) {
  std::vector<const BitVector*> candidates;
  solve::ExhaustiveResult exact;
  solve::SampleSet samples;
  if (solver.kind == solve::SolverKind::Exhaustive) {
    exact = solve::solve_exhaustive(q);
    for (const auto& m : exact.minimizers) candidates.push_back(&m);
  } else {
    samples = solve::run(q, solver);
    for (const auto* s : samples.best()) candidates.push_back(&s->x);
    std::sort(candidates.begin(), candidates.end(),
              [](const BitVector* a, const BitVector* b) { return solve::lex_less(*a, *b); });
  }
  const BitVector* chosen = candidates.front();
  if (prefer_weight) {
    const auto it = std::find_if(candidates.begin(), candidates.end(),
                                 [&](const BitVector* x) { return weight(*x) == *prefer_weight; });
    if (it != candidates.end()) chosen = *it;
  }
  return ProbeResult{*chosen, qubo::energy(q, *chosen), weight(*chosen)};
}

SelectionResult select_k(const info::ImportanceVector& importance,
                         const info::RedundancyMatrix& redundancy, std::size_t k,
                         const solve::SolverConfig& solver, const SelectOptions& options) {
  const auto n = static_cast<std::size_t>(importance.values.size());
  if (k > n) throw InputError("k = " + std::to_string(k) + " exceeds the feature count " + std::to_string(n));
  solver.validate();

  std::vector<Probe> trace;
  std::optional<Probe> below;
  std::optional<Probe> above;
  double a = 0.0;
  double b = 1.0;
  double alpha = 0.5;
  for (;;) {
    const auto q = probe_instance(importance, redundancy, alpha, options);
    const ProbeResult r = solve_probe(q, solver, k);
    const Probe p{alpha, r.weight};
    for (const auto& prev : trace) {
      if ((prev.alpha < alpha && prev.k > p.k) || (prev.alpha > alpha && prev.k < p.k)) {
        trace.push_back(p);
        throw NonMonotoneTrace(k, std::move(trace));
      }
    }
    trace.push_back(p);
    if (r.weight == k) {
      return SelectionResult{alpha, r.x, k, r.energy, std::move(trace), solve::to_string(solver.kind)};
    }
    if (r.weight > k) {
      b = alpha;
      above = p;
    } else {
      a = alpha;
      below = p;
    }
    if (b - a < options.min_width) throw UnreachableK(k, std::move(trace), below, above);
    alpha = (a + b) / 2.0;
  }
}

std::vector<SweepPoint> sweep_alpha(const info::ImportanceVector& importance,
                                    const info::RedundancyMatrix& redundancy,
                                    const std::vector<double>& grid,
                                    const solve::SolverConfig& solver,
                                    const SelectOptions& options) {
  solver.validate();
  std::vector<SweepPoint> out;
  out.reserve(grid.size());
  for (double alpha : grid) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw InputError("sweep grid values must lie in [0, 1]");
    const auto q = probe_instance(importance, redundancy, alpha, options);
    const ProbeResult r = solve_probe(q, solver);
    out.push_back({alpha, r.weight, r.energy});
  }
  return out;
}

std::vector<double> linear_grid(std::size_t count) {
  if (count == 0) return {};
  if (count == 1) return {0.0};
  std::vector<double> g(count);
  for (std::size_t i = 0; i < count; ++i)
    g[i] = static_cast<double>(i) / static_cast<double>(count - 1);
  return g;
}

}  // namespace qfs::selection
