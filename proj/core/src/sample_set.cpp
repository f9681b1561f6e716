#include <algorithm>
#include <cmath>
#include <map>

#include "qfs/error.hpp"
#include "qfs/solve.hpp"

namespace qfs::solve {

std::string to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::Exhaustive: return "exhaustive";
    case SolverKind::Annealing: return "annealing";
    case SolverKind::TabuDecomposition: return "tabu-decomposition";
  }
  return "unknown";
}

SolverKind parse_solver_kind(const std::string& name) {
  if (name == "exhaustive" || name == "brute-force") return SolverKind::Exhaustive;
  if (name == "annealing" || name == "sa") return SolverKind::Annealing;
  if (name == "tabu" || name == "tabu-decomposition" || name == "qbsolv") return SolverKind::TabuDecomposition;
  throw InputError("unknown solver '" + name + "' (expected exhaustive, annealing or tabu)");
}

void SolverConfig::validate() const {
  if (shots < 1) throw InputError("shots must be >= 1");
  if (annealing.sweeps < 1) throw InputError("annealing needs at least one sweep");
  if (annealing.t_start && !(*annealing.t_start > 0.0)) throw InputError("t_start must be positive");
  if (annealing.t_end && !(*annealing.t_end > 0.0)) throw InputError("t_end must be positive");
  if (tabu.subproblem_size < 1) throw InputError("subproblem size must be >= 1");
  if (tabu.tenure < 0) throw InputError("tabu tenure must be >= 0");
  if (tabu.stall_rounds < 1) throw InputError("stall rounds must be >= 1");
  if (tabu.exact_limit < 0 || tabu.exact_limit > static_cast<int>(kMaxExhaustiveVars))
    throw InputError("exact subproblem limit must lie in [0, 30]");
  if (tabu.iterations_per_var < 1) throw InputError("tabu iterations per variable must be >= 1");
}

bool lex_less(const BitVector& a, const BitVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::vector<const Sample*> SampleSet::best(double tol) const {
  std::vector<const Sample*> out;
  if (samples.empty()) return out;
  const double lo = samples.front().energy;
  for (const auto& s : samples)
    if (s.energy <= lo + tol) out.push_back(&s);
  return out;
}

SampleSet make_sample_set(const QuboInstance& q, const std::vector<BitVector>& shots) {
  if (shots.empty()) throw InputError("sample set needs at least one shot");
  std::map<BitVector, std::size_t> counts;
  for (const auto& x : shots) {
    if (x.size() != q.size()) throw InputError("shot has wrong number of bits");
    ++counts[x];
  }
  SampleSet ss;
  ss.shots = shots.size();
  ss.bit_counts.assign(q.size(), 0);
  for (const auto& [x, m] : counts) {
    const double e = qubo::energy(q, x);
    ss.samples.push_back(Sample{x, e, m});
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i]) ss.bit_counts[i] += m;
    ss.sorted_energies.insert(ss.sorted_energies.end(), m, e);
  }
  std::stable_sort(ss.samples.begin(), ss.samples.end(),
                   [](const Sample& a, const Sample& b) { return a.energy < b.energy; });
  std::sort(ss.sorted_energies.begin(), ss.sorted_energies.end());
  return ss;
}

SampleSet run(const QuboInstance& q, const SolverConfig& cfg) {
  cfg.validate();
  switch (cfg.kind) {
    case SolverKind::Exhaustive: {
      const auto r = solve_exhaustive(q);
      return make_sample_set(q, std::vector<BitVector>(static_cast<std::size_t>(cfg.shots), r.best));
    }
    case SolverKind::Annealing: return solve_annealing(q, cfg);
    case SolverKind::TabuDecomposition: return solve_tabu_decomposed(q, cfg);
  }
  throw InputError("unknown solver kind");
}

Summary summarize(const SampleSet& ss, std::optional<double> reference) {
  if (ss.samples.empty()) throw InputError("cannot summarize an empty sample set");
  Summary s;
  s.sorted_energies = ss.sorted_energies;
  s.bit_counts = ss.bit_counts;
  s.best_x = ss.samples.front().x;
  s.best_energy = ss.samples.front().energy;
  s.reference_energy = reference.value_or(s.best_energy);
  const double tol = 1e-9 * std::max(1.0, std::abs(s.reference_energy));
  std::size_t hit = 0;
  for (double e : ss.sorted_energies)
    if (std::abs(e - s.reference_energy) <= tol) ++hit;
  s.optimum_fraction = static_cast<double>(hit) / static_cast<double>(ss.shots);
  return s;
}

}  // namespace qfs::solve
