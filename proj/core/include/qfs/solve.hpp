#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qfs/qubo.hpp"

namespace qfs::solve {

using qubo::BitVector;
using qubo::QuboInstance;

enum class SolverKind { Exhaustive, Annealing, TabuDecomposition };

std::string to_string(SolverKind kind);
/// Accepts "exhaustive", "annealing" (or "sa"), "tabu" (or "tabu-decomposition").
SolverKind parse_solver_kind(const std::string& name);

/// Geometric-schedule single-flip Metropolis annealing.
struct AnnealingParams {
  int sweeps = 1000;
  /// Defaults: T0 = max|Q_ij| * n, T_end = 1e-3 * min nonzero |Q_ij|.
  std::optional<double> t_start;
  std::optional<double> t_end;
};

/// Decomposition into clamped sub-QUBOs solved exactly (or by tabu search when large).
struct TabuParams {
  int subproblem_size = 20;
  int tenure = 10;
  int stall_rounds = 3;
  /// Subproblems up to this many variables are solved by enumeration.
  int exact_limit = 20;
  /// Iteration budget of each tabu search, scaled by the searched variable count.
  int iterations_per_var = 50;
};

struct SolverConfig {
  SolverKind kind = SolverKind::Exhaustive;
  int shots = 1;  // restarts for the tabu solver
  std::uint64_t seed = 0;
  unsigned threads = 1;
  AnnealingParams annealing;
  TabuParams tabu;

  void validate() const;
};

struct Sample {
  BitVector x;
  double energy = 0.0;
  std::size_t multiplicity = 0;
};

/// Multi-shot solver output. Distinct states sorted by (energy, lexicographic x).
struct SampleSet {
  std::vector<Sample> samples;
  std::vector<double> sorted_energies;  // one per shot, nondecreasing
  std::vector<std::size_t> bit_counts;  // shots with bit i = 1
  std::size_t shots = 0;

  /// States whose energy is within `tol` of the lowest sampled energy, in sample order.
  std::vector<const Sample*> best(double tol = 1e-12) const;
};

/// Aggregates per-shot final states; energies are recomputed with qubo::energy.
SampleSet make_sample_set(const QuboInstance& q, const std::vector<BitVector>& shots);

/// Lexicographic order on assignments: the first differing position decides, 0 < 1.
bool lex_less(const BitVector& a, const BitVector& b);

inline constexpr std::size_t kMaxExhaustiveVars = 30;

struct ExhaustiveResult {
  BitVector best;                  // lexicographically smallest minimizer
  double energy = 0.0;
  std::vector<BitVector> minimizers;  // all within 1e-12 of the minimum, lexicographic order
  std::size_t minimizer_count = 0;    // may exceed minimizers.size() when truncated
};

/// Enumerates all 2^n assignments (n <= 30). At most `max_minimizers` are listed.
ExhaustiveResult solve_exhaustive(const QuboInstance& q, std::size_t max_minimizers = 1u << 16);

SampleSet solve_annealing(const QuboInstance& q, const SolverConfig& cfg);

SampleSet solve_tabu_decomposed(const QuboInstance& q, const SolverConfig& cfg);

/// Single-flip tabu search from `start`; returns the best assignment seen.
BitVector tabu_search(const QuboInstance& q, BitVector start, int tenure, std::size_t iterations);

/// One decomposition run from `start`: rounds of impact-ordered clamped
/// subproblems until `stall_rounds` rounds pass without improvement.
BitVector decompose_from(const QuboInstance& q, BitVector start, const TabuParams& params);

/// Dispatch on cfg.kind. The exhaustive solver contributes its canonical
/// minimizer once per shot.
SampleSet run(const QuboInstance& q, const SolverConfig& cfg);

/// Energy profile and per-bit statistics of a sample set.
struct Summary {
  std::vector<double> sorted_energies;
  std::vector<std::size_t> bit_counts;
  BitVector best_x;
  double best_energy = 0.0;
  double reference_energy = 0.0;
  double optimum_fraction = 0.0;  // shots within tolerance of the reference
};

/// `reference` defaults to the best sampled energy. A shot attains the
/// reference when |E - ref| <= 1e-9 * max(1, |ref|).
Summary summarize(const SampleSet& ss, std::optional<double> reference = std::nullopt);

}  // namespace qfs::solve
