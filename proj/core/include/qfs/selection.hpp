#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qfs/error.hpp"
#include "qfs/infotheory.hpp"
#include "qfs/qubo.hpp"
#include "qfs/solve.hpp"

namespace qfs::selection {

using qubo::BitVector;

/// One evaluation of the search: the weight of the chosen minimizer at alpha.
struct Probe {
  double alpha = 0.0;
  std::size_t k = 0;
};

struct SelectOptions {
  double epsilon = 1e-8;
  qubo::MuPolicy mu = qubo::MuPolicy::max_entry();
  /// The search gives up once the bracket is narrower than this.
  double min_width = 0x1.0p-32;
};

struct SelectionResult {
  double alpha_star = 0.0;
  BitVector x_star;
  std::size_t k = 0;
  double energy = 0.0;
  std::vector<Probe> trace;
  std::string solver_kind;
};

/// The bracket collapsed without any probe returning weight k.
class UnreachableK : public Error {
 public:
  UnreachableK(std::size_t k, std::vector<Probe> trace, std::optional<Probe> below,
               std::optional<Probe> above);
  std::size_t k;
  std::vector<Probe> trace;
  std::optional<Probe> below;  // last probe with weight < k
  std::optional<Probe> above;  // last probe with weight > k
};

/// Selected weight decreased while alpha increased; only possible with a heuristic solver.
class NonMonotoneTrace : public Error {
 public:
  NonMonotoneTrace(std::size_t k, std::vector<Probe> trace);
  std::size_t k;
  std::vector<Probe> trace;
};

/// Q(alpha) with the epsilon/mu substitution and mu resolved under `options.mu`.
qubo::QuboInstance probe_instance(const info::ImportanceVector& importance,
                                  const info::RedundancyMatrix& redundancy, double alpha,
                                  const SelectOptions& options);

struct ProbeResult {
  BitVector x;
  double energy = 0.0;
  std::size_t weight = 0;
};

/// Solves `q`. Among all minimizers (exhaustive) or best-energy samples
/// (heuristic) a state of weight `prefer_weight` wins; otherwise the
/// lexicographically smallest does.
ProbeResult solve_probe(const qubo::QuboInstance& q, const solve::SolverConfig& solver,
                        std::optional<std::size_t> prefer_weight = std::nullopt);

/// Binary search over alpha for a minimizer with exactly k selected features.
SelectionResult select_k(const info::ImportanceVector& importance,
                         const info::RedundancyMatrix& redundancy, std::size_t k,
                         const solve::SolverConfig& solver, const SelectOptions& options = {});

struct SweepPoint {
  double alpha = 0.0;
  std::size_t k = 0;
  double energy = 0.0;
};

/// Canonical-minimizer weight and energy at each alpha of `grid`.
std::vector<SweepPoint> sweep_alpha(const info::ImportanceVector& importance,
                                    const info::RedundancyMatrix& redundancy,
                                    const std::vector<double>& grid,
                                    const solve::SolverConfig& solver,
                                    const SelectOptions& options = {});

/// `count` evenly spaced points from 0 to 1 inclusive.
std::vector<double> linear_grid(std::size_t count);

inline constexpr std::size_t kMaxPropositionVars = 12;

struct Witness {
  std::size_t k = 0;
  bool found = false;
  bool point = false;  // attained only at a crossing, not on an open interval
  double alpha = 0.0;  // representative: interval midpoint or the crossing itself
  double lo = 0.0;
  double hi = 0.0;
};

struct PropositionReport {
  bool holds = false;
  std::vector<Witness> witnesses;  // one per k = 0..n
  std::vector<double> breakpoints; // crossings of the lower envelope, with 0 and 1
};

/// Checks that every weight k in 0..n is attained by a global minimizer of the
/// plain Q(alpha) for some alpha in [0, 1], by tracing the lower envelope of the
/// 2^n lines alpha -> Q(x, alpha). Requires n <= 12.
PropositionReport verify_proposition1(const info::ImportanceVector& importance,
                                      const info::RedundancyMatrix& redundancy);

}  // namespace qfs::selection
