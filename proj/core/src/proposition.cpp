#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "qfs/selection.hpp"

namespace qfs::selection {
namespace {

// Q(x, alpha) = intercept + alpha * slope for a fixed assignment x.
struct Line {
  double intercept;
  double slope;
  std::size_t weight;
  double at(double alpha) const { return intercept + alpha * slope; }
};

std::vector<Line> all_lines(const info::ImportanceVector& importance,
                            const info::RedundancyMatrix& redundancy) {
  const auto n = static_cast<std::size_t>(importance.values.size());
  const auto& R = redundancy.values;
  std::vector<Line> lines;
  lines.reserve(std::size_t{1} << n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    double red = 0.0;
    double imp = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!((mask >> i) & 1u)) continue;
      imp += importance.values(static_cast<Eigen::Index>(i));
      for (std::size_t j = 0; j < n; ++j)
        if ((mask >> j) & 1u) red += R(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    lines.push_back({red, -red - imp, static_cast<std::size_t>(std::popcount(mask))});
  }
  return lines;
}

// Weights of all lines within `tol` of the lower envelope at alpha.
std::vector<bool> optimal_weights(const std::vector<Line>& lines, std::size_t n, double alpha,
                                  double tol) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& l : lines) best = std::min(best, l.at(alpha));
  std::vector<bool> w(n + 1, false);
  for (const auto& l : lines)
    if (l.at(alpha) <= best + tol) w[l.weight] = true;
  return w;
}

}  // namespace

PropositionReport verify_proposition1(const info::ImportanceVector& importance,
                                      const info::RedundancyMatrix& redundancy) {
  const auto n = static_cast<std::size_t>(importance.values.size());
  if (n > kMaxPropositionVars)
    throw GuardError("proposition check limited to " + std::to_string(kMaxPropositionVars) +
                     " features, got " + std::to_string(n));
  // Validates dimensions and builds nothing else.
  (void)qubo::build(importance, redundancy, 0.0);

  const auto lines = all_lines(importance, redundancy);
  double scale = 1.0;
  for (const auto& l : lines) scale = std::max({scale, std::abs(l.intercept), std::abs(l.slope)});
  const double slope_tol = 1e-12 * scale;

  // Walk the lower envelope from alpha = 0: the current line is the minimum
  // with the smallest slope, the next breakpoint the nearest crossing by a
  // line of smaller slope.
  PropositionReport report;
  report.breakpoints.push_back(0.0);
  double at = 0.0;
  std::size_t current = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& c = lines[current];
    const auto& l = lines[i];
    if (l.intercept < c.intercept || (l.intercept == c.intercept && l.slope < c.slope)) current = i;
  }
  for (;;) {
    const Line& cur = lines[current];
    double next = std::numeric_limits<double>::infinity();
    std::size_t next_line = current;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      const Line& l = lines[i];
      if (!(l.slope < cur.slope - slope_tol)) continue;
      double x = (l.intercept - cur.intercept) / (cur.slope - l.slope);
      x = std::max(x, at);
      if (x < next || (x == next && l.slope < lines[next_line].slope)) {
        next = x;
        next_line = i;
      }
    }
    if (!(next < 1.0) || next_line == current) break;
    if (next > at) report.breakpoints.push_back(next);
    at = next;
    current = next_line;
  }
  if (report.breakpoints.back() < 1.0) report.breakpoints.push_back(1.0);

  const double point_tol = 1e-9 * scale;
  const double interval_tol = 1e-12 * scale;
  report.witnesses.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k) report.witnesses[k].k = k;

  const auto& bp = report.breakpoints;
  for (std::size_t s = 0; s + 1 < bp.size(); ++s) {
    const double mid = (bp[s] + bp[s + 1]) / 2.0;
    const auto w = optimal_weights(lines, n, mid, interval_tol);
    for (std::size_t k = 0; k <= n; ++k) {
      auto& wit = report.witnesses[k];
      if (w[k] && !(wit.found && !wit.point)) {
        wit = Witness{k, true, false, mid, bp[s], bp[s + 1]};
      }
    }
  }
  for (double alpha : bp) {
    const auto w = optimal_weights(lines, n, alpha, point_tol);
    for (std::size_t k = 0; k <= n; ++k) {
      auto& wit = report.witnesses[k];
      if (w[k] && !wit.found) wit = Witness{k, true, true, alpha, alpha, alpha};
    }
  }
  report.holds = std::all_of(report.witnesses.begin(), report.witnesses.end(),
                             [](const Witness& w) { return w.found; });
  return report;
}

}  // namespace qfs::selection
