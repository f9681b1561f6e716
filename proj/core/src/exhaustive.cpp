#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "qfs/error.hpp"
#include "qfs/solve.hpp"

namespace qfs::solve {
namespace {

// Same summation order as qubo::energy, so results agree bitwise.
double mask_energy(const std::vector<double>& q, std::size_t n, std::uint64_t mask, double offset) {
  double e = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!((mask >> i) & 1u)) continue;
    double row = 0.0;
    const double* qi = q.data() + i * n;
    for (std::size_t j = 0; j < n; ++j)
      if ((mask >> j) & 1u) row += qi[j];
    e += row;
  }
  return e + offset;
}

BitVector decode(std::uint64_t mask, std::size_t n) {
  BitVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<std::uint8_t>((mask >> i) & 1u);
  return x;
}

// Lexicographic order on (x_0, x_1, ...) is integer order on the bit-reversed mask.
std::uint64_t lex_key(std::uint64_t mask, std::size_t n) {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < n; ++i) r |= ((mask >> i) & 1u) << (n - 1 - i);
  return r;
}

}  // namespace

ExhaustiveResult solve_exhaustive(const QuboInstance& q, std::size_t max_minimizers) {
  const std::size_t n = q.size();
  if (n > kMaxExhaustiveVars)
    throw GuardError("exhaustive search limited to " + std::to_string(kMaxExhaustiveVars) +
                     " variables, instance has " + std::to_string(n));
  max_minimizers = std::max<std::size_t>(max_minimizers, 1);

  std::vector<double> flat(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) flat[i * n + j] = q(i, j);
  double scale = std::abs(q.offset());
  for (double v : flat) scale += std::abs(v);
  constexpr double kTieTol = 1e-12;
  // Gray-code energies drift by rounding; anything within this band of the
  // running minimum is re-evaluated exactly.
  const double loose = 1e-9 * scale + 2 * kTieTol;
  constexpr std::uint64_t kReanchor = 1u << 12;

  std::vector<double> field(n, 0.0);  // sum_{j != i} Q_ij x_j
  std::uint64_t mask = 0;
  double approx = q.offset();
  double approx_min = std::numeric_limits<double>::infinity();

  struct Candidate {
    std::uint64_t mask;
    double energy;
  };
  std::vector<Candidate> cands;
  double exact_min = std::numeric_limits<double>::infinity();
  std::size_t overflow_count = 0;
  const std::size_t keep_limit = 4 * max_minimizers;

  auto prune = [&] {
    std::erase_if(cands, [&](const Candidate& c) { return c.energy > exact_min + kTieTol; });
  };
  auto consider = [&](std::uint64_t m) {
    const double e = mask_energy(flat, n, m, q.offset());
    if (e < exact_min - kTieTol) {
      exact_min = e;
      overflow_count = 0;
      prune();
    } else if (e > exact_min + kTieTol) {
      return;
    }
    exact_min = std::min(exact_min, e);
    if (cands.size() < keep_limit) {
      cands.push_back({m, e});
    } else {
      prune();
      if (cands.size() < keep_limit) {
        cands.push_back({m, e});
      } else {
        // Keep the lexicographically smallest; count the rest.
        auto worst = std::max_element(cands.begin(), cands.end(), [&](const auto& a, const auto& b) {
          return lex_key(a.mask, n) < lex_key(b.mask, n);
        });
        if (lex_key(m, n) < lex_key(worst->mask, n)) *worst = {m, e};
        ++overflow_count;
      }
    }
  };

  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t step = 0; step < total; ++step) {
    if (step > 0) {
      const auto i = static_cast<std::size_t>(std::countr_zero(step));
      const double* qi = flat.data() + i * n;
      const double d = qi[i] + 2.0 * field[i];
      const double sign = ((mask >> i) & 1u) ? -1.0 : 1.0;
      approx += sign * d;
      mask ^= std::uint64_t{1} << i;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) field[j] += sign * qi[j];
      if (step % kReanchor == 0) {
        approx = mask_energy(flat, n, mask, q.offset());
        for (std::size_t a = 0; a < n; ++a) {
          field[a] = 0.0;
          for (std::size_t b = 0; b < n; ++b)
            if (b != a && ((mask >> b) & 1u)) field[a] += flat[a * n + b];
        }
      }
    }
    if (approx < approx_min) approx_min = approx;
    if (approx <= approx_min + loose) consider(mask);
  }

  prune();
  std::sort(cands.begin(), cands.end(),
            [&](const auto& a, const auto& b) { return lex_key(a.mask, n) < lex_key(b.mask, n); });
  ExhaustiveResult out;
  out.energy = exact_min;
  out.minimizer_count = cands.size() + overflow_count;
  for (std::size_t k = 0; k < cands.size() && k < max_minimizers; ++k)
    out.minimizers.push_back(decode(cands[k].mask, n));
  out.minimizer_count = std::max(out.minimizer_count, out.minimizers.size());
  out.best = out.minimizers.front();
  return out;
}

}  // namespace qfs::solve
