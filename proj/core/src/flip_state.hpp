#pragma once

#include <cstddef>
#include <vector>

#include "qfs/qubo.hpp"

namespace qfs::solve::detail {

/// Row-major copy of Q plus the local fields h_i = sum_{j != i} Q_ij x_j of
/// the current assignment, giving O(1) flip deltas and O(n) flips.
class FlipState {
 public:
  FlipState(const qubo::QuboInstance& q, qubo::BitVector x) : n_(q.size()), q_(n_ * n_), x_(std::move(x)), h_(n_, 0.0) {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) q_[i * n_ + j] = q(i, j);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (j != i && x_[j]) h_[i] += q_[i * n_ + j];
    energy_ = qubo::energy(q, x_);
  }

  std::size_t size() const { return n_; }
  const qubo::BitVector& x() const { return x_; }
  /// Running energy; accumulates rounding, recompute with qubo::energy for reporting.
  double energy() const { return energy_; }

  /// Energy change of negating bit i.
  double delta(std::size_t i) const {
    const double d = q_[i * n_ + i] + 2.0 * h_[i];
    return x_[i] ? -d : d;
  }

  void flip(std::size_t i) {
    const double sign = x_[i] ? -1.0 : 1.0;
    energy_ += delta(i);
    x_[i] ^= 1u;
    const double* qi = q_.data() + i * n_;
    for (std::size_t j = 0; j < n_; ++j)
      if (j != i) h_[j] += sign * qi[j];
  }

 private:
  std::size_t n_;
  std::vector<double> q_;
  qubo::BitVector x_;
  std::vector<double> h_;
  double energy_ = 0.0;
};

}  // namespace qfs::solve::detail
