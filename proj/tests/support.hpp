#pragma once

// Random instance generators shared by unit and acceptance tests.

#include <cstdint>
#include <random>
#include <utility>

#include <Eigen/Core>

#include "qfs/data.hpp"
#include "qfs/infotheory.hpp"
#include "qfs/qubo.hpp"

namespace testing_support {

/// Nonnegative (I, R): entries uniform in [0, 1), R symmetric with zero diagonal.
inline std::pair<qfs::info::ImportanceVector, qfs::info::RedundancyMatrix> random_mi(
    std::size_t n, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto nn = static_cast<Eigen::Index>(n);
  qfs::info::ImportanceVector I{Eigen::VectorXd(nn)};
  qfs::info::RedundancyMatrix R{Eigen::MatrixXd::Zero(nn, nn)};
  for (Eigen::Index i = 0; i < nn; ++i) I.values(i) = u(eng);
  for (Eigen::Index i = 0; i < nn; ++i)
    for (Eigen::Index j = i + 1; j < nn; ++j) R.values(i, j) = R.values(j, i) = u(eng);
  return {std::move(I), std::move(R)};
}

/// Symmetric QUBO with entries uniform in [-1, 1).
inline qfs::qubo::QuboInstance random_qubo(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto nn = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd q(nn, nn);
  for (Eigen::Index i = 0; i < nn; ++i)
    for (Eigen::Index j = i; j < nn; ++j) q(i, j) = q(j, i) = u(eng);
  return qfs::qubo::QuboInstance(std::move(q));
}

/// Small random discretized dataset with B bins and c classes.
inline qfs::data::DiscretizedDataset random_discretized(std::size_t N, std::size_t n, int B, int c,
                                                        std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::uniform_int_distribution<int> bin(1, B);
  std::uniform_int_distribution<int> cls(0, c - 1);
  std::vector<std::uint16_t> bins(N * n);
  for (auto& b : bins) b = static_cast<std::uint16_t>(bin(eng));
  std::vector<int> labels(N);
  for (auto& y : labels) y = cls(eng);
  return qfs::data::DiscretizedDataset(B, N, n, std::move(bins), std::move(labels), c, {});
}

}  // namespace testing_support
