#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "qfs/error.hpp"
#include "qfs/infotheory.hpp"
#include "support.hpp"

using namespace qfs;
using qfs::data::DiscretizedDataset;

namespace {

// Builds a dataset from per-feature bin columns and labels.
DiscretizedDataset make(int B, const std::vector<std::vector<int>>& cols, const std::vector<int>& y) {
  const std::size_t N = y.size();
  std::vector<std::uint16_t> bins;
  for (const auto& c : cols)
    for (int b : c) bins.push_back(static_cast<std::uint16_t>(b));
  const int classes = *std::max_element(y.begin(), y.end()) + 1;
  return DiscretizedDataset(B, N, cols.size(), std::move(bins), y, classes, {});
}

}  // namespace

TEST(JointPmf, FeatureLabelCounts) {
  const auto d = make(2, {{1, 1, 2, 2}}, {0, 0, 1, 1});
  const auto p = info::joint_pmf_feature_label(d, 0);
  EXPECT_DOUBLE_EQ(p(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(p(1, 1), 0.5);
  EXPECT_EQ(p(0, 1), 0.0);
  EXPECT_EQ(p(1, 0), 0.0);
}

TEST(JointPmf, IdenticalSamplesFillOneCell) {
  const auto d = make(3, {{2, 2, 2}}, {0, 0, 0});
  const auto p = info::joint_pmf_feature_label(d, 0);
  EXPECT_EQ(p(1, 0), 1.0);
  EXPECT_EQ(p.sum(), 1.0);
}

TEST(JointPmf, ThirdsFromHandCount) {
  const auto d = make(2, {{1, 1, 2}}, {0, 1, 1});
  const auto p = info::joint_pmf_feature_label(d, 0);
  EXPECT_DOUBLE_EQ(p(0, 0), 1.0 / 3);
  EXPECT_DOUBLE_EQ(p(0, 1), 1.0 / 3);
  EXPECT_DOUBLE_EQ(p(1, 1), 1.0 / 3);
  EXPECT_EQ(p(1, 0), 0.0);
}

TEST(JointPmf, PairCounts) {
  const auto d = make(2, {{1, 2}, {2, 1}}, {0, 1});
  const auto p = info::joint_pmf_feature_pair(d, 0, 1);
  EXPECT_EQ(p(0, 1), 0.5);
  EXPECT_EQ(p(1, 0), 0.5);
  EXPECT_EQ(p(0, 0) + p(1, 1), 0.0);
}

TEST(JointPmf, CoBinnedFeaturesAreDiagonal) {
  const auto d = make(3, {{1, 2, 3, 3}, {1, 2, 3, 3}}, {0, 1, 0, 1});
  const auto p = info::joint_pmf_feature_pair(d, 0, 1);
  EXPECT_EQ(p - Eigen::MatrixXd(p.diagonal().asDiagonal()), Eigen::MatrixXd::Zero(3, 3));
}

TEST(JointPmf, IndependentBinsApproachProductOfMarginals) {
  const auto d = testing_support::random_discretized(200000, 2, 4, 2, 17);
  const auto p = info::joint_pmf_feature_pair(d, 0, 1);
  const Eigen::MatrixXd product = p.rowwise().sum() * p.colwise().sum();
  EXPECT_LT((p - product).cwiseAbs().maxCoeff(), 3e-3);
}

TEST(JointPmf, SumsToOneOnRandomData) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto d = testing_support::random_discretized(1 + s * 13, 3, 5, 3, s);
    EXPECT_NEAR(info::joint_pmf_feature_label(d, 1).sum(), 1.0, 1e-12);
    EXPECT_NEAR(info::joint_pmf_feature_pair(d, 0, 2).sum(), 1.0, 1e-12);
  }
}

TEST(JointPmf, Errors) {
  const auto d = make(2, {{1, 2}, {2, 1}}, {0, 1});
  EXPECT_THROW(info::joint_pmf_feature_label(d, 2), InputError);
  EXPECT_THROW(info::joint_pmf_feature_pair(d, 1, 1), InputError);
  EXPECT_THROW(info::joint_pmf_feature_pair(d, 0, 5), InputError);
}

TEST(Importance, IdenticalBalancedBinaryIsLn2) {
  const auto d = make(2, {{1, 2, 1, 2}}, {0, 1, 0, 1});
  EXPECT_NEAR(info::importance(d).values(0), std::log(2.0), 1e-15);
}

TEST(Importance, ConstantFeatureIsZero) {
  const auto d = make(4, {{3, 3, 3, 3, 3}}, {0, 1, 1, 0, 1});
  EXPECT_EQ(info::importance(d).values(0), 0.0);
}

TEST(Importance, SixSampleTableMatchesOracle) {
  const std::vector<int> f = {1, 1, 2, 2, 3, 3};
  const std::vector<int> y = {0, 1, 1, 1, 0, 2};
  const auto d = make(3, {f}, y);
  // Hand value: p(b,y) = 1/6 on six cells; marginals p_b = 1/3 each,
  // p_y = (1/3, 1/2, 1/6).
  const double hand = (1.0 / 6) * std::log((1.0 / 6) / (1.0 / 3 * 1.0 / 3)) +
                      (1.0 / 6) * std::log((1.0 / 6) / (1.0 / 3 * 1.0 / 2)) +
                      (2.0 / 6) * std::log((2.0 / 6) / (1.0 / 3 * 1.0 / 2)) +
                      (1.0 / 6) * std::log((1.0 / 6) / (1.0 / 3 * 1.0 / 3)) +
                      (1.0 / 6) * std::log((1.0 / 6) / (1.0 / 3 * 1.0 / 6));
  EXPECT_NEAR(oracle::direct_mi(f, y), hand, 1e-15);
  EXPECT_NEAR(info::importance(d).values(0), oracle::direct_mi(f, y), 1e-12);
}

TEST(Redundancy, DuplicatedBalancedColumnIsLn2) {
  const auto d = make(2, {{1, 2, 2, 1}, {1, 2, 2, 1}}, {0, 1, 0, 1});
  const auto R = info::redundancy(d);
  EXPECT_NEAR(R.values(0, 1), std::log(2.0), 1e-15);
  EXPECT_EQ(R.values(0, 0), 0.0);
}

TEST(Redundancy, AgainstConstantIsZero) {
  const auto d = make(3, {{1, 2, 3, 1}, {2, 2, 2, 2}}, {0, 1, 0, 1});
  EXPECT_EQ(info::redundancy(d).values(0, 1), 0.0);
}

TEST(Redundancy, ThreeFeatureToyMatchesOracle) {
  const std::vector<std::vector<int>> cols = {{1, 2, 2, 3, 1, 3, 2}, {2, 2, 1, 1, 2, 1, 2}, {1, 1, 1, 2, 2, 2, 3}};
  const auto d = make(3, cols, {0, 1, 0, 1, 0, 1, 1});
  const auto R = info::redundancy(d);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const double expect = i == j ? 0.0 : oracle::direct_mi(cols[i], cols[j]);
      EXPECT_NEAR(R.values(i, j), expect, 1e-12) << i << "," << j;
    }
}

TEST(Redundancy, SymmetricNonnegativeAndThreadIndependent) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto d = testing_support::random_discretized(150, 7, 5, 3, s);
    const auto R1 = info::redundancy(d, 1);
    const auto R4 = info::redundancy(d, 4);
    EXPECT_EQ(R1.values, R1.values.transpose());
    EXPECT_EQ(R1.values, R4.values);
    EXPECT_GE(R1.values.minCoeff(), 0.0);
    EXPECT_GE(info::importance(d).values.minCoeff(), 0.0);
  }
}

TEST(Importance, ShuffledLabelCarriesAlmostNoInformation) {
  const auto d = testing_support::random_discretized(100000, 1, 5, 2, 123);
  EXPECT_LT(info::importance(d).values(0), 0.02);
}

TEST(Importance, PermutationEquivariance) {
  const std::size_t N = 120, n = 5;
  const auto d = testing_support::random_discretized(N, n, 4, 2, 5);
  const std::vector<std::size_t> perm = {3, 0, 4, 1, 2};
  std::vector<std::uint16_t> bins;
  for (auto p : perm)
    for (std::size_t r = 0; r < N; ++r) bins.push_back(static_cast<std::uint16_t>(d.bin(r, p)));
  const DiscretizedDataset dp(4, N, n, bins, d.labels(), 2, {});
  const auto I = info::importance(d), Ip = info::importance(dp);
  const auto R = info::redundancy(d), Rp = info::redundancy(dp);
  for (std::size_t a = 0; a < n; ++a) {
    EXPECT_EQ(Ip.values(a), I.values(perm[a]));
    for (std::size_t b = 0; b < n; ++b) EXPECT_NEAR(Rp.values(a, b), R.values(perm[a], perm[b]), 1e-15);
  }
}
