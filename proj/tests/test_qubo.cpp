#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "qfs/error.hpp"
#include "qfs/qubo.hpp"
#include "support.hpp"

using namespace qfs;
using qubo::QuboInstance;

namespace {

info::ImportanceVector imp(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return {out};
}

info::RedundancyMatrix uniform_r(Eigen::Index n, double off) {
  Eigen::MatrixXd r = Eigen::MatrixXd::Constant(n, n, off);
  r.diagonal().setZero();
  return {r};
}

Eigen::MatrixXd mat2(double a, double b, double c, double d) {
  Eigen::MatrixXd m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST(Build, HandExample) {
  const auto q = qubo::build(imp({1, 2}), uniform_r(2, 0.5), 0.5);
  EXPECT_EQ(q.matrix(), mat2(-0.5, 0.25, 0.25, -1.0));
  ASSERT_TRUE(q.provenance());
  EXPECT_EQ(q.provenance()->alpha, 0.5);
}

TEST(Build, Endpoints) {
  const auto [I, R] = testing_support::random_mi(6, 3);
  const auto q1 = qubo::build(I, R, 1.0);
  EXPECT_EQ(q1.matrix(), Eigen::MatrixXd(Eigen::VectorXd(-I.values).asDiagonal()));
  EXPECT_EQ(qubo::build(I, R, 0.0).matrix(), R.values);
}

TEST(Build, Errors) {
  EXPECT_THROW(qubo::build(imp({1, 2}), uniform_r(3, 0.1), 0.5), InputError);
  EXPECT_THROW(qubo::build(imp({1, 2}), uniform_r(2, 0.1), 1.5), InputError);
  EXPECT_THROW(qubo::build(imp({1, 2}), uniform_r(2, 0.1), -0.1), InputError);
}

TEST(Instance, RejectsAsymmetricAndNonFinite) {
  EXPECT_THROW(QuboInstance(mat2(0, 1, 2, 0)), InputError);
  EXPECT_THROW(QuboInstance(mat2(NAN, 0, 0, 0)), InputError);
  EXPECT_THROW(QuboInstance(Eigen::MatrixXd(2, 3)), InputError);
  EXPECT_THROW(QuboInstance(Eigen::MatrixXd(0, 0)), InputError);
}

TEST(EpsilonMu, HandExample) {
  const auto I = imp({0, 1});
  const auto q = qubo::apply_epsilon_mu(qubo::build(I, uniform_r(2, 0.3), 0.5), I, 0.5, 1e-8, 2.0);
  EXPECT_EQ(q(0, 0), 2.0);
  EXPECT_EQ(q(1, 1), -0.5);
  EXPECT_EQ(q(0, 1), 0.15);
  EXPECT_EQ(q.provenance()->mu, 2.0);
  EXPECT_EQ(q.provenance()->epsilon, 1e-8);
}

TEST(EpsilonMu, ZeroEpsilonChangesNothing) {
  const auto [I, R] = testing_support::random_mi(5, 1);
  const auto q = qubo::build(I, R, 0.0);
  EXPECT_EQ(qubo::apply_epsilon_mu(q, I, 0.0, 0.0, 3.0).matrix(), q.matrix());
}

TEST(EpsilonMu, AlphaZeroReplacesEveryDiagonal) {
  const auto [I, R] = testing_support::random_mi(5, 2);
  const auto q = qubo::apply_epsilon_mu(qubo::build(I, R, 0.0), I, 0.0, 1e-8, 3.0);
  EXPECT_EQ(q.matrix().diagonal(), Eigen::VectorXd::Constant(5, 3.0));
}

TEST(EpsilonMu, RejectsBadParameters) {
  const auto I = imp({1, 1});
  const auto q = qubo::build(I, uniform_r(2, 0.1), 0.5);
  EXPECT_THROW(qubo::apply_epsilon_mu(q, I, 0.5, 1e-8, 0.0), InputError);
  EXPECT_THROW(qubo::apply_epsilon_mu(q, I, 0.5, -1.0, 1.0), InputError);
}

TEST(ResolveMu, MaxEntryAndFallbacks) {
  EXPECT_EQ(qubo::resolve_mu(QuboInstance(mat2(-1, 0.25, 0.25, -2)), qubo::MuPolicy::max_entry()), 0.25);
  EXPECT_EQ(qubo::resolve_mu(QuboInstance(mat2(-1, 0, 0, -2)), qubo::MuPolicy::max_entry()), 2.0);
  EXPECT_EQ(qubo::resolve_mu(QuboInstance(Eigen::MatrixXd::Zero(2, 2)), qubo::MuPolicy::max_entry()), 1.0);
  EXPECT_EQ(qubo::resolve_mu(QuboInstance(mat2(-1, 0, 0, -2)), qubo::MuPolicy::fixed(7)), 7.0);
}

TEST(Energy, Examples) {
  const QuboInstance q(mat2(-0.5, 0.25, 0.25, -1.0));
  const std::vector<std::uint8_t> ones = {1, 1}, zeros = {0, 0}, e0 = {1, 0}, e1 = {0, 1};
  EXPECT_EQ(qubo::energy(q, ones), -1.0);
  EXPECT_EQ(qubo::energy(q, zeros), 0.0);
  EXPECT_EQ(qubo::energy(q, e0), -0.5);
  EXPECT_EQ(qubo::energy(q, e1), -1.0);
  const std::vector<std::uint8_t> wrong = {1};
  EXPECT_THROW(qubo::energy(q, wrong), InputError);
}

TEST(Energy, MatchesOracleWithOffset) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto base = testing_support::random_qubo(7, s);
    const QuboInstance q(base.matrix(), 0.75);
    for (std::uint64_t m = 0; m < 128; ++m) {
      const auto x = oracle::bits(m, 7);
      EXPECT_NEAR(qubo::energy(q, x), oracle::qubo_energy(q.matrix(), x, 0.75), 1e-12);
    }
  }
}

TEST(Penalty, SingleVariable) {
  const auto q = qubo::build_penalty(imp({0}), uniform_r(1, 0), 0.5, 0, 1.0);
  EXPECT_EQ(q(0, 0), 1.0);
  EXPECT_EQ(q.offset(), 0.0);
  const std::vector<std::uint8_t> x0 = {0}, x1 = {1};
  EXPECT_EQ(qubo::energy(q, x0), 0.0);
  EXPECT_EQ(qubo::energy(q, x1), 1.0);
}

TEST(Penalty, OneHotMinima) {
  const auto q = qubo::build_penalty(imp({0, 0}), uniform_r(2, 0), 0.5, 1, 1.0);
  const auto bf = oracle::brute_force(q.matrix(), q.offset(), 1e-12);
  EXPECT_EQ(bf.argmin, (std::vector<std::uint64_t>{1, 2}));
  EXPECT_EQ(bf.min_energy, 0.0);
}

TEST(Penalty, ReproducesSquaredDeviation) {
  const auto zeros = imp({0, 0, 0, 0, 0});
  for (int k = 0; k <= 5; ++k) {
    const auto q = qubo::build_penalty(zeros, uniform_r(5, 0), 0.3, k, 2.5);
    for (std::uint64_t m = 0; m < 32; ++m) {
      const auto x = oracle::bits(m, 5);
      const double w = __builtin_popcountll(m);
      EXPECT_NEAR(qubo::energy(q, x), 2.5 * (w - k) * (w - k), 1e-12);
    }
  }
}

TEST(Penalty, LargeLambdaForcesWeight) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const std::size_t n = 4 + s % 5;
    const auto [I, R] = testing_support::random_mi(n, s);
    const int k = static_cast<int>(s % (n + 1));
    const auto q = qubo::build_penalty(I, R, 0.5, k, 100.0);
    for (auto m : oracle::brute_force(q.matrix(), q.offset(), 1e-12).argmin)
      EXPECT_EQ(__builtin_popcountll(m), k);
  }
}

TEST(Penalty, Errors) {
  EXPECT_THROW(qubo::build_penalty(imp({1, 1}), uniform_r(2, 0), 0.5, 1, 0.0), InputError);
  EXPECT_THROW(qubo::build_penalty(imp({1, 1}), uniform_r(2, 0), 0.5, 3, 1.0), InputError);
  EXPECT_THROW(qubo::build_penalty(imp({1, 1}), uniform_r(2, 0), 0.5, -1, 1.0), InputError);
}

TEST(Ising, ZeroMatrix) {
  const auto is = qubo::to_ising(QuboInstance(Eigen::MatrixXd::Zero(3, 3)));
  EXPECT_EQ(is.a, Eigen::MatrixXd::Zero(3, 3));
  EXPECT_EQ(is.b, Eigen::VectorXd::Zero(3));
  EXPECT_EQ(is.c, 0.0);
}

TEST(Ising, TwoVariableExample) {
  const auto is = qubo::to_ising(QuboInstance(mat2(-1, 2, 2, 0)));
  EXPECT_EQ(is.c, 0.5);
  EXPECT_EQ(is.b(0), -0.5);
  EXPECT_EQ(is.b(1), -1.0);
  EXPECT_EQ(is.a(0, 1), 1.0);
  EXPECT_EQ(is.a(1, 0), 1.0);
  EXPECT_EQ(is.a(0, 0), 0.0);
}

TEST(Ising, EnergyEquivalenceOnRandomInstances) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const std::size_t n = 1 + s % 10;
    const QuboInstance q(testing_support::random_qubo(n, s).matrix(), 0.1 * s);
    const auto is = qubo::to_ising(q);
    EXPECT_EQ(is.a, is.a.transpose());
    for (std::uint64_t m = 0; m < (1u << n); ++m) {
      const auto x = oracle::bits(m, n);
      const auto spins = qubo::to_spins(x);
      // Spin side computed independently of ising_energy as well.
      double h = is.c;
      for (std::size_t i = 0; i < n; ++i) {
        h += is.b(i) * spins[i];
        for (std::size_t j = i + 1; j < n; ++j) h += is.a(i, j) * spins[i] * spins[j];
      }
      const double e = oracle::qubo_energy(q.matrix(), x, q.offset());
      EXPECT_NEAR(qubo::ising_energy(is, spins), e, 1e-12);
      EXPECT_NEAR(h, e, 1e-12);
    }
  }
}

TEST(Clamp, InducedEnergyMatchesFullEnergy) {
  std::mt19937_64 eng(99);
  for (std::uint64_t s = 0; s < 25; ++s) {
    const std::size_t n = 4 + s % 13;
    const QuboInstance q(testing_support::random_qubo(n, s).matrix(), -0.3);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), eng);
    const std::size_t free_count = 1 + s % std::min<std::size_t>(8, n);
    std::vector<std::size_t> free(order.begin(), order.begin() + free_count);
    std::vector<std::uint8_t> assign(n);
    for (auto& b : assign) b = eng() & 1u;
    const auto sub = qubo::clamp(q, free, assign);
    ASSERT_EQ(sub.size(), free_count);
    for (std::uint64_t m = 0; m < (1u << free_count); ++m) {
      const auto y = oracle::bits(m, free_count);
      auto full = assign;
      for (std::size_t t = 0; t < free_count; ++t) full[free[t]] = y[t];
      EXPECT_NEAR(qubo::energy(sub, y), oracle::qubo_energy(q.matrix(), full, q.offset()), 1e-12);
    }
  }
}

TEST(Argmin, InvariantUnderPositiveScaling) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto q = testing_support::random_qubo(1 + s % 10, s);
    const auto a = oracle::brute_force(q.matrix(), 0.0, 1e-12).argmin;
    for (double g : {0.01, 3.0, 1e4})
      EXPECT_EQ(oracle::brute_force(g * q.matrix(), 0.0, 1e-12 * g).argmin, a);
  }
}

TEST(MuExclusion, SubstitutedFeaturesNeverOptimal) {
  for (std::uint64_t s = 0; s < 40; ++s) {
    const std::size_t n = 2 + s % 9;
    auto [I, R] = testing_support::random_mi(n, s + 1000);
    I.values(static_cast<Eigen::Index>(s % n)) = 0.0;
    const double alpha = 0.05 + 0.9 * static_cast<double>(s) / 40;
    const auto plain = qubo::build(I, R, alpha);
    const double mu = qubo::resolve_mu(plain, qubo::MuPolicy::max_entry());
    const auto q = qubo::apply_epsilon_mu(plain, I, alpha, 1e-8, mu);
    for (auto m : oracle::brute_force(q.matrix(), 0.0, 1e-12).argmin)
      for (std::size_t i = 0; i < n; ++i)
        if (alpha * I.values(static_cast<Eigen::Index>(i)) < 1e-8) EXPECT_FALSE((m >> i) & 1u);
  }
}

TEST(Export, SingleEntry) {
  Eigen::MatrixXd m(1, 1);
  m << -2;
  EXPECT_EQ(qubo::to_coordinate_list(QuboInstance(m)), "0 0 -2\n");
}

TEST(Export, TwoByTwoHasThreeLines) {
  const auto text = qubo::to_coordinate_list(QuboInstance(mat2(-0.5, 0.25, 0.25, -1.0)));
  EXPECT_EQ(text, "0 0 -0.5\n0 1 0.5\n1 1 -1\n");
  const auto j = nlohmann::json::parse(qubo::to_json(QuboInstance(mat2(-0.5, 0.25, 0.25, -1.0))));
  EXPECT_EQ(j["n"], 2);
  EXPECT_EQ(j["entries"].size(), 3u);
  EXPECT_EQ(j["entries"][1], nlohmann::json::array({0, 1, 0.5}));
}

TEST(Export, RoundTripsAreByteIdentical) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto [I, R] = testing_support::random_mi(1 + s % 9, s);
    const auto q = qubo::build_penalty(I, R, 0.37, static_cast<int>(s % 2), 1.3);
    const auto j1 = qubo::to_json(q);
    const auto q2 = qubo::from_json(j1);
    EXPECT_EQ(qubo::to_json(q2), j1);
    const auto c1 = qubo::to_coordinate_list(q);
    const auto q3 = qubo::from_coordinate_list(c1, q.size());
    EXPECT_EQ(qubo::to_coordinate_list(q3), c1);
    for (std::uint64_t m = 0; m < (1u << q.size()); ++m) {
      const auto x = oracle::bits(m, q.size());
      EXPECT_EQ(qubo::energy(q2, x), qubo::energy(q, x));
      EXPECT_EQ(qubo::energy(q3, x), qubo::energy(q, x));
    }
  }
}

TEST(Export, ImportErrors) {
  EXPECT_THROW(qubo::from_coordinate_list("0 0 x\n"), InputError);
  EXPECT_THROW(qubo::from_coordinate_list("1 0 1\n"), InputError);
  EXPECT_THROW(qubo::from_json("{\"n\": 2}"), InputError);
  EXPECT_THROW(qubo::from_json("not json"), InputError);
}
