#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Cholesky>
#include <boost/random/beta_distribution.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>

#include "qfs/data.hpp"
#include "qfs/error.hpp"
#include "qfs/rng.hpp"

namespace qfs::data {
namespace {

// Stream ids for the independent sub-draws of gen_synth.
enum SynthStream : std::uint64_t {
  kIndices = 1,
  kCorrInformative = 2,
  kCorrRest = 3,
  kMeans = 4,
  kScales = 5,
  kSamplesInformative = 6,
  kSamplesRest = 7,
  kWeights = 8,
};

std::uint64_t sub_seed(std::uint64_t seed, SynthStream s) { return mix64(seed ^ mix64(s)); }

Eigen::MatrixXd cholesky_or_throw(const Eigen::MatrixXd& cov, const char* what) {
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() == Eigen::Success) return llt.matrixL();
  const double jitter = 1e-10 * cov.diagonal().mean();
  Eigen::MatrixXd bumped = cov;
  bumped.diagonal().array() += jitter;
  llt.compute(bumped);
  if (llt.info() != Eigen::Success)
    throw Error(std::string("covariance of the ") + what + " block is not positive definite");
  return llt.matrixL();
}

}  // namespace

Eigen::MatrixXd gen_correlation_matrix(int dim, std::uint64_t seed) {
  if (dim < 1) throw InputError("correlation matrix dimension must be >= 1");
  Eigen::MatrixXd r = Eigen::MatrixXd::Identity(dim, dim);
  if (dim == 1) return r;

  Engine eng(seed);
  boost::random::normal_distribution<double> normal(0.0, 1.0);
  constexpr double eta = 1.0;
  double beta = eta + (dim - 2) / 2.0;
  {
    boost::random::beta_distribution<double> b(beta, beta);
    const double r12 = 2.0 * b(eng) - 1.0;
    r(0, 1) = r12;
    r(1, 0) = r12;
  }
  for (int k = 2; k < dim; ++k) {
    beta -= 0.5;
    boost::random::beta_distribution<double> b(k / 2.0, beta);
    const double y = b(eng);
    Eigen::VectorXd u(k);
    for (int i = 0; i < k; ++i) u(i) = normal(eng);
    u.normalize();
    const Eigen::VectorXd w = std::sqrt(y) * u;
    const Eigen::MatrixXd A = Eigen::LLT<Eigen::MatrixXd>(r.topLeftCorner(k, k)).matrixL();
    const Eigen::VectorXd z = A * w;
    for (int i = 0; i < k; ++i) {
      r(k, i) = z(i);
      r(i, k) = z(i);
    }
  }
  return r;
}

SynthResult gen_synth(const SynthSpec& spec) {
  if (spec.n < 1 || spec.d_inf < 1 || spec.d_inf > spec.n)
    throw InputError("synthetic spec needs 1 <= d_inf <= n");
  if (spec.N < 1) throw InputError("synthetic spec needs N >= 1");
  const auto n = static_cast<std::size_t>(spec.n);
  const auto d_inf = static_cast<std::size_t>(spec.d_inf);
  const std::size_t d_rest = n - d_inf;
  const std::size_t N = spec.N;

  // Informative indices: partial Fisher-Yates over [0, n).
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  {
    Engine eng(sub_seed(spec.seed, kIndices));
    for (std::size_t i = 0; i < d_inf; ++i) {
      boost::random::uniform_int_distribution<std::size_t> pick(i, n - 1);
      std::swap(perm[i], perm[pick(eng)]);
    }
  }
  std::vector<std::size_t> informative(perm.begin(), perm.begin() + static_cast<long>(d_inf));
  std::sort(informative.begin(), informative.end());
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n; ++i)
    if (!std::binary_search(informative.begin(), informative.end(), i)) rest.push_back(i);

  const Eigen::MatrixXd c_inf =
      gen_correlation_matrix(spec.d_inf, sub_seed(spec.seed, kCorrInformative));
  const Eigen::MatrixXd c_rest =
      d_rest > 0 ? gen_correlation_matrix(static_cast<int>(d_rest), sub_seed(spec.seed, kCorrRest))
                 : Eigen::MatrixXd();

  // Means ~ N(0, 10) (scale 10), scales ~ exp(N(0, 1)), indexed by feature.
  Eigen::VectorXd mu(static_cast<Eigen::Index>(n));
  Eigen::VectorXd sigma(static_cast<Eigen::Index>(n));
  {
    Engine eng(sub_seed(spec.seed, kMeans));
    boost::random::normal_distribution<double> normal(0.0, 10.0);
    for (std::size_t i = 0; i < n; ++i) mu(static_cast<Eigen::Index>(i)) = normal(eng);
  }
  {
    Engine eng(sub_seed(spec.seed, kScales));
    boost::random::normal_distribution<double> normal(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) sigma(static_cast<Eigen::Index>(i)) = std::exp(normal(eng));
  }

  auto block_cov = [&](const std::vector<std::size_t>& idx, const Eigen::MatrixXd& corr) {
    const auto m = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXd cov(m, m);
    for (Eigen::Index a = 0; a < m; ++a)
      for (Eigen::Index b = 0; b < m; ++b)
        cov(a, b) = sigma(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(a)])) *
                    sigma(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(b)])) * corr(a, b);
    return cov;
  };

  Dataset d;
  d.features.resize(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(n));
  auto sample_block = [&](const std::vector<std::size_t>& idx, const Eigen::MatrixXd& corr,
                          SynthStream stream, const char* what) {
    if (idx.empty()) return;
    const Eigen::MatrixXd L = cholesky_or_throw(block_cov(idx, corr), what);
    Engine eng(sub_seed(spec.seed, stream));
    boost::random::normal_distribution<double> normal(0.0, 1.0);
    const auto m = static_cast<Eigen::Index>(idx.size());
    Eigen::VectorXd z(m);
    for (std::size_t r = 0; r < N; ++r) {
      for (Eigen::Index a = 0; a < m; ++a) z(a) = normal(eng);
      const Eigen::VectorXd x = L * z;
      for (Eigen::Index a = 0; a < m; ++a) {
        const auto col = static_cast<Eigen::Index>(idx[static_cast<std::size_t>(a)]);
        d.features(static_cast<Eigen::Index>(r), col) = mu(col) + x(a);
      }
    }
  };
  sample_block(informative, c_inf, kSamplesInformative, "informative");
  sample_block(rest, c_rest, kSamplesRest, "remaining");

  std::vector<double> w(d_inf);
  {
    Engine eng(sub_seed(spec.seed, kWeights));
    boost::random::normal_distribution<double> normal(0.0, 1.0);
    for (auto& v : w) v = normal(eng);
  }
  std::vector<double> z(N, 0.0);
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t a = 0; a < d_inf; ++a)
      z[r] += w[a] * d.features(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(informative[a]));
  const double mean = std::accumulate(z.begin(), z.end(), 0.0) / static_cast<double>(N);

  std::vector<int> raw(N);
  for (std::size_t r = 0; r < N; ++r) raw[r] = z[r] < mean ? 0 : 1;
  const bool has0 = std::find(raw.begin(), raw.end(), 0) != raw.end();
  const bool has1 = std::find(raw.begin(), raw.end(), 1) != raw.end();
  if (has0 && has1) {
    d.labels = std::move(raw);
    d.label_names = {"0", "1"};
  } else {
    d.labels.assign(N, 0);
    d.label_names = {has0 ? "0" : "1"};
  }
  for (std::size_t i = 0; i < n; ++i) d.feature_names.push_back("x" + std::to_string(i));
  d.validate();
  return SynthResult{std::move(d), std::move(informative)};
}

}  // namespace qfs::data
