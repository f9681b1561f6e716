#include <cmath>
#include <utility>

#include "qfs/error.hpp"
#include "qfs/infotheory.hpp"
#include "qfs/parallel.hpp"

namespace qfs::info {
namespace {

void check_feature(const data::DiscretizedDataset& d, std::size_t i) {
  if (i >= d.num_features())
    throw InputError("feature index " + std::to_string(i) + " out of range (n = " +
                     std::to_string(d.num_features()) + ")");
}

}  // namespace

Eigen::MatrixXd joint_pmf_feature_label(const data::DiscretizedDataset& d, std::size_t i) {
  check_feature(d, i);
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(d.B(), d.num_classes());
  const auto* col = d.column(i);
  const auto& y = d.labels();
  for (std::size_t r = 0; r < d.num_samples(); ++r) counts(col[r] - 1, y[r]) += 1.0;
  return counts / static_cast<double>(d.num_samples());
}

Eigen::MatrixXd joint_pmf_feature_pair(const data::DiscretizedDataset& d, std::size_t i,
                                       std::size_t j) {
  check_feature(d, i);
  check_feature(d, j);
  if (i == j) throw InputError("pairwise pmf needs two distinct features");
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(d.B(), d.B());
  const auto* a = d.column(i);
  const auto* b = d.column(j);
  for (std::size_t r = 0; r < d.num_samples(); ++r) counts(a[r] - 1, b[r] - 1) += 1.0;
  return counts / static_cast<double>(d.num_samples());
}

double mutual_information(const Eigen::MatrixXd& joint) {
  const Eigen::VectorXd row = joint.rowwise().sum();
  const Eigen::RowVectorXd col = joint.colwise().sum();
  double mi = 0.0;
  for (Eigen::Index c = 0; c < joint.cols(); ++c) {
    for (Eigen::Index r = 0; r < joint.rows(); ++r) {
      const double p = joint(r, c);
      if (p <= 0.0) continue;
      mi += p * std::log(p / (row(r) * col(c)));
    }
  }
  return mi < 0.0 ? 0.0 : mi;
}

ImportanceVector importance(const data::DiscretizedDataset& d) {
  ImportanceVector out{Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d.num_features()))};
  for (std::size_t i = 0; i < d.num_features(); ++i)
    out.values(static_cast<Eigen::Index>(i)) = mutual_information(joint_pmf_feature_label(d, i));
  return out;
}

RedundancyMatrix redundancy(const data::DiscretizedDataset& d, unsigned threads) {
  const std::size_t n = d.num_features();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

  std::vector<double> mi(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t p) {
    mi[p] = mutual_information(joint_pmf_feature_pair(d, pairs[p].first, pairs[p].second));
  });

  const auto nn = static_cast<Eigen::Index>(n);
  RedundancyMatrix out{Eigen::MatrixXd::Zero(nn, nn)};
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto i = static_cast<Eigen::Index>(pairs[p].first);
    const auto j = static_cast<Eigen::Index>(pairs[p].second);
    out.values(i, j) = mi[p];
    out.values(j, i) = mi[p];
  }
  return out;
}

}  // namespace qfs::info
