#pragma once

#include <cstddef>

#include <Eigen/Core>

#include "qfs/data.hpp"

namespace qfs::info {

/// Mutual information of each feature with the label, in nats. Entries >= 0.
struct ImportanceVector {
  Eigen::VectorXd values;
  std::size_t size() const { return static_cast<std::size_t>(values.size()); }
};

/// Pairwise mutual information between features, in nats. Symmetric, zero diagonal, entries >= 0.
struct RedundancyMatrix {
  Eigen::MatrixXd values;
  std::size_t size() const { return static_cast<std::size_t>(values.rows()); }
};

/// Empirical joint pmf of (bin of feature i, label); rows are bins 1..B, columns classes.
Eigen::MatrixXd joint_pmf_feature_label(const data::DiscretizedDataset& d, std::size_t i);

/// Empirical joint pmf of (bin of feature i, bin of feature j), i != j.
Eigen::MatrixXd joint_pmf_feature_pair(const data::DiscretizedDataset& d, std::size_t i,
                                       std::size_t j);

/// Plug-in mutual information of a joint pmf table, 0 log 0 := 0, clamped at 0.
double mutual_information(const Eigen::MatrixXd& joint);

ImportanceVector importance(const data::DiscretizedDataset& d);

/// `threads` > 1 splits the unordered pairs across workers; output does not depend on it.
RedundancyMatrix redundancy(const data::DiscretizedDataset& d, unsigned threads = 1);

}  // namespace qfs::info
