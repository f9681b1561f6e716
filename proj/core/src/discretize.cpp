#include <algorithm>
#include <cmath>
#include <limits>

#include "qfs/data.hpp"
#include "qfs/error.hpp"

namespace qfs::data {

DiscretizedDataset::DiscretizedDataset(int bins_per_feature, std::size_t num_samples,
                                       std::size_t num_features, std::vector<std::uint16_t> bins,
                                       std::vector<int> labels, int num_classes,
                                       std::vector<std::vector<double>> bin_edges)
    : B_(bins_per_feature),
      num_samples_(num_samples),
      num_features_(num_features),
      bins_(std::move(bins)),
      labels_(std::move(labels)),
      num_classes_(num_classes),
      bin_edges_(std::move(bin_edges)) {
  if (B_ < 1) throw InputError("bin count must be positive");
  if (num_samples_ < 1 || num_features_ < 1)
    throw InputError("discretized dataset needs at least one sample and one feature");
  if (bins_.size() != num_samples_ * num_features_)
    throw InputError("bin matrix has wrong size");
  if (labels_.size() != num_samples_) throw InputError("label count does not match sample count");
  if (num_classes_ < 1) throw InputError("need at least one class");
  for (auto b : bins_)
    if (b < 1 || b > B_) throw InputError("bin index outside [1, B]");
  for (int y : labels_)
    if (y < 0 || y >= num_classes_) throw InputError("label outside 0..c-1");
  if (!bin_edges_.empty()) {
    if (bin_edges_.size() != num_features_) throw InputError("need one edge list per feature");
    for (const auto& e : bin_edges_) {
      if (e.size() != static_cast<std::size_t>(B_) + 1)
        throw InputError("each feature needs B+1 bin edges");
      if (!std::is_sorted(e.begin(), e.end())) throw InputError("bin edges must be nondecreasing");
    }
  }
}

namespace {

// Inner quantile edge in terms of the order statistics around it. A sample v
// lies at or above the edge iff v > lo (strictly interpolated edge) or v >= lo
// (edge coincides with an order statistic). Comparing against order statistics
// instead of the rounded edge value keeps binning a function of rank only.
struct Threshold {
  double lo;
  bool interpolated;
  bool reached_by(double v) const { return interpolated ? v > lo : v >= lo; }
};

}  // namespace

DiscretizedDataset discretize(const Dataset& d, int B) {
  if (B < 2) throw InputError("bin count B must be at least 2");
  if (B > std::numeric_limits<std::uint16_t>::max()) throw InputError("bin count B too large");
  d.validate();
  const std::size_t N = d.num_samples();
  const std::size_t n = d.num_features();
  const auto Bu = static_cast<std::size_t>(B);

  std::vector<std::uint16_t> bins(N * n);
  std::vector<std::vector<double>> edges(n, std::vector<double>(Bu + 1));
  std::vector<double> sorted(N);
  std::vector<Threshold> inner(Bu - 1);

  for (std::size_t f = 0; f < n; ++f) {
    const auto col = d.features.col(static_cast<Eigen::Index>(f));
    std::copy(col.begin(), col.end(), sorted.begin());
    std::sort(sorted.begin(), sorted.end());

    for (std::size_t l = 0; l <= Bu; ++l) {
      // Quantile position h = (N-1) * l / B, split into integer and remainder parts.
      const std::size_t h_num = (N - 1) * l;
      const std::size_t idx = h_num / Bu;
      const std::size_t rem = h_num % Bu;
      double q = sorted[idx];
      bool interpolated = false;
      if (rem != 0) {
        const double lo = sorted[idx];
        const double hi = sorted[idx + 1];
        q = std::lerp(lo, hi, static_cast<double>(rem) / static_cast<double>(Bu));
        interpolated = lo < hi;
      }
      edges[f][l] = q;
      if (l >= 1 && l < Bu) inner[l - 1] = Threshold{sorted[idx], interpolated};
    }

    for (std::size_t r = 0; r < N; ++r) {
      const double v = col[static_cast<Eigen::Index>(r)];
      const auto passed = std::partition_point(inner.begin(), inner.end(),
                                               [v](const Threshold& t) { return t.reached_by(v); });
      bins[f * N + r] = static_cast<std::uint16_t>(1 + (passed - inner.begin()));
    }
  }
  return DiscretizedDataset(B, N, n, std::move(bins), d.labels, d.num_classes(), std::move(edges));
}

}  // namespace qfs::data
