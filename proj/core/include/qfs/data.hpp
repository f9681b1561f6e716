#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

namespace qfs::data {

/// Tabular classification data: N samples, n real features, dense integer labels.
struct Dataset {
  Eigen::MatrixXd features;               // N x n
  std::vector<int> labels;                // values in {0, ..., num_classes - 1}
  std::vector<std::string> feature_names; // n entries (may be synthesized)
  std::vector<std::string> label_names;   // label_names[c] is the original value mapped to c

  std::size_t num_samples() const { return static_cast<std::size_t>(features.rows()); }
  std::size_t num_features() const { return static_cast<std::size_t>(features.cols()); }
  int num_classes() const { return static_cast<int>(label_names.size()); }

  /// Throws InputError when the invariants (shape agreement, contiguous labels) do not hold.
  void validate() const;
};

/// Quantile-binned dataset. Bin indices are 1-based, in [1, B].
class DiscretizedDataset {
 public:
  DiscretizedDataset(int bins_per_feature, std::size_t num_samples, std::size_t num_features,
                     std::vector<std::uint16_t> bins, std::vector<int> labels, int num_classes,
                     std::vector<std::vector<double>> bin_edges);

  int B() const { return B_; }
  std::size_t num_samples() const { return num_samples_; }
  std::size_t num_features() const { return num_features_; }
  int num_classes() const { return num_classes_; }

  /// Bin of sample `row` in feature `feature`.
  int bin(std::size_t row, std::size_t feature) const {
    return bins_[feature * num_samples_ + row];
  }
  /// All bins of one feature, contiguous.
  const std::uint16_t* column(std::size_t feature) const {
    return bins_.data() + feature * num_samples_;
  }
  const std::vector<int>& labels() const { return labels_; }
  const std::vector<std::vector<double>>& bin_edges() const { return bin_edges_; }

 private:
  int B_;
  std::size_t num_samples_;
  std::size_t num_features_;
  std::vector<std::uint16_t> bins_;  // column-major
  std::vector<int> labels_;
  int num_classes_;
  std::vector<std::vector<double>> bin_edges_;
};

/// Label column selector: by header name or zero-based column index.
using LabelColumn = std::variant<std::string, std::size_t>;

/// Reads a comma-separated file with a header row. When `label` is empty the
/// last column is the label. Labels are remapped to 0..c-1: numerically when
/// every label parses as a number, lexicographically otherwise.
Dataset load_csv(const std::filesystem::path& path, const std::optional<LabelColumn>& label = {});

/// Parses CSV text; `source` names the input in error messages.
Dataset parse_csv(const std::string& text, const std::optional<LabelColumn>& label = {},
                  const std::string& source = "<memory>");

/// Writes `d` as CSV with a header and the label as the final column `y`.
/// Doubles use the shortest round-trip representation.
std::string to_csv(const Dataset& d);

/// Per-feature quantile binning with B bins (B >= 2). Edges are the l/B
/// quantiles, l = 0..B, with linear interpolation between order statistics;
/// bins 1..B-1 are half-open [q_{l-1}, q_l), bin B is closed.
DiscretizedDataset discretize(const Dataset& d, int B);

/// Random dim x dim correlation matrix from the onion method (LKJ density, eta = 1).
Eigen::MatrixXd gen_correlation_matrix(int dim, std::uint64_t seed);

struct SynthSpec {
  int n = 10;
  int d_inf = 4;
  std::size_t N = 10000;
  std::uint64_t seed = 0;
};

struct SynthResult {
  Dataset dataset;
  std::vector<std::size_t> informative;  // sorted, zero-based
};

/// Synthetic binary classification data whose label depends linearly on a
/// random subset of d_inf informative features.
SynthResult gen_synth(const SynthSpec& spec);

}  // namespace qfs::data
