#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qfs/qubo.hpp"

namespace qfs::eval {

/// Sorted set of zero-based feature indices within an ambient dimension n.
class FeatureSubset {
 public:
  /// Sorts and validates; duplicates or indices >= n are rejected.
  FeatureSubset(std::vector<std::size_t> indices, std::size_t n);
  static FeatureSubset from_bits(const qubo::BitVector& x);

  const std::vector<std::size_t>& indices() const { return indices_; }
  std::size_t ambient() const { return n_; }
  std::size_t size() const { return indices_.size(); }
  qubo::BitVector indicator() const;

  friend bool operator==(const FeatureSubset&, const FeatureSubset&) = default;

 private:
  std::vector<std::size_t> indices_;
  std::size_t n_;
};

struct EditDistance {
  std::size_t value = 0;
  /// False when the subsets differ in size; value is then ceil(Hamming / 2).
  bool swap_metric = true;
};

/// Number of swaps turning one equal-size subset into the other, |a \ b|.
EditDistance edit_distance(const FeatureSubset& a, const FeatureSubset& b);

struct RecoveryReport {
  std::size_t intersection = 0;
  EditDistance distance;
  bool exact = false;
};

RecoveryReport recovery_report(const FeatureSubset& selected, const FeatureSubset& truth);

struct NamedSubset {
  std::string name;
  FeatureSubset subset;
};

struct GraphNode {
  std::string name;                  // members joined with '+'
  std::vector<std::string> members;  // methods whose subsets coincide
  std::vector<std::size_t> features;
};

struct GraphEdge {
  std::size_t a = 0;  // node indices
  std::size_t b = 0;
  std::size_t w = 0;
};

struct DistanceGraph {
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;
};

/// Complete graph of pairwise edit distances; identical subsets share one node.
DistanceGraph distance_graph(const std::vector<NamedSubset>& subsets);

}  // namespace qfs::eval
