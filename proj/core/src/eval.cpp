#include <algorithm>

#include "qfs/error.hpp"
#include "qfs/eval.hpp"

namespace qfs::eval {

FeatureSubset::FeatureSubset(std::vector<std::size_t> indices, std::size_t n)
    : indices_(std::move(indices)), n_(n) {
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end())
    throw InputError("feature subset contains duplicate indices");
  if (!indices_.empty() && indices_.back() >= n_)
    throw InputError("feature index " + std::to_string(indices_.back()) +
                     " outside ambient dimension " + std::to_string(n_));
}

FeatureSubset FeatureSubset::from_bits(const qubo::BitVector& x) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i]) idx.push_back(i);
  return FeatureSubset(std::move(idx), x.size());
}

qubo::BitVector FeatureSubset::indicator() const {
  qubo::BitVector x(n_, 0);
  for (auto i : indices_) x[i] = 1;
  return x;
}

EditDistance edit_distance(const FeatureSubset& a, const FeatureSubset& b) {
  if (a.ambient() != b.ambient())
    throw InputError("subsets have different ambient dimensions (" + std::to_string(a.ambient()) +
                     " vs " + std::to_string(b.ambient()) + ")");
  std::vector<std::size_t> common;
  std::set_intersection(a.indices().begin(), a.indices().end(), b.indices().begin(),
                        b.indices().end(), std::back_inserter(common));
  const std::size_t only_a = a.size() - common.size();
  const std::size_t only_b = b.size() - common.size();
  if (a.size() == b.size()) return {only_a, true};
  return {(only_a + only_b + 1) / 2, false};
}

RecoveryReport recovery_report(const FeatureSubset& selected, const FeatureSubset& truth) {
  RecoveryReport r;
  r.distance = edit_distance(selected, truth);
  std::vector<std::size_t> common;
  std::set_intersection(selected.indices().begin(), selected.indices().end(),
                        truth.indices().begin(), truth.indices().end(), std::back_inserter(common));
  r.intersection = common.size();
  r.exact = selected == truth;
  return r;
}

DistanceGraph distance_graph(const std::vector<NamedSubset>& subsets) {
  if (subsets.size() < 2) throw InputError("distance graph needs at least two subsets");
  const auto& first = subsets.front().subset;
  for (const auto& s : subsets) {
    if (s.subset.ambient() != first.ambient())
      throw InputError("subset '" + s.name + "' has a different ambient dimension");
    if (s.subset.size() != first.size())
      throw InputError("subset '" + s.name + "' has size " + std::to_string(s.subset.size()) +
                       ", expected " + std::to_string(first.size()));
  }

  DistanceGraph g;
  std::vector<const FeatureSubset*> node_sets;
  for (const auto& s : subsets) {
    const auto it = std::find_if(node_sets.begin(), node_sets.end(),
                                 [&](const FeatureSubset* t) { return *t == s.subset; });
    if (it != node_sets.end()) {
      auto& node = g.nodes[static_cast<std::size_t>(it - node_sets.begin())];
      node.members.push_back(s.name);
      node.name += "+" + s.name;
    } else {
      node_sets.push_back(&s.subset);
      g.nodes.push_back({s.name, {s.name}, s.subset.indices()});
    }
  }
  for (std::size_t a = 0; a < node_sets.size(); ++a)
    for (std::size_t b = a + 1; b < node_sets.size(); ++b)
      g.edges.push_back({a, b, edit_distance(*node_sets[a], *node_sets[b]).value});
  return g;
}

}  // namespace qfs::eval
