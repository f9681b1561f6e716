#pragma once

#include <vector>

#include <nlohmann/json.hpp>

#include "qfs/data.hpp"
#include "qfs/eval.hpp"
#include "qfs/infotheory.hpp"
#include "qfs/selection.hpp"
#include "qfs/solve.hpp"

// JSON forms of the library types. Readers throw InputError on malformed input.
namespace qfs::io {

using nlohmann::json;

/// {B, bin_edges, bins, labels, num_classes}; bins is a list of rows.
json to_json(const data::DiscretizedDataset& d);
data::DiscretizedDataset discretized_from_json(const json& j);

/// {importance: [...], redundancy: [[...], ...]}
json to_json(const info::ImportanceVector& importance, const info::RedundancyMatrix& redundancy);
std::pair<info::ImportanceVector, info::RedundancyMatrix> mi_from_json(const json& j);

/// {sorted_energies, bit_counts, best: {x, energy}, optimum_fraction, reference_energy}
json to_json(const solve::Summary& s);

/// {alpha_star, x_star, k, energy, trace: [[alpha, k'], ...], solver}
json to_json(const selection::SelectionResult& r);
selection::SelectionResult selection_from_json(const json& j);

json to_json(const std::vector<selection::Probe>& trace);
json to_json(const std::vector<selection::SweepPoint>& sweep);
json to_json(const selection::PropositionReport& r);

json to_json(const eval::RecoveryReport& r);
/// {nodes: [{name, members, features}], edges: [{a, b, w}]}
json to_json(const eval::DistanceGraph& g);

}  // namespace qfs::io
