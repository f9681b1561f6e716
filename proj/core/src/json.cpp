#include "qfs/json.hpp"

#include "qfs/error.hpp"

namespace qfs::io {
namespace {

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed ") + what + " JSON: " + e.what());
  }
}

std::vector<int> bits_to_ints(const qubo::BitVector& x) { return {x.begin(), x.end()}; }

}  // namespace

json to_json(const data::DiscretizedDataset& d) {
  json rows = json::array();
  for (std::size_t r = 0; r < d.num_samples(); ++r) {
    std::vector<int> row(d.num_features());
    for (std::size_t f = 0; f < d.num_features(); ++f) row[f] = d.bin(r, f);
    rows.push_back(std::move(row));
  }
  return json{{"B", d.B()},
              {"num_classes", d.num_classes()},
              {"bin_edges", d.bin_edges()},
              {"bins", std::move(rows)},
              {"labels", d.labels()}};
}

data::DiscretizedDataset discretized_from_json(const json& j) {
  return guarded("discretized dataset", [&] {
    const int B = j.at("B").get<int>();
    const auto& rows = j.at("bins");
    const auto labels = j.at("labels").get<std::vector<int>>();
    const std::size_t N = rows.size();
    const std::size_t n = N ? rows.at(0).size() : 0;
    std::vector<std::uint16_t> bins(N * n);
    for (std::size_t r = 0; r < N; ++r) {
      if (rows[r].size() != n) throw InputError("discretized dataset rows differ in length");
      for (std::size_t f = 0; f < n; ++f) {
        const int b = rows[r][f].get<int>();
        if (b < 1 || b > B) throw InputError("bin index outside [1, B]");
        bins[f * N + r] = static_cast<std::uint16_t>(b);
      }
    }
    int classes = 0;
    for (int y : labels) classes = std::max(classes, y + 1);
    classes = j.value("num_classes", classes);
    auto edges = j.value("bin_edges", std::vector<std::vector<double>>{});
    return data::DiscretizedDataset(B, N, n, std::move(bins), labels, classes, std::move(edges));
  });
}

json to_json(const info::ImportanceVector& importance, const info::RedundancyMatrix& redundancy) {
  const auto n = redundancy.values.rows();
  json red = json::array();
  for (Eigen::Index i = 0; i < n; ++i) {
    std::vector<double> row(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) row[static_cast<std::size_t>(k)] = redundancy.values(i, k);
    red.push_back(std::move(row));
  }
  std::vector<double> imp(importance.values.data(), importance.values.data() + importance.values.size());
  return json{{"importance", std::move(imp)}, {"redundancy", std::move(red)}};
}

std::pair<info::ImportanceVector, info::RedundancyMatrix> mi_from_json(const json& j) {
  return guarded("mutual information", [&] {
    const auto imp = j.at("importance").get<std::vector<double>>();
    const auto red = j.at("redundancy").get<std::vector<std::vector<double>>>();
    const auto n = static_cast<Eigen::Index>(imp.size());
    if (n < 1) throw InputError("importance vector is empty");
    if (red.size() != imp.size()) throw InputError("redundancy matrix size does not match importance");
    info::ImportanceVector I{Eigen::Map<const Eigen::VectorXd>(imp.data(), n)};
    info::RedundancyMatrix R{Eigen::MatrixXd(n, n)};
    for (Eigen::Index i = 0; i < n; ++i) {
      if (red[static_cast<std::size_t>(i)].size() != imp.size())
        throw InputError("redundancy matrix must be square");
      for (Eigen::Index k = 0; k < n; ++k)
        R.values(i, k) = red[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
    }
    if (I.values.minCoeff() < 0.0 || R.values.minCoeff() < 0.0)
      throw InputError("importance and redundancy entries must be nonnegative");
    return std::pair{std::move(I), std::move(R)};
  });
}

json to_json(const solve::Summary& s) {
  return json{{"sorted_energies", s.sorted_energies},
              {"bit_counts", s.bit_counts},
              {"best", {{"x", bits_to_ints(s.best_x)}, {"energy", s.best_energy}}},
              {"reference_energy", s.reference_energy},
              {"optimum_fraction", s.optimum_fraction}};
}

json to_json(const std::vector<selection::Probe>& trace) {
  json t = json::array();
  for (const auto& p : trace) t.push_back({p.alpha, p.k});
  return t;
}

json to_json(const selection::SelectionResult& r) {
  return json{{"alpha_star", r.alpha_star}, {"x_star", bits_to_ints(r.x_star)},
              {"k", r.k},                   {"energy", r.energy},
              {"trace", to_json(r.trace)},  {"solver", r.solver_kind}};
}

selection::SelectionResult selection_from_json(const json& j) {
  return guarded("selection result", [&] {
    selection::SelectionResult r;
    r.alpha_star = j.at("alpha_star").get<double>();
    for (int b : j.at("x_star").get<std::vector<int>>()) r.x_star.push_back(static_cast<std::uint8_t>(b != 0));
    r.k = j.at("k").get<std::size_t>();
    r.energy = j.value("energy", 0.0);
    for (const auto& p : j.value("trace", json::array()))
      r.trace.push_back({p.at(0).get<double>(), p.at(1).get<std::size_t>()});
    r.solver_kind = j.value("solver", std::string{});
    return r;
  });
}

json to_json(const std::vector<selection::SweepPoint>& sweep) {
  json out = json::array();
  for (const auto& p : sweep) out.push_back({{"alpha", p.alpha}, {"k", p.k}, {"energy", p.energy}});
  return out;
}

json to_json(const selection::PropositionReport& r) {
  json w = json::array();
  for (const auto& x : r.witnesses) {
    json row{{"k", x.k}, {"found", x.found}};
    if (x.found) {
      row["alpha"] = x.alpha;
      row["kind"] = x.point ? "point" : "interval";
      row["lo"] = x.lo;
      row["hi"] = x.hi;
    }
    w.push_back(std::move(row));
  }
  return json{{"holds", r.holds}, {"witnesses", std::move(w)}, {"breakpoints", r.breakpoints}};
}

json to_json(const eval::RecoveryReport& r) {
  return json{{"intersection", r.intersection},
              {"edit_distance", r.distance.value},
              {"swap_metric", r.distance.swap_metric},
              {"exact_recovery", r.exact}};
}

json to_json(const eval::DistanceGraph& g) {
  json nodes = json::array();
  for (const auto& n : g.nodes)
    nodes.push_back({{"name", n.name}, {"members", n.members}, {"features", n.features}});
  json edges = json::array();
  for (const auto& e : g.edges) edges.push_back({{"a", e.a}, {"b", e.b}, {"w", e.w}});
  return json{{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

}  // namespace qfs::io
