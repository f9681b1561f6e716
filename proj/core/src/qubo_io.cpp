#include <charconv>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qfs/error.hpp"
#include "qfs/format.hpp"
#include "qfs/qubo.hpp"

namespace qfs::qubo {

using nlohmann::json;

namespace {

struct Entry {
  std::size_t i, j;
  double v;
};

std::vector<Entry> upper_entries(const QuboInstance& q) {
  std::vector<Entry> out;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q(i, i) != 0.0) out.push_back({i, i, q(i, i)});
    for (std::size_t j = i + 1; j < q.size(); ++j) {
      const double v = q(i, j) + q(j, i);
      if (v != 0.0) out.push_back({i, j, v});
    }
  }
  return out;
}

QuboInstance from_entries(std::size_t n, double offset, const std::vector<Entry>& entries,
                          std::optional<Provenance> prov) {
  if (n < 1) throw InputError("QUBO needs n >= 1");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (const auto& e : entries) {
    if (e.i > e.j) throw InputError("entries must satisfy i <= j");
    if (e.j >= n) throw InputError("entry index out of range");
    const auto i = static_cast<Eigen::Index>(e.i);
    const auto j = static_cast<Eigen::Index>(e.j);
    if (i == j) {
      m(i, i) += e.v;
    } else {
      m(i, j) += e.v / 2.0;
      m(j, i) = m(i, j);
    }
  }
  return QuboInstance(std::move(m), offset, std::move(prov));
}

}  // namespace

std::string to_json(const QuboInstance& q) {
  json j;
  j["n"] = q.size();
  j["offset"] = q.offset();
  json entries = json::array();
  for (const auto& e : upper_entries(q)) entries.push_back({e.i, e.j, e.v});
  j["entries"] = std::move(entries);
  if (const auto& p = q.provenance()) {
    json pj{{"alpha", p->alpha}};
    if (p->epsilon) pj["epsilon"] = *p->epsilon;
    if (p->mu) pj["mu"] = *p->mu;
    j["provenance"] = std::move(pj);
  }
  return j.dump();
}

QuboInstance from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
    const auto n = j.at("n").get<std::size_t>();
    const double offset = j.value("offset", 0.0);
    std::vector<Entry> entries;
    for (const auto& e : j.at("entries"))
      entries.push_back({e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>(), e.at(2).get<double>()});
    std::optional<Provenance> prov;
    if (j.contains("provenance")) {
      const auto& p = j["provenance"];
      prov = Provenance{p.at("alpha").get<double>(), {}, {}};
      if (p.contains("epsilon")) prov->epsilon = p["epsilon"].get<double>();
      if (p.contains("mu")) prov->mu = p["mu"].get<double>();
    }
    return from_entries(n, offset, entries, prov);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed QUBO JSON: ") + e.what());
  }
}

std::string to_coordinate_list(const QuboInstance& q) {
  std::string out;
  if (q.offset() != 0.0) out += "# offset " + format_double(q.offset()) + "\n";
  for (const auto& e : upper_entries(q))
    out += std::to_string(e.i) + " " + std::to_string(e.j) + " " + format_double(e.v) + "\n";
  return out;
}

QuboInstance from_coordinate_list(const std::string& text, std::optional<std::size_t> n) {
  std::istringstream in(text);
  std::string line;
  double offset = 0.0;
  std::vector<Entry> entries;
  std::size_t max_index = 0;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    if (line[0] == '#') {
      std::string hash, key;
      ls >> hash >> key;
      if (key == "offset" && !(ls >> offset))
        throw InputError("coordinate list line " + std::to_string(line_no) + ": bad offset");
      continue;
    }
    std::string si, sj, sv;
    if (!(ls >> si >> sj >> sv))
      throw InputError("coordinate list line " + std::to_string(line_no) + ": expected 'i j v'");
    Entry e{};
    auto parse = [&](const std::string& s, auto& out) {
      const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
      if (ec != std::errc{} || p != s.data() + s.size())
        throw InputError("coordinate list line " + std::to_string(line_no) + ": cannot parse '" + s + "'");
    };
    parse(si, e.i);
    parse(sj, e.j);
    parse(sv, e.v);
    max_index = std::max({max_index, e.i, e.j});
    entries.push_back(e);
  }
  const std::size_t size = n.value_or(entries.empty() ? 0 : max_index + 1);
  return from_entries(size, offset, entries, std::nullopt);
}

std::string ising_to_json(const IsingInstance& ising) {
  json j;
  const auto n = ising.b.size();
  j["n"] = n;
  j["offset"] = ising.c;
  j["fields"] = std::vector<double>(ising.b.data(), ising.b.data() + n);
  json couplings = json::array();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = i + 1; k < n; ++k)
      if (ising.a(i, k) != 0.0) couplings.push_back({i, k, ising.a(i, k)});
  j["couplings"] = std::move(couplings);
  return j.dump();
}

}  // namespace qfs::qubo
