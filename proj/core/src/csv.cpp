#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "qfs/data.hpp"
#include "qfs/error.hpp"
#include "qfs/format.hpp"

namespace qfs::data {
namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

// Splits one CSV record. Supports double-quoted fields with "" escapes.
std::vector<std::string> split_record(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(ch);
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.emplace_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.emplace_back(trim(cur));
  return out;
}

std::optional<double> parse_double(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

}  // namespace

void Dataset::validate() const {
  if (features.rows() < 1 || features.cols() < 1)
    throw InputError("dataset needs at least one sample and one feature");
  if (labels.size() != num_samples())
    throw InputError("label count does not match sample count");
  if (!feature_names.empty() && feature_names.size() != num_features())
    throw InputError("feature name count does not match feature count");
  const int c = num_classes();
  for (int y : labels)
    if (y < 0 || y >= c) throw InputError("label outside 0..c-1");
  std::vector<bool> seen(static_cast<std::size_t>(c), false);
  for (int y : labels) seen[static_cast<std::size_t>(y)] = true;
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw InputError("labels are not contiguous");
}

Dataset parse_csv(const std::string& text, const std::optional<LabelColumn>& label,
                  const std::string& source) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;

  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) {
      header = split_record(line);
      break;
    }
  }
  if (header.empty()) throw InputError(source + ": missing header row");
  if (header.size() < 2) throw InputError(source + ": need at least one feature and a label column");

  std::size_t label_col = header.size() - 1;
  if (label) {
    if (const auto* name = std::get_if<std::string>(&*label)) {
      const auto it = std::find(header.begin(), header.end(), *name);
      if (it == header.end()) throw InputError(source + ": label column '" + *name + "' not found");
      label_col = static_cast<std::size_t>(it - header.begin());
    } else {
      label_col = std::get<std::size_t>(*label);
      if (label_col >= header.size())
        throw InputError(source + ": label column index " + std::to_string(label_col) +
                         " out of range (" + std::to_string(header.size()) + " columns)");
    }
  }

  const std::size_t n = header.size() - 1;
  std::vector<double> values;
  std::vector<std::string> raw_labels;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_record(line);
    if (cells.size() != header.size())
      throw InputError(source + ": line " + std::to_string(line_no) + " has " +
                       std::to_string(cells.size()) + " cells, expected " +
                       std::to_string(header.size()));
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c == label_col) {
        if (cells[c].empty())
          throw InputError(source + ": line " + std::to_string(line_no) + ", column '" +
                           header[c] + "': missing label");
        raw_labels.push_back(cells[c]);
        continue;
      }
      const auto v = parse_double(cells[c]);
      if (!v)
        throw InputError(source + ": line " + std::to_string(line_no) + ", column '" + header[c] +
                         "': cannot parse '" + cells[c] + "' as a number");
      values.push_back(*v);
    }
  }
  const std::size_t N = raw_labels.size();
  if (N == 0) throw InputError(source + ": no data rows");

  Dataset d;
  d.features.resize(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < n; ++c)
      d.features(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = values[r * n + c];
  for (std::size_t c = 0; c < header.size(); ++c)
    if (c != label_col) d.feature_names.push_back(header[c]);

  // Numeric labels sort numerically, anything else lexicographically.
  const bool numeric = std::all_of(raw_labels.begin(), raw_labels.end(),
                                   [](const std::string& s) { return parse_double(s).has_value(); });
  std::vector<std::string> distinct = raw_labels;
  if (numeric) {
    std::sort(distinct.begin(), distinct.end(), [](const std::string& a, const std::string& b) {
      return *parse_double(a) < *parse_double(b);
    });
    distinct.erase(std::unique(distinct.begin(), distinct.end(),
                               [](const std::string& a, const std::string& b) {
                                 return *parse_double(a) == *parse_double(b);
                               }),
                   distinct.end());
  } else {
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  }
  d.labels.reserve(N);
  for (const auto& s : raw_labels) {
    std::size_t idx = 0;
    if (numeric) {
      const double v = *parse_double(s);
      idx = static_cast<std::size_t>(
          std::find_if(distinct.begin(), distinct.end(),
                       [v](const std::string& t) { return *parse_double(t) == v; }) -
          distinct.begin());
    } else {
      idx = static_cast<std::size_t>(std::lower_bound(distinct.begin(), distinct.end(), s) -
                                     distinct.begin());
    }
    d.labels.push_back(static_cast<int>(idx));
  }
  d.label_names = std::move(distinct);
  d.validate();
  return d;
}

Dataset load_csv(const std::filesystem::path& path, const std::optional<LabelColumn>& label) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str(), label, path.string());
}

std::string to_csv(const Dataset& d) {
  std::string out;
  for (std::size_t c = 0; c < d.num_features(); ++c) {
    out += c < d.feature_names.size() ? d.feature_names[c] : "x" + std::to_string(c);
    out += ',';
  }
  out += "y\n";
  for (std::size_t r = 0; r < d.num_samples(); ++r) {
    for (std::size_t c = 0; c < d.num_features(); ++c) {
      out += format_double(d.features(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)));
      out += ',';
    }
    const int y = d.labels[r];
    out += static_cast<std::size_t>(y) < d.label_names.size() ? d.label_names[y] : std::to_string(y);
    out += '\n';
  }
  return out;
}

}  // namespace qfs::data
