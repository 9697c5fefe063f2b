#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "subcover/covering.hpp"
#include "subcover/errors.hpp"
#include "subcover/subgroups.hpp"
#include "subcover/union_max.hpp"

namespace subcover {

// All machine-readable output is built as ordered JSON: fixed key order
// plus sorted rows gives byte-identical reports for identical inputs.
using OrderedJson = nlohmann::ordered_json;

// Witness subgroups rendered as their element lists (ascending, one list
// per subgroup), the external form of a witness.
inline OrderedJson subgroup_elements(const SubgroupLattice& lat,
                                     const std::vector<int>& ids) {
  OrderedJson arr = OrderedJson::array();
  for (int id : ids) arr.push_back(lat.subgroups[id].members.members());
  return arr;
}

inline OrderedJson sigma_json(const CoverResult& r) {
  if (r.uncoverable) return OrderedJson("uncoverable");
  return OrderedJson(r.sigma);
}

// ---------------------------------------------------------------------
// Result cache: append-only line-delimited JSON ({"key":..., "row":...}
// per line), last writer wins, corrupt lines skipped with a warning.

class Cache {
 public:
  Cache(std::string path, std::ostream& warn) : path_(std::move(path)) {
    std::ifstream in(path_);
    if (!in) return;  // absent file: empty cache
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      try {
        OrderedJson j = OrderedJson::parse(line);
        if (!j.is_object() || !j.contains("key") || !j.at("key").is_string() ||
            !j.contains("row"))
          throw GroupError("expected {\"key\":..., \"row\":...}");
        map_[j.at("key").get<std::string>()] = j.at("row");
      } catch (const std::exception& e) {
        warn << "cache: skipping corrupt line " << lineno << " of " << path_
             << ": " << e.what() << "\n";
      }
    }
  }

  std::optional<OrderedJson> get(const std::string& key) const {
    auto it = map_.find(key);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  void put(const std::string& key, const OrderedJson& row) {
    map_[key] = row;
    std::ofstream out(path_, std::ios::app);
    if (!out) throw GroupError("cannot write cache file: " + path_);
    OrderedJson entry;
    entry["key"] = key;
    entry["row"] = row;
    out << entry.dump() << "\n";
  }

  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::map<std::string, OrderedJson> map_;
};

// ---------------------------------------------------------------------
// CSV projection: scalar fields only (witness lists and other nested
// values are dropped), columns in first-seen order across rows.

namespace detail {

inline std::string csv_field(const OrderedJson& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

}  // namespace detail

inline std::string rows_to_csv(const OrderedJson& rows) {
  std::vector<std::string> cols;
  for (const auto& row : rows) {
    if (!row.is_object()) continue;
    for (const auto& [key, value] : row.items()) {
      if (value.is_structured()) continue;
      if (std::find(cols.begin(), cols.end(), key) == cols.end())
        cols.push_back(key);
    }
  }
  std::string out;
  for (std::size_t i = 0; i < cols.size(); ++i)
    out += (i ? "," : "") + cols[i];
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i) out += ",";
      if (row.is_object() && row.contains(cols[i]) &&
          !row.at(cols[i]).is_structured())
        out += detail::csv_field(row.at(cols[i]));
    }
    out += "\n";
  }
  return out;
}

// Writes a report document as JSON (canonical) or CSV (projection of its
// "rows" array) to a file or a stream.
inline int emit_report(const OrderedJson& doc, const std::string& format,
                       const std::string& out_path, std::ostream& out,
                       std::ostream& err) {
  std::string text;
  if (format == "csv") {
    const OrderedJson* rows = &doc;
    if (doc.is_object() && doc.contains("rows")) rows = &doc.at("rows");
    if (rows->is_object()) {
      OrderedJson wrapped = OrderedJson::array({*rows});
      text = rows_to_csv(wrapped);
    } else {
      text = rows_to_csv(*rows);
    }
  } else {
    text = doc.dump(2) + "\n";
  }
  if (out_path.empty()) {
    out << text;
    return 0;
  }
  std::ofstream f(out_path);
  if (!f) {
    err << "cannot write output file: " << out_path << "\n";
    return 1;
  }
  f << text;
  return 0;
}

}  // namespace subcover
