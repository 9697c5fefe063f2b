#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "subcover/catalog.hpp"
#include "subcover/errors.hpp"
#include "subcover/group.hpp"

namespace subcover {

// JSON group files, two shapes keyed by "kind":
//   {"name": "...", "kind": "cayley", "table": [[0,1],[1,0]]}
//   {"name": "...", "kind": "perm", "degree": 3, "generators": [[1,0,2]]}
// Mixing the shapes or omitting a field is an error.
inline Group group_from_json(const nlohmann::json& j,
                             std::size_t cap = kDefaultOrderCap) {
  if (!j.is_object()) throw GroupError("group json: not an object");
  if (!j.contains("name") || !j.at("name").is_string())
    throw GroupError("group json: missing string field 'name'");
  if (!j.contains("kind") || !j.at("kind").is_string())
    throw GroupError("group json: missing string field 'kind'");
  const std::string name = j.at("name").get<std::string>();
  const std::string kind = j.at("kind").get<std::string>();

  if (kind == "cayley") {
    if (j.contains("degree") || j.contains("generators"))
      throw GroupError("group json: cayley shape with perm fields");
    if (!j.contains("table") || !j.at("table").is_array())
      throw GroupError("group json: cayley shape needs array 'table'");
    std::vector<std::vector<int>> table;
    for (const auto& row : j.at("table")) {
      if (!row.is_array()) throw GroupError("group json: table rows must be arrays");
      table.emplace_back();
      for (const auto& v : row) {
        if (!v.is_number_integer())
          throw GroupError("group json: table entries must be integers");
        table.back().push_back(v.get<int>());
      }
    }
    return Group::from_cayley_table(table, name, cap);
  }

  if (kind == "perm") {
    if (j.contains("table")) throw GroupError("group json: perm shape with 'table'");
    if (!j.contains("degree") || !j.at("degree").is_number_integer())
      throw GroupError("group json: perm shape needs integer 'degree'");
    if (!j.contains("generators") || !j.at("generators").is_array() ||
        j.at("generators").empty())
      throw GroupError("group json: perm shape needs nonempty 'generators'");
    const int degree = j.at("degree").get<int>();
    std::vector<Permutation> gens;
    for (const auto& arr : j.at("generators")) {
      if (!arr.is_array() || static_cast<int>(arr.size()) != degree)
        throw GroupError("group json: each generator must list " +
                         std::to_string(degree) + " images");
      Permutation p;
      for (const auto& v : arr) {
        if (!v.is_number_integer())
          throw GroupError("group json: generator images must be integers");
        p.images.push_back(v.get<int>());
      }
      gens.push_back(std::move(p));
    }
    return Group::from_permutations(gens, name, cap);
  }

  throw GroupError("group json: unknown kind '" + kind + "'");
}

inline Group load_group_file(const std::string& path,
                             std::size_t cap = kDefaultOrderCap) {
  std::ifstream in(path);
  if (!in) throw GroupError("cannot open group file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw GroupError("group file " + path + ": " + e.what());
  }
  try {
    return group_from_json(j, cap);
  } catch (const GroupError& e) {
    throw GroupError(std::string(e.what()) + " (" + path + ")");
  }
}

// Loads every *.json in a directory, sorted by filename so catalogs built
// from the same directory are identical.
inline std::vector<CatalogEntry> load_groups_dir(const std::string& dir,
                                                 std::size_t cap = kDefaultOrderCap) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw GroupError("not a directory: " + dir);
  std::vector<fs::path> paths;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      paths.push_back(entry.path());
  std::sort(paths.begin(), paths.end());

  std::vector<CatalogEntry> out;
  for (const auto& p : paths) {
    Group g = load_group_file(p.string(), cap);
    std::string name = g.name();
    out.push_back(CatalogEntry{std::move(name), std::move(g), "file:" + p.string()});
  }
  return out;
}

}  // namespace subcover
