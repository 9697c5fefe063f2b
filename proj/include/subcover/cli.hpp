#pragma once

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "subcover/catalog.hpp"
#include "subcover/covering.hpp"
#include "subcover/errors.hpp"
#include "subcover/group.hpp"
#include "subcover/group_io.hpp"
#include "subcover/rational.hpp"
#include "subcover/report.hpp"
#include "subcover/subgroups.hpp"
#include "subcover/union_max.hpp"

namespace subcover {
namespace cli {

namespace detail {

struct CommonOpts {
  std::string format = "json";
  std::string out_path;
  std::string groups_dir;
};

inline void add_common(CLI::App* sub, CommonOpts& opts) {
  sub->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  sub->add_option("--out", opts.out_path, "Write the report to this file");
  sub->add_option("--groups-dir", opts.groups_dir,
                  "Directory of extra group JSON files merged into the catalog");
}

inline std::vector<CatalogEntry> build_catalog(int max_order,
                                               const std::string& groups_dir) {
  std::vector<CatalogEntry> extra;
  if (!groups_dir.empty()) extra = load_groups_dir(groups_dir);
  return scan_catalog(max_order, extra);
}

// Resolve a single-group spec: the grammar first; when it does not know the
// name and --groups-dir was given, a case-insensitive match on the names of
// the loaded extra groups.
inline Group resolve_group(const std::string& spec,
                           const std::string& groups_dir) {
  try {
    return make(spec);
  } catch (const UnknownSpec&) {
    if (groups_dir.empty()) throw;
    const auto upper = [](std::string s) {
      for (char& c : s)
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      return s;
    };
    const std::string want = upper(spec);
    for (auto& e : load_groups_dir(groups_dir))
      if (upper(e.name) == want) return std::move(e.group);
    throw;
  }
}

inline Rational parse_ratio(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(std::stoll(s));
  return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

// All proper-subgroup ids of a lattice: every id except the whole group.
inline std::vector<int> proper_ids(const SubgroupLattice& lat) {
  std::vector<int> ids(lat.proper_count());
  for (int i = 0; i < lat.proper_count(); ++i) ids[i] = i;
  return ids;
}

// Integer form of the (*) check for one subset, over every designation:
// with s_i = |H_i| and u = |union|, it holds for designation d iff
//   u * n <= n * sum(s) - s_d * (sum(s) - s_d).
inline bool star_holds_all_designations(std::int64_t n, std::int64_t u,
                                        const std::vector<int>& sizes) {
  std::int64_t sum = 0;
  for (int s : sizes) sum += s;
  for (int s : sizes)
    if (u * n > n * sum - static_cast<std::int64_t>(s) * (sum - s)) return false;
  return true;
}

// ----- sigma ----------------------------------------------------------

inline OrderedJson sigma_row(const Group& g, const SubgroupLattice& lat) {
  const CoverResult exact = sigma_exact(g, lat);
  const SigmaClass cls = sigma_classifier(g, lat);
  OrderedJson row;
  row["group"] = g.name();
  row["order"] = g.order();
  row["sigma"] = sigma_json(exact);
  row["certificate"] = subgroup_elements(lat, exact.certificate);
  row["classifier"] = to_string(cls.value);
  row["reason"] = cls.reason;
  row["agreement"] = sigma_consistent(exact, cls) && cls.forms_agree;
  return row;
}

// ----- verify suites --------------------------------------------------

inline OrderedJson c2_row(const CatalogEntry& e, const SubgroupLattice& lat) {
  const C2Verdict v = verify_c2(e.group, lat);
  OrderedJson row;
  row["group"] = e.name;
  row["order"] = e.group.order();
  row["k"] = 2;
  row["mu"] = v.witness.union_size;
  row["ratio"] = v.witness.ratio.str();
  row["bound"] = "3/4";
  row["equality"] = v.equality;
  row["proof_form"] = v.proof_form;
  row["index_form"] = v.index_form;
  row["group_form"] = v.group_form;
  row["forms_agree"] = v.forms_agree;
  row["holds"] = v.bound_holds && v.forms_agree;
  row["witness"] = subgroup_elements(lat, v.witness.subgroup_ids);
  return row;
}

inline OrderedJson c3_row(const CatalogEntry& e, const SubgroupLattice& lat,
                          bool odd_suite) {
  OrderedJson row;
  row["group"] = e.name;
  row["order"] = e.group.order();
  row["k"] = 3;
  if (odd_suite) {
    const C3OddVerdict v = verify_c3_odd(e.group, lat);
    row["sigma"] = sigma_json(v.sigma);
    row["applicable"] = v.applicable;
    row["mu"] = v.witness.union_size;
    row["ratio"] = v.witness.ratio.str();
    row["bound"] = "7/9";
    row["equality"] = v.equality;
    row["proof_form"] = v.proof_form;
    row["index_form"] = v.index_form;
    row["forms_agree"] = v.forms_agree;
    row["holds"] = !v.applicable || (v.bound_holds && v.forms_agree);
    row["witness"] = subgroup_elements(lat, v.witness.subgroup_ids);
  } else {
    const C3Verdict v = verify_c3(e.group, lat);
    row["sigma"] = sigma_json(v.sigma);
    row["applicable"] = v.applicable;
    row["mu"] = v.witness.union_size;
    row["ratio"] = v.witness.ratio.str();
    row["bound"] = "5/6";
    row["equality"] = v.equality;
    row["proof_form"] = v.proof_form;
    row["index_form"] = v.index_form;
    row["forms_agree"] = v.forms_agree;
    row["holds"] = !v.applicable || (v.bound_holds && v.forms_agree);
    row["witness"] = subgroup_elements(lat, v.witness.subgroup_ids);
  }
  return row;
}

// Exhaustive (*) over all subsets of at most `max_subset` distinct proper
// subgroups, every designation. Bitmask unions keep the inner loop in
// plain integers; the caller cross-checks a sample against star_bound.
inline OrderedJson star_row(const CatalogEntry& e, const SubgroupLattice& lat,
                            int max_subset) {
  const int n = e.group.order();
  const std::vector<int> ids = proper_ids(lat);
  std::vector<std::uint64_t> masks;
  std::vector<int> sizes;
  for (int id : ids) {
    std::uint64_t m = 0;
    for (int x : lat.subgroups[id].members.members()) m |= 1ull << x;
    masks.push_back(m);
    sizes.push_back(lat.subgroups[id].order);
  }

  std::int64_t subsets = 0;
  bool holds = true;
  std::vector<int> chosen_sizes;
  // DFS over subsets in id order; every nonempty subset of size <= max_subset.
  std::function<void(std::size_t, std::uint64_t)> dfs = [&](std::size_t from,
                                                            std::uint64_t u) {
    if (!holds) return;
    if (static_cast<int>(chosen_sizes.size()) == max_subset) return;
    for (std::size_t i = from; i < masks.size(); ++i) {
      const std::uint64_t nu = u | masks[i];
      chosen_sizes.push_back(sizes[i]);
      ++subsets;
      if (!star_holds_all_designations(n, std::popcount(nu), chosen_sizes))
        holds = false;
      else
        dfs(i + 1, nu);
      chosen_sizes.pop_back();
      if (!holds) return;
    }
  };
  dfs(0, 0);

  OrderedJson row;
  row["group"] = e.name;
  row["order"] = n;
  row["subsets"] = subsets;
  row["max_subset"] = max_subset;
  row["holds"] = holds;
  return row;
}

// ----- scan -----------------------------------------------------------

inline OrderedJson scan_row_json(const ScanRow& row, const SubgroupLattice& lat) {
  OrderedJson j;
  j["group"] = row.group;
  j["order"] = row.order;
  j["sigma"] = sigma_json(row.sigma);
  j["k"] = row.witness.k;
  j["mu"] = row.witness.union_size;
  j["ratio"] = row.witness.ratio.str();
  j["witness"] = subgroup_elements(lat, row.witness.subgroup_ids);
  return j;
}

// ----- probe-star -----------------------------------------------------

inline OrderedJson probe_star_row(const CatalogEntry& e,
                                  const SubgroupLattice& lat, int k,
                                  int samples, std::uint32_t seed) {
  const int n = e.group.order();
  const int propers = lat.proper_count();
  const int kk = std::min(k, propers);
  OrderedJson row;
  row["group"] = e.name;
  row["order"] = n;
  row["k"] = kk;

  if (kk == 0) {
    row["samples"] = 0;
    row["max_ratio"] = "0/1";
    row["holds"] = true;
    return row;
  }

  std::mt19937 rng(seed);
  bool holds = true;
  Rational max_ratio(0);
  for (int s = 0; s < samples && holds; ++s) {
    // k distinct proper ids; modulo keeps the stream portable.
    std::vector<int> pick;
    while (static_cast<int>(pick.size()) < kk) {
      const int id = static_cast<int>(rng() % propers);
      if (std::find(pick.begin(), pick.end(), id) == pick.end())
        pick.push_back(id);
    }
    ElementSet u(n);
    u.set(0);
    std::vector<int> sizes;
    for (int id : pick) {
      u = u.unite(lat.subgroups[id].members);
      sizes.push_back(lat.subgroups[id].order);
    }
    if (!star_holds_all_designations(n, u.size(), sizes)) holds = false;
    const Rational ratio(u.size(), n);
    if (max_ratio < ratio) max_ratio = ratio;
  }
  row["samples"] = samples;
  row["max_ratio"] = max_ratio.str();
  row["holds"] = holds;
  return row;
}

}  // namespace detail

// Entry point used by the binary and the tests. Parses argv (without the
// program name), runs one subcommand, writes the report to stdout or
// --out. Exit codes: 0 success, 1 usage or input errors, 2 when a verify
// or probe-star assertion row fails.
inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Covering numbers and maximal subgroup unions of small finite groups"};
  app.name("subcover");
  app.require_subcommand(1);

  // sigma
  std::string sigma_spec;
  detail::CommonOpts sigma_opts;
  CLI::App* sigma_cmd =
      app.add_subcommand("sigma", "Covering number of one group");
  sigma_cmd->add_option("group-spec", sigma_spec, "Group spec, e.g. A4 or C3xC3")
      ->required();
  detail::add_common(sigma_cmd, sigma_opts);

  // mu
  std::string mu_spec;
  int mu_kk = 0;
  detail::CommonOpts mu_opts;
  CLI::App* mu_cmd =
      app.add_subcommand("mu", "Maximum k-fold proper subgroup union");
  mu_cmd->add_option("group-spec", mu_spec, "Group spec")->required();
  mu_cmd->add_option("--k", mu_kk, "Number of subgroups")->required();
  detail::add_common(mu_cmd, mu_opts);

  // verify
  std::string suite;
  int verify_max = 0;
  int verify_jobs = 1;
  detail::CommonOpts verify_opts;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "Check a theorem suite over the catalog");
  verify_cmd->add_option("--suite", suite, "c2 | c3 | c3odd | star")
      ->check(CLI::IsMember({"c2", "c3", "c3odd", "star"}))
      ->required();
  verify_cmd->add_option("--max-order", verify_max,
                         "Catalog order cap (default 60; c3odd 81, star 24)");
  verify_cmd->add_option("--jobs", verify_jobs, "Worker threads");
  detail::add_common(verify_cmd, verify_opts);

  // scan
  int scan_k = 0;
  int scan_max = 60;
  int scan_jobs = 1;
  std::string scan_cache;
  detail::CommonOpts scan_opts;
  CLI::App* scan_cmd =
      app.add_subcommand("scan", "Empirical c_k scan over the catalog");
  scan_cmd->add_option("--k", scan_k, "Number of subgroups")->required();
  scan_cmd->add_option("--max-order", scan_max, "Catalog order cap")
      ->capture_default_str();
  scan_cmd->add_option("--jobs", scan_jobs, "Worker threads")
      ->capture_default_str();
  scan_cmd->add_option("--cache", scan_cache,
                       "Line-delimited JSON result cache, consulted before recomputing");
  detail::add_common(scan_cmd, scan_opts);

  // conjecture
  int conj_k = 0;
  int conj_max = 60;
  detail::CommonOpts conj_opts;
  CLI::App* conj_cmd = app.add_subcommand(
      "conjecture", "Probe the maximal-union conjecture on groups with sigma = k+1");
  conj_cmd->add_option("--k", conj_k, "Number of subgroups")->required();
  conj_cmd->add_option("--max-order", conj_max, "Catalog order cap")
      ->capture_default_str();
  detail::add_common(conj_cmd, conj_opts);

  // probe-star
  std::string probe_spec;
  int probe_k = 4;
  int probe_samples = 100;
  std::uint32_t probe_seed = 1;
  int probe_max = 24;
  detail::CommonOpts probe_opts;
  CLI::App* probe_cmd = app.add_subcommand(
      "probe-star", "Randomly sample subgroup tuples and check the (*) bound");
  probe_cmd->add_option("group-spec", probe_spec,
                        "Optional single group; default scans the catalog");
  probe_cmd->add_option("--k", probe_k, "Tuple size")->capture_default_str();
  probe_cmd->add_option("--samples", probe_samples, "Tuples per group")
      ->capture_default_str();
  probe_cmd->add_option("--seed", probe_seed, "PRNG seed")->capture_default_str();
  probe_cmd->add_option("--max-order", probe_max, "Catalog order cap")
      ->capture_default_str();
  detail::add_common(probe_cmd, probe_opts);

  std::vector<const char*> argv;
  argv.push_back("subcover");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (sigma_cmd->parsed()) {
      const Group g = detail::resolve_group(sigma_spec, sigma_opts.groups_dir);
      const SubgroupLattice lat = all_subgroups(g);
      return emit_report(detail::sigma_row(g, lat), sigma_opts.format,
                         sigma_opts.out_path, out, err);
    }

    if (mu_cmd->parsed()) {
      if (mu_kk < 1) {
        err << "mu: --k must be at least 1\n";
        return 1;
      }
      const Group g = detail::resolve_group(mu_spec, mu_opts.groups_dir);
      const SubgroupLattice lat = all_subgroups(g);
      const UnionWitness w = mu_k(g, lat, mu_kk);
      OrderedJson row;
      row["group"] = g.name();
      row["order"] = g.order();
      row["k"] = w.k;
      row["mu"] = w.union_size;
      row["ratio"] = w.ratio.str();
      row["bound"] = star_bound(w.ratios).str();
      OrderedJson ratios = OrderedJson::array();
      for (const Rational& r : w.ratios) ratios.push_back(r.str());
      row["ratios"] = ratios;
      row["witness"] = subgroup_elements(lat, w.subgroup_ids);
      return emit_report(row, mu_opts.format, mu_opts.out_path, out, err);
    }

    if (verify_cmd->parsed()) {
      if (verify_max <= 0)
        verify_max = suite == "star" ? 24 : (suite == "c3odd" ? 81 : 60);
      auto entries = detail::build_catalog(verify_max, verify_opts.groups_dir);
      OrderedJson rows = OrderedJson::array();
      bool all_hold = true;
      for (const auto& e : entries) {
        if (suite == "c3odd" && e.group.order() % 2 == 0) continue;
        const SubgroupLattice lat = all_subgroups(e.group);
        OrderedJson row;
        if (suite == "c2") row = detail::c2_row(e, lat);
        else if (suite == "c3") row = detail::c3_row(e, lat, false);
        else if (suite == "c3odd") row = detail::c3_row(e, lat, true);
        else row = detail::star_row(e, lat, 5);
        all_hold = all_hold && row["holds"].get<bool>();
        rows.push_back(std::move(row));
      }
      std::sort(rows.begin(), rows.end(), [](const OrderedJson& a, const OrderedJson& b) {
        return a.at("group").get<std::string>() < b.at("group").get<std::string>();
      });
      OrderedJson doc;
      doc["suite"] = suite;
      doc["max_order"] = verify_max;
      doc["all_hold"] = all_hold;
      doc["rows"] = std::move(rows);
      const int rc = emit_report(doc, verify_opts.format, verify_opts.out_path, out, err);
      if (rc != 0) return rc;
      return all_hold ? 0 : 2;
    }

    if (scan_cmd->parsed()) {
      if (scan_k < 1) {
        err << "scan: --k must be at least 1\n";
        return 1;
      }
      auto entries = detail::build_catalog(scan_max, scan_opts.groups_dir);
      std::unique_ptr<Cache> cache;
      if (!scan_cache.empty()) cache = std::make_unique<Cache>(scan_cache, err);

      const std::string tag = "|scan k=" + std::to_string(scan_k);
      std::vector<OrderedJson> rows;
      std::vector<CatalogEntry> missing;
      for (const auto& e : entries) {
        if (cache) {
          if (auto hit = cache->get(e.name + tag)) {
            if (!(hit->is_object() && hit->contains("excluded")))
              rows.push_back(*hit);
            continue;
          }
        }
        missing.push_back(e);
      }

      const ScanReport rep = empirical_ck_scan(missing, scan_k, scan_jobs);
      // Rebuild each row's lattice for the element-list rendering; the
      // scan rows only carry lattice ids.
      for (const auto& srow : rep.rows) {
        const CatalogEntry* src = nullptr;
        for (const auto& e : missing)
          if (e.name == srow.group) src = &e;
        if (src == nullptr) throw GroupError("scan row without a catalog entry");
        const SubgroupLattice lat = all_subgroups(src->group);
        OrderedJson j = detail::scan_row_json(srow, lat);
        if (cache) cache->put(srow.group + tag, j);
        rows.push_back(std::move(j));
      }
      if (cache) {
        // Negative results are cached too, so a warm scan skips them.
        for (const auto& e : missing) {
          bool has_row = false;
          for (const auto& srow : rep.rows) has_row = has_row || srow.group == e.name;
          if (!has_row) {
            OrderedJson neg;
            neg["excluded"] = true;
            cache->put(e.name + tag, neg);
          }
        }
      }

      std::sort(rows.begin(), rows.end(), [](const OrderedJson& a, const OrderedJson& b) {
        return a.at("group").get<std::string>() < b.at("group").get<std::string>();
      });
      Rational max_ratio(0);
      std::string max_group;
      for (const auto& row : rows) {
        const Rational r = detail::parse_ratio(row.at("ratio").get<std::string>());
        if (max_ratio < r) {
          max_ratio = r;
          max_group = row.at("group").get<std::string>();
        }
      }
      OrderedJson out_rows = OrderedJson::array();
      for (auto& row : rows) {
        OrderedJson flags;
        flags["sigma_exceeds_k"] = true;
        flags["attains_max"] =
            row.at("group").get<std::string>() == max_group;
        row["flags"] = std::move(flags);
        out_rows.push_back(std::move(row));
      }
      OrderedJson doc;
      doc["k"] = scan_k;
      doc["max_order"] = scan_max;
      doc["max_ratio"] = max_ratio.str();
      doc["max_group"] = max_group;
      doc["rows"] = std::move(out_rows);
      return emit_report(doc, scan_opts.format, scan_opts.out_path, out, err);
    }

    if (conj_cmd->parsed()) {
      if (conj_k < 1) {
        err << "conjecture: --k must be at least 1\n";
        return 1;
      }
      auto entries = detail::build_catalog(conj_max, conj_opts.groups_dir);
      OrderedJson rows = OrderedJson::array();
      bool all_satisfied = true;
      for (const auto& e : entries) {
        const SubgroupLattice lat = all_subgroups(e.group);
        const ConjectureReport rep = conjecture_probe(e.group, lat, conj_k);
        if (!rep.sigma_is_k_plus_1) continue;
        OrderedJson row;
        row["group"] = e.name;
        row["order"] = e.group.order();
        row["sigma"] = sigma_json(rep.sigma);
        row["k"] = conj_k;
        row["mu"] = rep.witness.union_size;
        row["ratio"] = rep.witness.ratio.str();
        row["witness"] = subgroup_elements(lat, rep.witness.subgroup_ids);
        if (rep.completer_id >= 0)
          row["completer"] = lat.subgroups[rep.completer_id].members.members();
        else
          row["completer"] = nullptr;
        row["satisfied"] = rep.satisfied;
        all_satisfied = all_satisfied && rep.satisfied;
        rows.push_back(std::move(row));
      }
      std::sort(rows.begin(), rows.end(), [](const OrderedJson& a, const OrderedJson& b) {
        return a.at("group").get<std::string>() < b.at("group").get<std::string>();
      });
      OrderedJson doc;
      doc["k"] = conj_k;
      doc["max_order"] = conj_max;
      doc["all_satisfied"] = all_satisfied;
      doc["rows"] = std::move(rows);
      return emit_report(doc, conj_opts.format, conj_opts.out_path, out, err);
    }

    if (probe_cmd->parsed()) {
      if (probe_k < 1) {
        err << "probe-star: --k must be at least 1\n";
        return 1;
      }
      std::vector<CatalogEntry> entries;
      if (!probe_spec.empty()) {
        Group g = detail::resolve_group(probe_spec, probe_opts.groups_dir);
        std::string name = g.name();
        entries.push_back(CatalogEntry{std::move(name), std::move(g),
                                       "spec:" + probe_spec});
      } else {
        entries = detail::build_catalog(probe_max, probe_opts.groups_dir);
      }
      OrderedJson rows = OrderedJson::array();
      bool all_hold = true;
      for (const auto& e : entries) {
        const SubgroupLattice lat = all_subgroups(e.group);
        OrderedJson row =
            detail::probe_star_row(e, lat, probe_k, probe_samples, probe_seed);
        all_hold = all_hold && row["holds"].get<bool>();
        rows.push_back(std::move(row));
      }
      std::sort(rows.begin(), rows.end(), [](const OrderedJson& a, const OrderedJson& b) {
        return a.at("group").get<std::string>() < b.at("group").get<std::string>();
      });
      OrderedJson doc;
      doc["k"] = probe_k;
      doc["samples"] = probe_samples;
      doc["seed"] = probe_seed;
      doc["all_hold"] = all_hold;
      doc["rows"] = std::move(rows);
      const int rc = emit_report(doc, probe_opts.format, probe_opts.out_path, out, err);
      if (rc != 0) return rc;
      return all_hold ? 0 : 2;
    }
  } catch (const GroupError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace cli
}  // namespace subcover
