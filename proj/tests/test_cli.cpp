#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oracles.hpp"
#include "subcover/cli.hpp"
#include "subcover/errors.hpp"
#include "subcover/group_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
  json doc;  // parsed stdout when it is JSON
};

RunResult run_cli(const std::vector<std::string>& args, bool parse = true) {
  std::ostringstream out, err;
  RunResult r;
  r.code = subcover::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  if (parse && !r.out.empty() && (r.out[0] == '{' || r.out[0] == '['))
    r.doc = json::parse(r.out);
  return r;
}

// Fresh scratch directory under the system temp root.
fs::path scratch(const std::string& leaf) {
  const fs::path dir = fs::temp_directory_path() / "subcover-cli-tests" / leaf;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p);
  f << text;
}

const json* find_row(const json& doc, const std::string& group) {
  for (const auto& row : doc.at("rows"))
    if (row.at("group") == group) return &row;
  return nullptr;
}

}  // namespace

TEST_CASE("cli sigma reports the covering number") {
  const RunResult r = run_cli({"sigma", "A4"});
  REQUIRE(r.code == 0);
  CHECK(r.doc.at("group") == "A4");
  CHECK(r.doc.at("order") == 12);
  CHECK(r.doc.at("sigma") == 5);
  CHECK(r.doc.at("classifier") == "5");
  CHECK(r.doc.at("agreement") == true);
  REQUIRE(r.doc.at("certificate").size() == 5);
  for (const auto& members : r.doc.at("certificate")) {
    CHECK(members.is_array());
    CHECK(members.size() >= 2);
    CHECK(members[0] == 0);
  }
}

TEST_CASE("cli sigma marks cyclic groups uncoverable") {
  const RunResult r = run_cli({"sigma", "C12"});
  REQUIRE(r.code == 0);
  CHECK(r.doc.at("sigma") == "uncoverable");
  CHECK(r.doc.at("classifier") == "Uncoverable");
  CHECK(r.doc.at("certificate").empty());
}

TEST_CASE("cli mu reports the witness and its bound") {
  const RunResult r = run_cli({"mu", "S3", "--k", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.doc.at("group") == "S3");
  CHECK(r.doc.at("k") == 3);
  CHECK(r.doc.at("mu") == 5);
  CHECK(r.doc.at("ratio") == "5/6");
  CHECK(r.doc.at("bound") == "5/6");
  CHECK(r.doc.at("ratios") == json({"1/3", "1/3", "1/2"}));
  REQUIRE(r.doc.at("witness").size() == 3);
  CHECK(r.doc.at("witness")[2].size() == 3);
}

TEST_CASE("cli usage and input errors exit with one") {
  CHECK(run_cli({}).code == 1);
  CHECK(run_cli({"frobnicate"}).code == 1);
  CHECK(run_cli({"sigma"}).code == 1);
  CHECK(run_cli({"mu", "S3"}).code == 1);

  const RunResult bogus = run_cli({"sigma", "Z99"});
  CHECK(bogus.code == 1);
  CHECK(bogus.err.find("unknown group spec") != std::string::npos);

  const RunResult zero = run_cli({"mu", "S3", "--k", "0"});
  CHECK(zero.code == 1);
  CHECK(zero.err.find("--k must be at least 1") != std::string::npos);

  CHECK(run_cli({"verify", "--suite", "bogus"}).code == 1);
  CHECK(run_cli({"scan", "--k", "4", "--groups-dir", "/no/such/dir"}).code == 1);
}

TEST_CASE("cli help exits with zero") {
  const RunResult top = run_cli({"--help"}, false);
  CHECK(top.code == 0);
  CHECK(top.out.find("sigma") != std::string::npos);
  CHECK(top.out.find("verify") != std::string::npos);
  CHECK(run_cli({"sigma", "--help"}, false).code == 0);
}

TEST_CASE("cli verify c2 over a small catalog") {
  const RunResult r = run_cli({"verify", "--suite", "c2", "--max-order", "12"});
  REQUIRE(r.code == 0);
  CHECK(r.doc.at("suite") == "c2");
  CHECK(r.doc.at("max_order") == 12);
  CHECK(r.doc.at("all_hold") == true);

  const json* klein = find_row(r.doc, "C2xC2");
  REQUIRE(klein != nullptr);
  CHECK(klein->at("ratio") == "3/4");
  CHECK(klein->at("equality") == true);
  CHECK(klein->at("holds") == true);

  const json* s3 = find_row(r.doc, "S3");
  REQUIRE(s3 != nullptr);
  CHECK(s3->at("equality") == false);
  CHECK(s3->at("holds") == true);

  std::string prev;
  for (const auto& row : r.doc.at("rows")) {
    const std::string name = row.at("group");
    CHECK(prev < name);
    prev = name;
  }
}

TEST_CASE("cli verify c3odd keeps only odd orders") {
  const RunResult r = run_cli({"verify", "--suite", "c3odd", "--max-order", "9"});
  REQUIRE(r.code == 0);
  CHECK(r.doc.at("all_hold") == true);
  for (const auto& row : r.doc.at("rows"))
    CHECK(row.at("order").get<int>() % 2 == 1);
  const json* e9 = find_row(r.doc, "C3xC3");
  REQUIRE(e9 != nullptr);
  CHECK(e9->at("ratio") == "7/9");
  CHECK(e9->at("equality") == true);
  CHECK(e9->at("bound") == "7/9");
}

TEST_CASE("cli verify star counts the subsets it swept") {
  const RunResult r = run_cli({"verify", "--suite", "star", "--max-order", "8"});
  REQUIRE(r.code == 0);
  CHECK(r.doc.at("all_hold") == true);
  for (const auto& row : r.doc.at("rows")) {
    CHECK(row.at("max_subset") == 5);
    CHECK(row.at("holds") == true);
    if (row.at("order").get<int>() > 1) CHECK(row.at("subsets").get<long long>() > 0);
  }
}

TEST_CASE("cli csv output projects the scalar columns") {
  const RunResult r = run_cli({"sigma", "A4", "--format", "csv"}, false);
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("group,order,sigma", 0) == 0);
  CHECK(r.out.find("A4,12,5") != std::string::npos);

  const RunResult rows = run_cli({"verify", "--suite", "c2", "--max-order", "8",
                                  "--format", "csv"},
                                 false);
  REQUIRE(rows.code == 0);
  CHECK(rows.out.rfind("group,order,k,mu,ratio", 0) == 0);
  CHECK(rows.out.find("C2xC2,4,2,3,3/4") != std::string::npos);
}

TEST_CASE("cli --out writes the report to a file") {
  const fs::path dir = scratch("out");
  const fs::path path = dir / "sigma.json";
  const RunResult r = run_cli({"sigma", "A4", "--out", path.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  REQUIRE(in.good());
  json doc;
  in >> doc;
  CHECK(doc.at("sigma") == 5);

  const RunResult bad =
      run_cli({"sigma", "A4", "--out", "/no/such/dir/report.json"});
  CHECK(bad.code == 1);
  CHECK_FALSE(bad.err.empty());
}

TEST_CASE("cli scan filters, ranks, and flags the maximum") {
  const RunResult r = run_cli({"scan", "--k", "4", "--max-order", "12"});
  REQUIRE(r.code == 0);
  CHECK(r.doc.at("k") == 4);
  CHECK(r.doc.at("max_ratio") == "5/6");
  CHECK(r.doc.at("max_group") == "A4");

  const json* a4 = find_row(r.doc, "A4");
  REQUIRE(a4 != nullptr);
  CHECK(a4->at("sigma") == 5);
  CHECK(a4->at("mu") == 10);
  CHECK(a4->at("flags").at("attains_max") == true);
  CHECK(a4->at("flags").at("sigma_exceeds_k") == true);

  CHECK(find_row(r.doc, "S3") == nullptr);     // sigma = 4 <= k
  CHECK(find_row(r.doc, "C2xC2") == nullptr);  // sigma = 3 <= k
  const json* c12 = find_row(r.doc, "C12");
  REQUIRE(c12 != nullptr);
  CHECK(c12->at("sigma") == "uncoverable");
}

TEST_CASE("cli scan cache round trips byte for byte") {
  const fs::path dir = scratch("cache");
  const std::string cache = (dir / "scan.ldjson").string();
  const std::vector<std::string> args = {"scan", "--k", "4", "--max-order",
                                         "12", "--cache", cache};

  const RunResult cold = run_cli(args, false);
  REQUIRE(cold.code == 0);
  REQUIRE(fs::exists(cache));

  const RunResult warm = run_cli(args, false);
  REQUIRE(warm.code == 0);
  CHECK(warm.out == cold.out);

  // Negative results are cached so excluded groups are not recomputed.
  std::ifstream in(cache);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  CHECK(text.find("\"excluded\":true") != std::string::npos);

  // A corrupt line warns and is skipped; the report is unchanged.
  std::ofstream(cache, std::ios::app) << "this is not json\n";
  const RunResult repaired = run_cli(args, false);
  REQUIRE(repaired.code == 0);
  CHECK(repaired.out == cold.out);
  CHECK(repaired.err.find("cache") != std::string::npos);
}

TEST_CASE("cli probe-star is deterministic for a fixed seed") {
  const std::vector<std::string> args = {"probe-star", "--max-order", "12",
                                         "--seed", "7", "--samples", "40"};
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args, false);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.doc.at("seed") == 7);
  CHECK(a.doc.at("k") == 4);
  CHECK(a.doc.at("samples") == 40);
  CHECK(a.doc.at("all_hold") == true);

  const json* c1 = find_row(a.doc, "C1");
  REQUIRE(c1 != nullptr);
  CHECK(c1->at("k") == 0);
  CHECK(c1->at("samples") == 0);
  CHECK(c1->at("max_ratio") == "0/1");
}

TEST_CASE("cli probe-star accepts a single group spec") {
  const RunResult r =
      run_cli({"probe-star", "Q8", "--k", "2", "--samples", "200"});
  REQUIRE(r.code == 0);
  REQUIRE(r.doc.at("rows").size() == 1);
  const json& row = r.doc.at("rows")[0];
  CHECK(row.at("group") == "Q8");
  CHECK(row.at("holds") == true);
  CHECK(row.at("max_ratio") == "3/4");  // two C4s peak at 6/8
}

TEST_CASE("cli conjecture lists the qualifying groups") {
  const RunResult r = run_cli({"conjecture", "--k", "4", "--max-order", "24"});
  REQUIRE(r.code == 0);
  CHECK(r.doc.at("all_satisfied") == true);
  const json* a4 = find_row(r.doc, "A4");
  REQUIRE(a4 != nullptr);
  CHECK(a4->at("sigma") == 5);
  CHECK(a4->at("mu") == 10);
  CHECK(a4->at("satisfied") == true);
  CHECK(a4->at("completer").is_array());
  CHECK(find_row(r.doc, "S3") == nullptr);  // sigma = 4 != k+1
}

TEST_CASE("cli merges groups from a directory into the catalog") {
  const fs::path dir = scratch("groups");
  json f21;
  f21["name"] = "F21";
  f21["kind"] = "cayley";
  f21["table"] = oracle::frobenius21_table();
  write_file(dir / "f21.json", f21.dump());

  json dup;
  dup["name"] = "MyC6";
  dup["kind"] = "perm";
  dup["degree"] = 5;
  dup["generators"] = json::array({{1, 0, 2, 3, 4}, {0, 1, 3, 4, 2}});
  write_file(dir / "dup.json", dup.dump());
  write_file(dir / "notes.txt", "ignored");

  const RunResult r = run_cli({"scan", "--k", "4", "--max-order", "21",
                               "--groups-dir", dir.string()});
  REQUIRE(r.code == 0);
  const json* f21_row = find_row(r.doc, "F21");
  REQUIRE(f21_row != nullptr);
  CHECK(f21_row->at("sigma") == 8);
  CHECK(f21_row->at("order") == 21);
  CHECK(find_row(r.doc, "MyC6") == nullptr);  // isomorphic to the C6 entry

  // Single-group commands resolve grammar-unknown names against the same
  // directory, case-insensitively; without the directory the name stays
  // unknown.
  const RunResult single =
      run_cli({"sigma", "f21", "--groups-dir", dir.string()});
  REQUIRE(single.code == 0);
  CHECK(single.doc.at("group") == "F21");
  CHECK(single.doc.at("sigma") == 8);

  const RunResult mu =
      run_cli({"mu", "F21", "--k", "2", "--groups-dir", dir.string()});
  REQUIRE(mu.code == 0);
  CHECK(mu.doc.at("order") == 21);

  const RunResult grammar_wins =
      run_cli({"sigma", "myc6", "--groups-dir", dir.string()});
  REQUIRE(grammar_wins.code == 0);
  CHECK(grammar_wins.doc.at("group") == "MyC6");
  CHECK(grammar_wins.doc.at("order") == 6);

  CHECK(run_cli({"sigma", "F21"}, false).code == 1);
}

TEST_CASE("group json accepts both shapes and rejects hybrids") {
  using subcover::GroupError;
  using subcover::group_from_json;

  const json cayley = {{"name", "Z2"},
                       {"kind", "cayley"},
                       {"table", json::array({{0, 1}, {1, 0}})}};
  CHECK(group_from_json(cayley).order() == 2);

  json perm;
  perm["name"] = "S3";
  perm["kind"] = "perm";
  perm["degree"] = 3;
  perm["generators"] = json::array({{1, 0, 2}, {1, 2, 0}});
  CHECK(group_from_json(perm).order() == 6);

  json hybrid = perm;
  hybrid["table"] = json::array({{0}});
  CHECK_THROWS_AS(group_from_json(hybrid), GroupError);

  json cayley_with_degree = cayley;
  cayley_with_degree["degree"] = 2;
  CHECK_THROWS_AS(group_from_json(cayley_with_degree), GroupError);

  for (const char* missing : {"name", "kind"}) {
    json j = cayley;
    j.erase(missing);
    INFO("missing " << missing);
    CHECK_THROWS_AS(group_from_json(j), GroupError);
  }

  json bad_kind = cayley;
  bad_kind["kind"] = "matrix";
  CHECK_THROWS_AS(group_from_json(bad_kind), GroupError);

  json short_gen = perm;
  short_gen["generators"] = json::array({{1, 0}});
  CHECK_THROWS_AS(group_from_json(short_gen), GroupError);

  json no_gens = perm;
  no_gens["generators"] = json::array();
  CHECK_THROWS_AS(group_from_json(no_gens), GroupError);

  json not_bijective = perm;
  not_bijective["generators"] = json::array({{0, 0, 2}});
  CHECK_THROWS_AS(group_from_json(not_bijective), GroupError);

  json non_integer = cayley;
  non_integer["table"] = json::array({{0, 1}, {1, 0.5}});
  CHECK_THROWS_AS(group_from_json(non_integer), GroupError);
}

TEST_CASE("group files load with path-tagged errors") {
  using subcover::GroupError;
  const fs::path dir = scratch("files");

  CHECK_THROWS_AS(subcover::load_group_file((dir / "absent.json").string()),
                  GroupError);

  const fs::path broken = dir / "broken.json";
  write_file(broken, "{ not json");
  try {
    subcover::load_group_file(broken.string());
    FAIL("expected a parse error");
  } catch (const GroupError& e) {
    CHECK(std::string(e.what()).find("broken.json") != std::string::npos);
  }

  const fs::path good = dir / "c3.json";
  write_file(good, R"({"name":"Z3","kind":"cayley",
                       "table":[[0,1,2],[1,2,0],[2,0,1]]})");
  CHECK(subcover::load_group_file(good.string()).order() == 3);

  // A directory load surfaces the first broken file.
  CHECK_THROWS_AS(subcover::load_groups_dir(dir.string()), GroupError);
  CHECK_THROWS_AS(subcover::load_groups_dir((dir / "nodir").string()),
                  GroupError);

  const fs::path clean = scratch("files-clean");
  write_file(clean / "b_second.json",
             R"({"name":"B","kind":"cayley","table":[[0,1],[1,0]]})");
  write_file(clean / "a_first.json",
             R"({"name":"A","kind":"cayley","table":[[0]]})");
  write_file(clean / "ignored.txt", "not a group");
  const auto entries = subcover::load_groups_dir(clean.string());
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].name == "A");  // sorted by filename
  CHECK(entries[1].name == "B");
  CHECK(entries[0].provenance.rfind("file:", 0) == 0);
}
