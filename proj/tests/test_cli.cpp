#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "formats.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "koszulhh");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = koszulhh::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "koszulhh_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

void write_file(const fs::path& path, const json& j) { std::ofstream(path) << j.dump(2); }

const json kStableFixture = {{"vDim", 0}, {"atoms", 3}, {"k", 3}, {"s", -1}, {"values", {{"x1,x2,x1", "100"}}}};

}  // namespace

TEST_CASE("hh-grid JSON report") {
  const auto r = run({"hh-grid", "--v-dim", "0", "--atoms", "3", "--k-max", "3", "--s-min", "-2", "--s-max", "0"});
  REQUIRE(r.code == koszulhh::cli::kOk);
  const auto doc = r.doc();
  CHECK(doc["manifest"]["command"] == "hh-grid");
  CHECK(doc["manifest"].contains("seed"));
  CHECK(doc["manifest"].contains("cap"));
  CHECK(doc["manifest"].contains("version"));
  CHECK_FALSE(doc["manifest"].contains("wallTimeSeconds"));
  CHECK(doc["algebra"]["vDim"] == 0);
  CHECK(doc["algebra"]["atoms"] == 3);
  const auto& rows = doc["results"];
  CHECK(rows.size() == 4 * 3);
  for (const auto& row : rows) {
    const int k = row["k"], s = row["s"];
    CHECK(row["hh"].get<std::size_t>() == row["cocycles"].get<std::size_t>() - row["coboundaries"].get<std::size_t>());
    if (k == 3 && s == -1) CHECK(row["hh"] == 0);
  }
}

TEST_CASE("hh-grid CSV header and determinism") {
  const std::vector<std::string> args{"--format", "csv", "hh-grid", "--v-dim", "1", "--atoms", "2", "--k-max", "2"};
  const auto a = run(args);
  const auto b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out.rfind("k,s,cochains,cocycles,coboundaries,hh\n", 0) == 0);
  CHECK(a.out == b.out);
  const auto j1 = run({"--seed", "4", "massey", "--samples", "20"});
  const auto j2 = run({"--seed", "4", "massey", "--samples", "20"});
  CHECK(j1.code == 0);
  CHECK(j1.out == j2.out);
  CHECK(run({"--timing", "hh-grid", "--k-max", "1"}).doc()["manifest"].contains("wallTimeSeconds"));
}

TEST_CASE("kadeishvili, koszul, bottom and bar commands") {
  CHECK(run({"kadeishvili", "--v-dim", "0", "--atoms", "3", "--k-max", "5"}).code == 0);
  const auto kz = run({"koszul", "--v-dim", "1", "--atoms", "2", "--max-internal-degree", "4"});
  CHECK(kz.code == 0);
  CHECK(kz.doc()["manifest"]["summary"]["passed"] == true);
  const auto bt = run({"bottom", "--v-dim", "0", "--atoms", "3", "--k-max", "3"});
  CHECK(bt.code == 0);
  for (const auto& row : bt.doc()["results"]) CHECK(row["cocycles"] == 0);
  // Fewer than three generators: reported, not claimed.
  const auto small = run({"bottom", "--v-dim", "0", "--atoms", "1", "--k-max", "2"});
  CHECK(small.code == 0);
  CHECK(small.doc()["manifest"]["summary"]["vanishingClaimed"] == false);
  CHECK(run({"bar", "--v-dim", "0", "--atoms", "2", "--k", "2", "--s", "-1", "--max-internal-degree", "6"}).code == 0);
}

TEST_CASE("solve-coboundary on the stable fixture, inline and from a file") {
  const auto inline_run = run({"solve-coboundary", "--v-dim", "0", "--atoms", "3", "--k", "3", "--s", "-1", "--value",
                               "x1,x2,x1=100"});
  REQUIRE(inline_run.code == 0);
  const auto doc = inline_run.doc();
  CHECK(doc["primitive"]["values"] == json{{"x2,x1", "100"}});
  CHECK(doc["transcript"]["dgEqualsF"] == true);
  CHECK(doc["transcript"]["wordsChecked"] == 12);

  const auto path = scratch("fixture.json");
  write_file(path, kStableFixture);
  const auto from_file = run({"solve-coboundary", "--input", path.string()});
  REQUIRE(from_file.code == 0);
  CHECK(from_file.doc()["primitive"] == doc["primitive"]);

  const auto csv = run({"--format", "csv", "solve-coboundary", "--input", path.string()});
  CHECK(csv.out == "word,value\n\"x2,x1\",100\n");
}

TEST_CASE("zero cocycle has zero primitive") {
  const auto r = run({"solve-coboundary", "--v-dim", "1", "--atoms", "2", "--k", "2", "--s", "0"});
  REQUIRE(r.code == 0);
  CHECK(r.doc()["primitive"]["values"].empty());
}

TEST_CASE("cochain files round trip") {
  const auto path = scratch("roundtrip.json");
  const json input = {{"vDim", 1},     {"atoms", 3}, {"subringBlocks", {{0, 1}, {2}}}, {"k", 2},
                      {"s", -1},       {"values", {{"v1,x1", "0100"}, {"x2,x1", "0001"}}}};
  write_file(path, input);
  const auto parsed = koszulhh::io::cochain_from_json(koszulhh::io::read_json_file(path.string()), {});
  const auto back = koszulhh::io::cochain_to_json(parsed.pair, parsed.cochain);
  CHECK(back["values"] == input["values"]);
  CHECK(back["subringBlocks"] == input["subringBlocks"]);
  CHECK(back["k"] == 2);
  CHECK(back["s"] == -1);
}

TEST_CASE("extend lifts a cocycle and checks it") {
  const auto r = run({"extend", "--v-dim", "1", "--atoms", "3", "--subring", "0,1,2", "--k", "2", "--s", "-1", "--x",
                      "110"});
  REQUIRE(r.code == 0);
  CHECK(r.doc()["checks"]["cocycle"] == true);
  CHECK(r.doc()["checks"]["restrictsToInput"] == true);
  CHECK(r.doc()["extended"]["subringBlocks"] == json{{0, 1}, {2}});
  CHECK(run({"extend", "--v-dim", "1", "--atoms", "3", "--k", "2", "--s", "-1", "--x", "11"}).code == 2);
  CHECK(run({"extend", "--v-dim", "1", "--atoms", "3", "--k", "2", "--s", "-1", "--x", "1a0"}).code == 2);
}

TEST_CASE("dg-algebra files round trip and explicit tuples") {
  const auto h = koszulhh::dg_algebra_from_connected_sum(koszulhh::ConnectedSumAlgebra(1, 2), 5);
  const auto j = koszulhh::io::dg_algebra_to_json(h);
  const auto back = koszulhh::io::dg_algebra_from_json(j);
  CHECK(koszulhh::io::dg_algebra_to_json(back) == j);
  CHECK(back.validate().empty());

  const auto path = scratch("algebra.json");
  write_file(path, j);
  const auto r = run({"massey", "--algebra", path.string(), "--class", "1:100", "--class", "1:100", "--class", "1:100"});
  REQUIRE(r.code == 0);
  CHECK(r.doc()["results"][0]["zero"] == true);

  // x1 x1 is nonzero, so the trivial defining system does not exist.
  const auto bad = run({"massey", "--algebra", path.string(), "--class", "1:010", "--class", "1:010"});
  CHECK(bad.code == 2);
  CHECK_FALSE(bad.err.empty());
}

TEST_CASE("a nonzero product set fails the check") {
  // 1, e, e^2 = f and an acyclic pair g -> h in degrees 3 and 4.
  const json algebra = {{"dims", {1, 1, 1, 1, 1}},
                        {"unit", "1"},
                        {"differential", {{"3", {"1"}}}},
                        {"products",
                         {{"0:0*0:0", "1"}, {"0:0*1:0", "1"}, {"1:0*0:0", "1"}, {"0:0*2:0", "1"}, {"2:0*0:0", "1"},
                          {"0:0*3:0", "1"}, {"3:0*0:0", "1"}, {"0:0*4:0", "1"}, {"4:0*0:0", "1"}, {"1:0*1:0", "1"}}}};
  const auto path = scratch("nonformal.json");
  write_file(path, algebra);
  const auto r = run({"massey", "--algebra", path.string(), "--class", "1:1", "--class", "1:1"});
  CHECK(r.code == koszulhh::cli::kCheckFailed);
  CHECK(r.doc()["results"][0]["containsZero"] == false);
  // Sampling needs a trivial differential.
  CHECK(run({"massey", "--algebra", path.string()}).code == 2);
}

TEST_CASE("error exit codes") {
  // Not a cocycle.
  const auto nc = run({"solve-coboundary", "--v-dim", "0", "--atoms", "3", "--k", "3", "--s", "-1", "--value",
                       "x1,x2,x3=100"});
  CHECK(nc.code == koszulhh::cli::kUsage);
  CHECK_FALSE(nc.err.empty());
  // Unknown flag, missing subcommand, malformed word, missing file.
  CHECK(run({"hh-grid", "--bogus"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"solve-coboundary", "--v-dim", "0", "--atoms", "3", "--k", "2", "--s", "0", "--value", "x1,x1=100"}).code ==
        2);
  CHECK(run({"solve-coboundary", "--input", "/nonexistent/cochain.json"}).code == 2);
  CHECK(run({"--format", "xml", "hh-grid"}).code == 2);
  // Cap overflow names the cell.
  const auto cap = run({"--cap", "10", "hh-grid", "--v-dim", "0", "--atoms", "3", "--k-max", "4"});
  CHECK(cap.code == koszulhh::cli::kCapExceeded);
  CHECK(cap.err.find("k=") != std::string::npos);
  // An empty grid is not an error.
  CHECK(run({"hh-grid", "--k-max", "2", "--s-min", "1", "--s-max", "0"}).code == 0);
}

TEST_CASE("cap from the environment") {
  ::setenv("KOSZULHH_CAP", "10", 1);
  const auto capped = run({"hh-grid", "--v-dim", "0", "--atoms", "3", "--k-max", "4"});
  CHECK(capped.code == koszulhh::cli::kCapExceeded);
  // The flag overrides the environment.
  CHECK(run({"--cap", "1000", "hh-grid", "--v-dim", "0", "--atoms", "3", "--k-max", "4"}).code == 0);
  ::setenv("KOSZULHH_CAP", "lots", 1);
  CHECK(run({"hh-grid"}).code == 2);
  ::unsetenv("KOSZULHH_CAP");
  CHECK(run({"hh-grid", "--k-max", "1"}).doc()["manifest"]["cap"] == 2000000);
}

TEST_CASE("output file") {
  const auto path = scratch("grid.json");
  fs::remove(path);
  const auto r = run({"--out", path.string(), "hh-grid", "--k-max", "1"});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  const auto j = koszulhh::io::read_json_file(path.string());
  CHECK(j["manifest"]["command"] == "hh-grid");
}
