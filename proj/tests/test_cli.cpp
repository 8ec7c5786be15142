#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include "racp/cli.hpp"
#include "racp/matrix_market.hpp"
#include "test_support.hpp"

using testsup::ScratchDir;
using testsup::json;

namespace {

int run_cli(const std::vector<std::string>& args, std::string* out = nullptr) {
  int code = -1;
  std::string printed = testsup::capture_stdout([&] { return racp::cli::run(args); }, code);
  if (out) *out = printed;
  return code;
}

json result_without_time(json doc) {
  doc["result"].erase("wall_time_s");
  return doc;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("generate writes matrices and schema-valid metadata") {
  ScratchDir dir;
  std::string out = dir.file("gen");
  CHECK(run_cli({"generate", "--gen", "fracture-cube", "--out", out, "--verify"}) == 0);

  json meta = testsup::load_json(out + "/meta.json");
  auto errors = testsup::schema_violations(meta, testsup::load_schema("generate_meta.schema.json"));
  for (const auto& e : errors) MESSAGE(e);
  CHECK(errors.empty());
  CHECK(meta["system"]["n_u"] == 54);
  CHECK(meta["system"]["n_t"] == 27);
  CHECK(meta["verification"]["nullity_a"] == 0);
  CHECK(meta["verification"]["saddle_nonsingular"] == true);

  // the matrix files round trip through the reader
  racp::SparseMatrix a = racp::read_matrix_market(out + "/A.mtx");
  racp::SparseMatrix b = racp::read_matrix_market(out + "/B.mtx");
  CHECK(a.n_rows == 54);
  CHECK(b.n_cols == 27);

  // a second run reproduces the files byte for byte
  std::string out2 = dir.file("gen2");
  CHECK(run_cli({"generate", "--gen", "fracture-cube", "--out", out2, "--verify"}) == 0);
  auto slurp = [](const std::string& p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  };
  CHECK(slurp(out + "/A.mtx") == slurp(out2 + "/A.mtx"));
  CHECK(slurp(out + "/B.mtx") == slurp(out2 + "/B.mtx"));
  CHECK(slurp(out + "/meta.json") == slurp(out2 + "/meta.json"));
}

TEST_CASE("solve emits a schema-valid document and is deterministic") {
  ScratchDir dir;
  std::vector<std::string> args{"solve", "--gen",     "random",  "--size-u", "40",
                                "--size-t", "8",      "--seed",  "3",        "--precond",
                                "racp-m",  "--c-recipe", "local", "--inner", "ic0",
                                "--out",   dir.file("r1.json")};
  std::string line1;
  CHECK(run_cli(args, &line1) == 0);
  json doc1 = testsup::load_json(dir.file("r1.json"));
  auto errors = testsup::schema_violations(doc1, testsup::load_schema("solve_result.schema.json"));
  for (const auto& e : errors) MESSAGE(e);
  CHECK(errors.empty());
  CHECK(doc1["result"]["converged"] == true);
  CHECK(doc1["preconditioner"]["c_recipe"] == "local_solve");

  // stdout carries exactly the result object
  CHECK(json::parse(line1) == doc1["result"]);

  args.back() = dir.file("r2.json");
  CHECK(run_cli(args) == 0);
  json doc2 = testsup::load_json(dir.file("r2.json"));
  CHECK(result_without_time(doc1) == result_without_time(doc2));
}

TEST_CASE("solving from files matches solving from the generator") {
  ScratchDir dir;
  std::string gen = dir.file("sys");
  REQUIRE(run_cli({"generate", "--gen", "fracture-cube", "--nx", "3", "--out", gen}) == 0);

  std::string from_gen, from_files;
  CHECK(run_cli({"solve", "--gen", "fracture-cube", "--nx", "3", "--precond", "racp-ma",
                 "--c-recipe", "norm", "--inner", "jacobi"},
                &from_gen) == 0);
  CHECK(run_cli({"solve", "--a", gen + "/A.mtx", "--b", gen + "/B.mtx", "--precond", "racp-ma",
                 "--c-recipe", "norm", "--inner", "jacobi"},
                &from_files) == 0);
  json r1 = json::parse(from_gen), r2 = json::parse(from_files);
  r1.erase("wall_time_s");
  r2.erase("wall_time_s");
  CHECK(r1 == r2);
}

TEST_CASE("solve records a structured failure and still exits zero") {
  std::string line;
  CHECK(run_cli({"solve", "--gen", "floating-side", "--precond", "mcp"}, &line) == 0);
  json r = json::parse(line);
  CHECK(r["completed"] == true);
  CHECK(r["converged"] == false);
  CHECK(r["failure_reason"] == "leading block singular");
}

TEST_CASE("solve honours the history flag") {
  ScratchDir dir;
  std::string hist = dir.file("h.csv");
  CHECK(run_cli({"solve", "--gen", "random", "--size-u", "30", "--size-t", "6", "--history",
                 hist}) == 0);
  std::ifstream in(hist);
  REQUIRE(in.good());
  std::string header;
  std::getline(in, header);
  CHECK(header == "iter,relative_residual");
}

TEST_CASE("spectrum reports bounds for the working variants") {
  ScratchDir dir;
  std::string out = dir.file("spec.json");
  std::string csv = dir.file("eigs.csv");
  CHECK(run_cli({"spectrum", "--gen", "random", "--size-u", "24", "--size-t", "6", "--seed", "5",
                 "--precond", "racp-m", "--c-recipe", "norm", "--inner", "jacobi", "--out", out,
                 "--eigs-csv", csv}) == 0);
  json doc = testsup::load_json(out);
  auto errors = testsup::schema_violations(doc, testsup::load_schema("spectrum_report.schema.json"));
  for (const auto& e : errors) MESSAGE(e);
  CHECK(errors.empty());
  CHECK(doc["spectrum"]["containment"]["all_contained"] == true);
  CHECK(doc["spectrum"]["eigenvalues"].size() == 30);

  std::ifstream in(csv);
  REQUIRE(in.good());
  std::string line;
  int lines = 0;
  std::getline(in, line);
  CHECK(line == "re,im");
  while (std::getline(in, line))
    if (!line.empty()) ++lines;
  CHECK(lines == 30);
}

TEST_CASE("spectrum handles the ideal variants with cluster counts") {
  ScratchDir dir;
  std::string out = dir.file("ideal.json");
  std::string printed;
  CHECK(run_cli({"spectrum", "--gen", "random", "--size-u", "20", "--size-t", "4", "--precond",
                 "ideal-ma", "--out", out},
                &printed) == 0);
  json doc = testsup::load_json(out);
  auto errors = testsup::schema_violations(doc, testsup::load_schema("spectrum_report.schema.json"));
  CHECK(errors.empty());
  CHECK(doc["spectrum"]["clusters"]["at_one"] == 20);
  CHECK(doc["spectrum"]["clusters"]["at_other"] == 4);
  CHECK(doc["spectrum"]["clusters"]["outliers"] == 0);
  CHECK(json::parse(printed)["at_one"] == 20);
}

TEST_CASE("spectrum respects the dense cap environment variable") {
  setenv("RACP_DENSE_CAP", "10", 1);
  int code = run_cli({"spectrum", "--gen", "random", "--size-u", "20", "--size-t", "4",
                      "--precond", "racp-m"});
  unsetenv("RACP_DENSE_CAP");
  CHECK(code != 0);
}

TEST_CASE("partition emits schema-valid output and an owner table") {
  ScratchDir dir;
  std::string out = dir.file("p.json");
  std::string csv = dir.file("owners.csv");
  CHECK(run_cli({"partition", "--gen", "fracture-cube", "--procs", "4", "--refine", "--out", out,
                 "--csv", csv}) == 0);
  json doc = testsup::load_json(out);
  auto errors = testsup::schema_violations(doc, testsup::load_schema("partition_result.schema.json"));
  for (const auto& e : errors) MESSAGE(e);
  CHECK(errors.empty());
  CHECK(doc["partition"]["n_procs"] == 4);
  CHECK(doc["partition"]["strategy"] == "contiguous+refined");
  CHECK(doc["assignment"]["owner_of_multiplier"].size() == 27);

  std::ifstream in(csv);
  REQUIRE(in.good());
  std::string line;
  std::getline(in, line);
  CHECK(line == "multiplier,owner");
  int lines = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++lines;
  CHECK(lines == 27);
}

TEST_CASE("compare runs a spec list and keeps structured failures inline") {
  ScratchDir dir;
  std::string out = dir.file("cmp.json");
  CHECK(run_cli({"compare", "--gen", "floating-side", "--specs",
                 "racp-m:norm:1:exact,mcp:::exact", "--out", out}) == 0);
  json doc = testsup::load_json(out);
  auto errors = testsup::schema_violations(doc, testsup::load_schema("compare_result.schema.json"));
  for (const auto& e : errors) MESSAGE(e);
  CHECK(errors.empty());
  REQUIRE(doc["runs"].size() == 2);
  CHECK(doc["runs"][0]["result"]["converged"] == true);
  CHECK(doc["runs"][1]["result"]["converged"] == false);
  CHECK(doc["runs"][1]["result"]["failure_reason"] == "leading block singular");
}

TEST_CASE("compare sweeps omega and contrasts the two variants") {
  ScratchDir dir;
  std::string out = dir.file("sweep.json");
  CHECK(run_cli({"compare", "--gen", "random", "--size-u", "40", "--size-t", "8", "--omega-sweep",
                 "--m-vs-ma", "--out", out}) == 0);
  json doc = testsup::load_json(out);
  CHECK(doc["runs"].size() == 7);  // five omegas plus the two variants
}

TEST_CASE("config file supplies defaults that flags override") {
  ScratchDir dir;
  std::string cfg = dir.file("racp.toml");
  {
    std::ofstream out(cfg);
    out << "[solve]\ntol=0.001\nmaxit=77\n";
  }
  ScratchDir dir2;
  std::string out_path = dir2.file("out.json");
  CHECK(run_cli({"--config", cfg, "solve", "--gen", "random", "--size-u", "30", "--size-t", "6",
                 "--out", out_path}) == 0);
  json doc = testsup::load_json(out_path);
  CHECK(doc["gmres"]["tol"] == 0.001);
  CHECK(doc["gmres"]["maxit"] == 77);

  // an explicit flag wins over the config value
  CHECK(run_cli({"--config", cfg, "solve", "--gen", "random", "--size-u", "30", "--size-t", "6",
                 "--maxit", "55", "--out", out_path}) == 0);
  doc = testsup::load_json(out_path);
  CHECK(doc["gmres"]["maxit"] == 55);
  CHECK(doc["gmres"]["tol"] == 0.001);
}

TEST_CASE("malformed invocations exit nonzero") {
  CHECK(run_cli({}) != 0);
  CHECK(run_cli({"frobnicate"}) != 0);
  CHECK(run_cli({"solve", "--bogus-flag"}) != 0);
  CHECK(run_cli({"solve", "--gen", "nonexistent-generator"}) != 0);
  CHECK(run_cli({"solve"}) != 0);  // neither --gen nor --a/--b
  ScratchDir dir;
  CHECK(run_cli({"solve", "--a", dir.file("A.mtx")}) != 0);  // --a without --b
  {
    std::ofstream bad(dir.file("bad.mtx"));
    bad << "not a matrix market file\n";
  }
  {
    std::ofstream ok(dir.file("ok.mtx"));
    ok << "%%MatrixMarket matrix coordinate real general\n2 1 1\n1 1 1.0\n";
  }
  CHECK(run_cli({"solve", "--a", dir.file("bad.mtx"), "--b", dir.file("ok.mtx")}) != 0);
  CHECK(run_cli({"generate", "--gen", "fracture-cube"}) != 0);  // --out is required
  CHECK(run_cli({"compare", "--gen", "random", "--specs", "warp-drive:::"}) != 0);
  CHECK(run_cli({"compare", "--gen", "random"}) != 0);  // nothing to compare
  CHECK(run_cli({"partition", "--gen", "random", "--procs", "0"}) != 0);
}

TEST_CASE("generator flags reach the grid builder") {
  std::string printed;
  CHECK(run_cli({"solve", "--gen", "fracture-cube", "--nx", "2", "--ny", "3", "--nz", "2",
                 "--fracture-axis", "y", "--fracture-index", "1", "--dirichlet", "ymin,ymax",
                 "--distortion", "0.3"},
                &printed) == 0);
  CHECK(json::parse(printed)["converged"] == true);
  // an invalid axis is rejected up front
  CHECK(run_cli({"solve", "--gen", "fracture-cube", "--fracture-axis", "w"}) != 0);
}

}  // TEST_SUITE
