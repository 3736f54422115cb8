#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "smx/report.hpp"

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int exit_code = 0;
  std::string out;
};

// Run the command line entry point in-process with stdout captured (and
// stderr swallowed: several cases exercise diagnostic paths on purpose).
CliRun run_cli(const std::vector<std::string>& args) {
  std::stringstream captured, errs;
  std::streambuf* saved_out = std::cout.rdbuf(captured.rdbuf());
  std::streambuf* saved_err = std::cerr.rdbuf(errs.rdbuf());
  CliRun run;
  try {
    run.exit_code = smx::cli_main(args);
  } catch (...) {
    std::cout.rdbuf(saved_out);
    std::cerr.rdbuf(saved_err);
    throw;
  }
  std::cout.rdbuf(saved_out);
  std::cerr.rdbuf(saved_err);
  run.out = captured.str();
  return run;
}

std::string work_dir() {
  const fs::path dir = fs::temp_directory_path() / "smx_cli_tests";
  fs::create_directories(dir);
  return dir.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("generate then solve with validation") {
  const std::string dir = work_dir();
  const std::string graph = dir + "/gen_solve.txt";
  CHECK(run_cli({"gen", "--kind", "erdos_renyi", "--n", "32", "--density",
                 "0.3", "--seed", "42", "--out", graph})
            .exit_code == 0);

  const CliRun solve =
      run_cli({"solve", "apsp", "--input", graph, "--validate"});
  CHECK(solve.exit_code == 0);
  const smx::RunReport report = smx::report_from_json(solve.out);
  CHECK(report.problem == "apsp");
  CHECK(report.op == "min-plus");
  CHECK(report.n == 32);
  CHECK(report.converged);
  CHECK(report.iterations >= 1);
  REQUIRE(report.validation.has_value());
  CHECK(report.validation->matched);
  CHECK(report.validation->max_abs_diff == 0.0);
}

TEST_CASE("gen is deterministic per seed") {
  const std::string dir = work_dir();
  const auto gen = [&](const std::string& name, const char* seed) {
    const std::string path = dir + "/" + name;
    REQUIRE(run_cli({"gen", "--n", "24", "--seed", seed, "--out", path})
                .exit_code == 0);
    return slurp(path);
  };
  CHECK(gen("seeda.txt", "9") == gen("seedb.txt", "9"));
  CHECK(gen("seedc.txt", "10") != gen("seedd.txt", "9"));
}

TEST_CASE("usage errors exit 1") {
  CHECK(run_cli({}).exit_code == 1);
  CHECK(run_cli({"solve"}).exit_code == 1);          // missing problem
  CHECK(run_cli({"solve", "apsp"}).exit_code == 1);  // missing --input
  CHECK(run_cli({"solve", "frobnicate", "--input", "x"}).exit_code == 1);
  CHECK(run_cli({"gen", "--n", "4"}).exit_code == 1);  // missing --out
  CHECK(run_cli({"bench", "--sizes", "x,y"}).exit_code == 1);
  CHECK(run_cli({"--help"}).exit_code == 0);
}

TEST_CASE("missing and malformed inputs exit 1") {
  CHECK(run_cli({"solve", "apsp", "--input", "/nope/nothing.txt"})
            .exit_code == 1);
  const std::string dir = work_dir();
  const std::string bad = dir + "/bad_header.txt";
  std::ofstream(bad) << "what\n";
  CHECK(run_cli({"solve", "apsp", "--input", bad}).exit_code == 1);
}

TEST_CASE("aplp on a cyclic graph exits 1") {
  const std::string dir = work_dir();
  const std::string graph = dir + "/cycle.txt";
  REQUIRE(run_cli({"gen", "--kind", "cycle", "--n", "6", "--out", graph})
              .exit_code == 0);
  CHECK(run_cli({"solve", "aplp", "--input", graph}).exit_code == 1);
  CHECK(run_cli({"solve", "apsp", "--input", graph}).exit_code == 0);
}

TEST_CASE("validation mismatch maps to exit 2") {
  smx::RunReport report;
  CHECK(smx::exit_code_for_validation(report) == 0);  // no validation block
  report.validation = smx::ValidationInfo{true, 0.0};
  CHECK(smx::exit_code_for_validation(report) == 0);
  report.validation = smx::ValidationInfo{false, 1.5};
  CHECK(smx::exit_code_for_validation(report) == 2);
}

TEST_CASE("report files carry exactly the documented keys") {
  const std::string dir = work_dir();
  const std::string graph = dir + "/report_keys.txt";
  const std::string report_path = dir + "/report.json";
  REQUIRE(run_cli({"gen", "--n", "16", "--seed", "3", "--out", graph})
              .exit_code == 0);
  const CliRun solve = run_cli({"solve", "mcp", "--input", graph, "--validate",
                                "--report", report_path});
  REQUIRE(solve.exit_code == 0);
  CHECK(solve.out == slurp(report_path));  // stdout and file agree

  for (const char* key :
       {"\"problem\"", "\"op\"", "\"n\"", "\"m\"", "\"k\"", "\"algorithm\"",
        "\"precision\"", "\"iterations\"", "\"tile_ops\"", "\"loads\"",
        "\"stores\"", "\"wall_time_seconds\"", "\"converged\"",
        "\"validation\"", "\"matched\"", "\"max_abs_diff\""})
    CHECK(solve.out.find(key) != std::string::npos);

  const smx::RunReport parsed = smx::report_from_json(slurp(report_path));
  CHECK(parsed.problem == "mcp");
  CHECK(parsed.op == "max-min");
  CHECK(parsed.algorithm == "leyzorek");
  CHECK(parsed.tile_ops > 0);
}

TEST_CASE("reports are identical across runs except for wall time") {
  const std::string dir = work_dir();
  const std::string graph = dir + "/determinism.txt";
  REQUIRE(run_cli({"gen", "--n", "48", "--density", "0.25", "--seed", "21",
                   "--out", graph})
              .exit_code == 0);
  const auto run_once = [&] {
    const CliRun solve =
        run_cli({"solve", "apsp", "--input", graph, "--validate"});
    REQUIRE(solve.exit_code == 0);
    smx::RunReport r = smx::report_from_json(solve.out);
    r.wall_time_seconds = 0.0;
    return smx::to_json_string(r);
  };
  const std::string first = run_once();
  CHECK(first == run_once());

  // A worker cap must not change any reported quantity either.
  setenv("SEMIRING_MXU_THREADS", "1", 1);
  const std::string capped = run_once();
  unsetenv("SEMIRING_MXU_THREADS");
  CHECK(first == capped);
}

TEST_CASE("solver corpus across graph families") {
  const std::string dir = work_dir();
  const char* kinds[] = {"erdos_renyi", "path", "cycle", "grid",
                         "dag_layered"};
  int solved = 0;
  for (const char* kind : kinds) {
    for (const char* n : {"8", "33"}) {
      const std::string graph =
          dir + "/corpus_" + kind + "_" + n + ".txt";
      REQUIRE(run_cli({"gen", "--kind", kind, "--n", n, "--density", "0.3",
                       "--seed", "77", "--out", graph})
                  .exit_code == 0);
      for (const std::string problem : {"apsp", "mcp", "gtc"}) {
        const CliRun run =
            run_cli({"solve", problem, "--input", graph, "--validate"});
        INFO(kind << " n=" << n << " " << problem);
        CHECK(run.exit_code == 0);
        ++solved;
      }
    }
  }

  // Reliability products need weights in (0, 1].
  for (const char* kind : {"erdos_renyi", "grid"}) {
    const std::string graph = dir + "/corpus_rel_" + kind + ".txt";
    REQUIRE(run_cli({"gen", "--kind", kind, "--n", "24", "--density", "0.4",
                     "--seed", "5", "--wmin", "0.25", "--wmax", "1.0",
                     "--out", graph})
                .exit_code == 0);
    INFO(kind);
    CHECK(run_cli({"solve", "maxrp", "--input", graph, "--validate"})
              .exit_code == 0);
    ++solved;
  }

  // Longest paths and minimum reliability diverge on cycles: layered DAGs.
  const std::string dag = dir + "/corpus_dag.txt";
  REQUIRE(run_cli({"gen", "--kind", "dag_layered", "--n", "40", "--density",
                   "0.35", "--seed", "13", "--wmin", "0.25", "--wmax", "1.0",
                   "--out", dag})
              .exit_code == 0);
  CHECK(run_cli({"solve", "minrp", "--input", dag, "--validate"}).exit_code ==
        0);
  const std::string dag_int = dir + "/corpus_dag_int.txt";
  REQUIRE(run_cli({"gen", "--kind", "dag_layered", "--n", "40", "--density",
                   "0.35", "--seed", "14", "--out", dag_int})
              .exit_code == 0);
  CHECK(run_cli({"solve", "aplp", "--input", dag_int, "--validate"})
            .exit_code == 0);

  // Forest extraction wants undirected graphs with distinct weights.
  for (const char* kind : {"erdos_renyi", "grid"}) {
    const std::string graph = dir + "/corpus_mst_" + kind + ".txt";
    REQUIRE(run_cli({"gen", "--kind", kind, "--n", "26", "--density", "0.45",
                     "--seed", "31", "--undirected", "--distinct", "--wmax",
                     "60", "--out", graph})
                .exit_code == 0);
    INFO(kind);
    CHECK(run_cli({"solve", "mst", "--input", graph, "--validate"})
              .exit_code == 0);
    ++solved;
  }
  CHECK(solved >= 34);
}

TEST_CASE("both algorithms and both precisions validate end to end") {
  const std::string dir = work_dir();
  const std::string graph = dir + "/modes.txt";
  REQUIRE(run_cli({"gen", "--n", "40", "--density", "0.3", "--seed", "99",
                   "--out", graph})
              .exit_code == 0);
  for (const std::string algo : {"bf", "leyzorek"})
    for (const std::string precision : {"exact32", "mixed16"}) {
      INFO(algo << " " << precision);
      const CliRun run = run_cli({"solve", "apsp", "--input", graph,
                                  "--validate", "--algo", algo, "--precision",
                                  precision});
      CHECK(run.exit_code == 0);
      const smx::RunReport report = smx::report_from_json(run.out);
      CHECK(report.algorithm == algo);
      CHECK(report.precision == precision);
    }
}

TEST_CASE("knn end to end") {
  const std::string dir = work_dir();
  const std::string points = dir + "/points.txt";
  const std::string refs = dir + "/refs.txt";
  std::ofstream(points) << "0.9 0\n5 5\n";
  std::ofstream(refs) << "0 0\n1 0\n5 0\n5 5\n";

  const CliRun run = run_cli({"solve", "knn", "--input", points, "--refs",
                              refs, "--k", "2", "--validate"});
  CHECK(run.exit_code == 0);
  const smx::RunReport report = smx::report_from_json(run.out);
  CHECK(report.problem == "knn");
  CHECK(report.op == "add-norm");
  CHECK(report.algorithm == "single-pass");
  CHECK(report.m == 2);  // queries
  CHECK(report.n == 4);  // references
  CHECK(report.k == 2);  // coordinate dimension
  CHECK(report.iterations == 1);
  REQUIRE(report.validation.has_value());
  CHECK(report.validation->matched);

  // Self-query: every point's nearest neighbor is itself.
  CHECK(run_cli({"solve", "knn", "--input", refs, "--k", "1", "--validate"})
            .exit_code == 0);
  // k beyond the reference count is a usage error.
  CHECK(run_cli({"solve", "knn", "--input", points, "--refs", refs, "--k",
                 "9"})
            .exit_code == 1);
}

TEST_CASE("bench smoke") {
  const std::string dir = work_dir();
  const std::string report = dir + "/bench.json";
  const CliRun run = run_cli({"bench", "--problem", "mcp", "--sizes", "8,24",
                              "--seed", "4", "--report", report});
  CHECK(run.exit_code == 0);
  CHECK(run.out.find("tile_ops") != std::string::npos);
  const std::string body = slurp(report);
  CHECK(body.find("\"n\": 8") != std::string::npos);
  CHECK(body.find("\"n\": 24") != std::string::npos);
}

TEST_CASE("selftest passes") {
  CHECK(run_cli({"selftest"}).exit_code == 0);
}
