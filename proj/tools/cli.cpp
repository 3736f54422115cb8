#include "cli.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <tuple>
#include <vector>

#include "CLI11.hpp"
#include "smx/closure.hpp"
#include "smx/errors.hpp"
#include "smx/generate.hpp"
#include "smx/io.hpp"
#include "smx/oracles.hpp"
#include "smx/report.hpp"

namespace smx {

namespace {

Opcode problem_opcode(const std::string& problem) {
  if (problem == "apsp") return Opcode::MinPlus;
  if (problem == "aplp") return Opcode::MaxPlus;
  if (problem == "mcp") return Opcode::MaxMin;
  if (problem == "maxrp") return Opcode::MaxMul;
  if (problem == "minrp") return Opcode::MinMul;
  if (problem == "mst") return Opcode::MinMax;
  if (problem == "gtc") return Opcode::OrAnd;
  if (problem == "knn") return Opcode::AddNorm;
  throw ConfigError("unknown problem: " + problem);
}

double finite_scale(const MatrixBuffer& m) {
  double scale = 0.0;
  for (float v : m.values())
    if (std::isfinite(v)) scale = std::max(scale, std::fabs(double(v)));
  return scale;
}

MatrixBuffer half_rounded(const MatrixBuffer& m) {
  MatrixBuffer out = m;
  for (float& v : out.values()) v = round_to_half(v);
  return out;
}

/// Validation tolerance. Selection-only results must match exactly; paths
/// built from sums or products may differ from the wide-precision oracle
/// by accumulated 32-bit rounding, bounded well below 1e-5 relative. In
/// Mixed16 the 16-bit quantization of the inputs dominates instead.
double validation_tolerance(const std::string& problem, PrecisionMode mode,
                            double scale) {
  if (problem == "gtc") return 0.0;
  if (mode == PrecisionMode::Mixed16)
    return 2.0 * double(half_ulp(static_cast<float>(scale)));
  if (problem == "mcp" || problem == "mst") return 0.0;
  return 1e-5 * std::max(1.0, scale);
}

struct SolveArgs {
  std::string problem;
  std::string input;
  std::string refs;  // knn only; defaults to input
  int k = 1;
  std::string algo = "leyzorek";
  std::string precision = "exact32";
  bool validate = false;
  std::string report_path;
  long max_iter = 0;
};

SolveOptions solve_options(const SolveArgs& args) {
  SolveOptions opts;
  opts.algo =
      args.algo == "bf" ? ClosureAlgo::BellmanFord : ClosureAlgo::Leyzorek;
  opts.precision = precision_from_name(args.precision);
  opts.max_iter = args.max_iter;
  return opts;
}

ValidationInfo validate_graph(const std::string& problem, const Graph& g,
                              const MatrixBuffer& encoded,
                              const MstResult* mst, const MatrixBuffer& result,
                              PrecisionMode mode) {
  ValidationInfo info;
  if (problem == "gtc") {
    const MatrixBuffer oracle = oracles::dfs_reachability(g);
    info.max_abs_diff = max_abs_diff(result, oracle);
    info.matched = info.max_abs_diff == 0.0;
    return info;
  }

  MatrixBuffer oracle_input = mode == PrecisionMode::Mixed16
                                  ? half_rounded(encoded)
                                  : encoded;
  const Opcode op = problem_opcode(problem);
  const MatrixBuffer oracle =
      oracles::generalized_floyd_warshall(op, oracle_input);
  info.max_abs_diff = max_abs_diff(result, oracle);
  const double tol =
      validation_tolerance(problem, mode, finite_scale(result));
  info.matched = info.max_abs_diff <= tol;

  if (problem == "mst" && mst != nullptr && mode == PrecisionMode::Exact32) {
    const auto kruskal = oracles::kruskal_bottleneck(g);
    info.matched = info.matched &&
                   max_abs_diff(result, kruskal.bottleneck) == 0.0;
    auto normalized = [](const std::vector<Edge>& edges) {
      std::vector<std::tuple<int, int, std::uint32_t>> out;
      out.reserve(edges.size());
      for (const Edge& e : edges)
        out.push_back({std::min(e.u, e.v), std::max(e.u, e.v),
                       std::bit_cast<std::uint32_t>(e.w)});
      std::sort(out.begin(), out.end());
      return out;
    };
    info.matched = info.matched &&
                   normalized(mst->msf_edges) == normalized(kruskal.msf_edges);
  }
  return info;
}

int finish_solve(RunReport& report, const SolveArgs& args) {
  const std::string json = to_json_string(report);
  std::cout << json;
  if (!args.report_path.empty()) {
    std::ofstream out(args.report_path);
    if (!out) throw ParseError("cannot open '" + args.report_path + "'");
    out << json;
  }
  return exit_code_for_validation(report);
}

int run_solve(const SolveArgs& args) {
  const SolveOptions opts = solve_options(args);
  RunReport report;
  report.problem = args.problem;
  report.op = std::string(opcode_name(problem_opcode(args.problem)));
  report.algorithm = args.algo;
  report.precision = args.precision;

  if (args.problem == "knn") {
    const MatrixBuffer points = parse_dense_matrix(args.input);
    const MatrixBuffer refs = args.refs.empty()
                                  ? points
                                  : parse_dense_matrix(args.refs);
    const KnnResult result = knn(points, refs, args.k, opts);
    report.algorithm = "single-pass";
    report.m = points.rows();
    report.n = refs.rows();
    report.k = points.cols();
    report.iterations = static_cast<long>(result.counters.iterations);
    report.tile_ops = result.counters.tile_ops;
    report.loads = result.counters.loads;
    report.stores = result.counters.stores;
    report.wall_time_seconds = result.counters.wall_time;
    report.converged = true;

    if (args.validate) {
      const bool mixed = opts.precision == PrecisionMode::Mixed16;
      const auto oracle = oracles::brute_force_knn(
          mixed ? half_rounded(points) : points,
          mixed ? half_rounded(refs) : refs, args.k);
      ValidationInfo info;
      info.max_abs_diff = max_abs_diff(result.dist2, oracle.dist2);
      const double scale = finite_scale(result.dist2);
      double tol = 1e-5 * std::max(1.0, scale);
      if (mixed)
        tol = std::max(tol,
                       2.0 * double(half_ulp(static_cast<float>(scale))));
      info.matched =
          info.max_abs_diff <= tol && result.indices == oracle.indices;
      report.validation = info;
    }
    return finish_solve(report, args);
  }

  const Graph g = parse_edge_list(args.input);
  report.n = report.m = report.k = g.n;

  const ClosureResult* closure = nullptr;
  ClosureResult plain;
  MstResult mst;
  if (args.problem == "apsp") plain = apsp(g, opts);
  else if (args.problem == "aplp") plain = aplp(g, opts);
  else if (args.problem == "mcp") plain = max_capacity(g, opts);
  else if (args.problem == "maxrp") plain = max_reliability(g, opts);
  else if (args.problem == "minrp") plain = min_reliability(g, opts);
  else if (args.problem == "gtc") plain = transitive_closure(g, opts);
  else if (args.problem == "mst") {
    mst = mst_bottleneck(g, opts);
    closure = &mst.closure;
  } else {
    throw ConfigError("unknown problem: " + args.problem);
  }
  if (closure == nullptr) closure = &plain;

  report.iterations = closure->iterations;
  report.tile_ops = closure->counters.tile_ops;
  report.loads = closure->counters.loads;
  report.stores = closure->counters.stores;
  report.wall_time_seconds = closure->counters.wall_time;
  report.converged = closure->converged;

  if (args.validate) {
    Graph encoded_graph = g;
    if (args.problem == "gtc")
      for (Edge& e : encoded_graph.edges) e.w = 1.0f;
    const MatrixBuffer encoded =
        encode(encoded_graph, SemiringOp(problem_opcode(args.problem)),
               opts.precision);
    report.validation =
        validate_graph(args.problem, encoded_graph, encoded,
                       args.problem == "mst" ? &mst : nullptr,
                       closure->matrix, opts.precision);
  }
  return finish_solve(report, args);
}

std::vector<long> parse_sizes(const std::string& csv) {
  std::vector<long> sizes;
  std::stringstream in(csv);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) continue;
    try {
      sizes.push_back(std::stol(tok));
    } catch (const std::exception&) {
      throw ConfigError("bad size '" + tok + "' in size list");
    }
    if (sizes.back() <= 0) throw ConfigError("sizes must be positive");
  }
  if (sizes.empty()) throw ConfigError("size list is empty");
  return sizes;
}

struct BenchArgs {
  std::string problem = "apsp";
  std::string sizes = "16,32,64,128";
  std::string algo = "leyzorek";
  std::string precision = "exact32";
  std::string kind = "erdos_renyi";
  double density = 0.3;
  std::uint64_t seed = 1;
  std::string report_path;
};

int run_bench(const BenchArgs& args) {
  const std::vector<long> sizes = parse_sizes(args.sizes);
  SolveOptions opts;
  opts.algo =
      args.algo == "bf" ? ClosureAlgo::BellmanFord : ClosureAlgo::Leyzorek;
  opts.precision = precision_from_name(args.precision);
  opts.check_domain = false;  // benchmark profile skips the domain scan

  std::cout << "problem=" << args.problem << " algo=" << args.algo
            << " precision=" << args.precision << " kind=" << args.kind
            << "\n";
  std::cout << "     n  iterations     tile_ops        loads       stores"
               "    wall_s\n";

  std::string json_rows;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const long n = sizes[i];
    GenOptions gen;
    gen.kind = graph_kind_from_name(args.kind);
    gen.n = static_cast<int>(n);
    gen.density = args.density;
    gen.seed = args.seed + i;
    gen.precision = opts.precision;
    if (args.problem == "mst") {
      gen.directed = false;
      gen.distinct_weights = true;
    }
    if (args.problem == "maxrp" || args.problem == "minrp") {
      gen.wmin = 0.25f;
      gen.wmax = 1.0f;
    }

    RunReport row;
    row.problem = args.problem;
    row.op = std::string(opcode_name(problem_opcode(args.problem)));
    row.algorithm = args.algo;
    row.precision = args.precision;
    row.n = row.m = row.k = n;

    const OpCounters* counters = nullptr;
    ClosureResult closure;
    KnnResult knn_result;
    if (args.problem == "knn") {
      std::mt19937_64 rng(gen.seed);
      std::uniform_int_distribution<int> coord(0, 31);
      MatrixBuffer points(n, 16, 0.0f, opts.precision);
      for (float& v : points.values()) v = float(coord(rng));
      knn_result = knn(points, points, std::min<long>(4, n), opts);
      row.algorithm = "single-pass";
      row.k = 16;
      row.iterations = static_cast<long>(knn_result.counters.iterations);
      row.converged = true;
      counters = &knn_result.counters;
    } else {
      const Graph g = generate_graph(gen);
      if (args.problem == "apsp") closure = apsp(g, opts);
      else if (args.problem == "aplp") closure = aplp(g, opts);
      else if (args.problem == "mcp") closure = max_capacity(g, opts);
      else if (args.problem == "maxrp") closure = max_reliability(g, opts);
      else if (args.problem == "minrp") closure = min_reliability(g, opts);
      else if (args.problem == "gtc") closure = transitive_closure(g, opts);
      else if (args.problem == "mst")
        closure = mst_bottleneck(g, opts, false).closure;
      else throw ConfigError("unknown problem: " + args.problem);
      row.iterations = closure.iterations;
      row.converged = closure.converged;
      counters = &closure.counters;
    }
    row.tile_ops = counters->tile_ops;
    row.loads = counters->loads;
    row.stores = counters->stores;
    row.wall_time_seconds = counters->wall_time;

    char line[160];
    std::snprintf(line, sizeof line, "%6ld  %10ld  %11llu  %11llu  %11llu  %8.4f",
                  row.n, row.iterations,
                  static_cast<unsigned long long>(row.tile_ops),
                  static_cast<unsigned long long>(row.loads),
                  static_cast<unsigned long long>(row.stores),
                  row.wall_time_seconds);
    std::cout << line << "\n";
    json_rows += (json_rows.empty() ? "" : ",\n") + to_json_string(row);
  }

  if (!args.report_path.empty()) {
    std::ofstream out(args.report_path);
    if (!out) throw ParseError("cannot open '" + args.report_path + "'");
    out << "[\n" << json_rows << "]\n";
  }
  return 0;
}

int run_selftest();

struct GenArgs {
  std::string kind = "erdos_renyi";
  int n = 16;
  double density = 0.3;
  float wmin = 1.0f;
  float wmax = 10.0f;
  std::uint64_t seed = 0;
  std::string out;
  bool undirected = false;
  bool directed = false;
  bool distinct = false;
  std::string precision = "exact32";
};

int run_gen(const GenArgs& args) {
  GenOptions opts;
  opts.kind = graph_kind_from_name(args.kind);
  opts.n = args.n;
  opts.density = args.density;
  opts.wmin = args.wmin;
  opts.wmax = args.wmax;
  opts.seed = args.seed;
  if (args.undirected && args.directed)
    throw ConfigError("--directed and --undirected are mutually exclusive");
  if (args.undirected) opts.directed = false;
  if (args.directed) opts.directed = true;
  opts.distinct_weights = args.distinct;
  opts.precision = precision_from_name(args.precision);
  write_edge_list(args.out, generate_graph(opts));
  return 0;
}

}  // namespace

int exit_code_for_validation(const RunReport& report) {
  if (report.validation && !report.validation->matched) return 2;
  return 0;
}

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"tiled semiring matrix engine"};
  app.require_subcommand(1);

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "generate a graph edge list");
  gen->add_option("--kind", gen_args.kind, "graph family")
      ->check(CLI::IsMember(
          {"erdos_renyi", "path", "cycle", "grid", "dag_layered"}));
  gen->add_option("--n", gen_args.n, "vertex count")->required();
  gen->add_option("--density", gen_args.density, "edge probability in [0,1]");
  gen->add_option("--wmin", gen_args.wmin, "smallest weight");
  gen->add_option("--wmax", gen_args.wmax, "largest weight");
  gen->add_option("--seed", gen_args.seed, "random seed");
  gen->add_option("--out", gen_args.out, "output path")->required();
  gen->add_flag("--undirected", gen_args.undirected, "force undirected");
  gen->add_flag("--directed", gen_args.directed, "force directed");
  gen->add_flag("--distinct", gen_args.distinct, "pairwise distinct weights");
  gen->add_option("--precision", gen_args.precision, "weight rounding")
      ->check(CLI::IsMember({"exact32", "mixed16"}));

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "run a solver");
  solve
      ->add_option("problem", solve_args.problem,
                   "apsp|aplp|mcp|maxrp|minrp|mst|gtc|knn")
      ->required()
      ->check(CLI::IsMember(
          {"apsp", "aplp", "mcp", "maxrp", "minrp", "mst", "gtc", "knn"}));
  solve->add_option("--input", solve_args.input, "edge list (graphs) or "
                    "dense matrix (knn points)")
      ->required();
  solve->add_option("--refs", solve_args.refs,
                    "knn reference points (defaults to --input)");
  solve->add_option("--k", solve_args.k, "knn neighbor count");
  solve->add_option("--algo", solve_args.algo, "closure iteration scheme")
      ->check(CLI::IsMember({"bf", "leyzorek"}));
  solve->add_option("--precision", solve_args.precision, "arithmetic mode")
      ->check(CLI::IsMember({"exact32", "mixed16"}));
  solve->add_flag("--validate", solve_args.validate,
                  "compare against the reference oracle");
  solve->add_option("--report", solve_args.report_path,
                    "also write the JSON report here");
  solve->add_option("--max-iter", solve_args.max_iter,
                    "override the iteration cap (0 = default)");

  BenchArgs bench_args;
  CLI::App* bench =
      app.add_subcommand("bench", "sweep sizes, print iteration/tile tables");
  bench->add_option("--problem", bench_args.problem)
      ->check(CLI::IsMember({"apsp", "aplp", "mcp", "maxrp", "minrp", "mst",
                             "gtc", "knn"}));
  bench->add_option("--sizes", bench_args.sizes, "comma-separated sizes");
  bench->add_option("--algo", bench_args.algo)
      ->check(CLI::IsMember({"bf", "leyzorek"}));
  bench->add_option("--precision", bench_args.precision)
      ->check(CLI::IsMember({"exact32", "mixed16"}));
  bench->add_option("--kind", bench_args.kind)
      ->check(CLI::IsMember(
          {"erdos_renyi", "path", "cycle", "grid", "dag_layered"}));
  bench->add_option("--density", bench_args.density);
  bench->add_option("--seed", bench_args.seed);
  bench->add_option("--report", bench_args.report_path,
                    "write all rows as a JSON array");

  CLI::App* selftest =
      app.add_subcommand("selftest", "run the built-in invariant checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (gen->parsed()) return run_gen(gen_args);
    if (solve->parsed()) return run_solve(solve_args);
    if (bench->parsed()) return run_bench(bench_args);
    if (selftest->parsed()) return run_selftest();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

int cli_main(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("smx");
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli_main(static_cast<int>(argv.size()), argv.data());
}

namespace {

// ---- selftest ----

bool selftest_half_roundtrip() {
  for (std::uint32_t h = 0; h < 0x10000; ++h) {
    const float f = half_to_float(static_cast<std::uint16_t>(h));
    if (std::isnan(f)) continue;
    if (round_to_half(f) != f && !(f == 0.0f)) return false;
    if (float_to_half_bits(f) != h && f != 0.0f) return false;
  }
  return round_to_half(2049.0f) == 2048.0f &&
         round_to_half(70000.0f) ==
             std::numeric_limits<float>::infinity();
}

bool selftest_padding() {
  std::mt19937 rng(7);
  std::uniform_real_distribution<float> unit(0.0f, 1.0f);
  for (Opcode oc : kAllOpcodes) {
    const SemiringOp op(oc);
    const auto pads = op.identity_and_padding();
    if (op.otimes(pads.pad_a, pads.pad_b) != pads.identity) return false;
    for (int i = 0; i < 200; ++i) {
      float x = oc == Opcode::OrAnd ? float(rng() & 1) : unit(rng) + 0.25f;
      if (op.oplus(x, op.otimes(pads.pad_a, pads.pad_b)) != x) return false;
    }
  }
  return true;
}

bool selftest_tiling() {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> dim(1, 40);
  std::uniform_real_distribution<float> unit(0.25f, 1.0f);
  for (Opcode oc : kAllOpcodes) {
    const SemiringOp op(oc);
    for (int trial = 0; trial < 6; ++trial) {
      const long m = dim(rng), n = dim(rng), k = dim(rng);
      auto fill = [&](MatrixBuffer& b) {
        for (float& v : b.values())
          v = oc == Opcode::OrAnd ? float(rng() & 1) : unit(rng);
      };
      MatrixBuffer a(m, k), b(k, n), c(m, n);
      fill(a); fill(b); fill(c);
      OpCounters counters;
      if (!bitwise_equal(mmo(op, a, b, c, counters),
                         mmo_reference(op, a, b, c)))
        return false;
    }
  }
  return true;
}

bool selftest_closure() {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    GenOptions gen;
    gen.n = 24;
    gen.density = 0.3;
    gen.seed = seed;
    const Graph g = generate_graph(gen);
    SolveOptions bf;
    bf.algo = ClosureAlgo::BellmanFord;
    SolveOptions ley;

    const ClosureResult a = apsp(g, bf);
    const ClosureResult b = apsp(g, ley);
    if (!bitwise_equal(a.matrix, b.matrix)) return false;

    const MatrixBuffer w = encode(g, SemiringOp(Opcode::MinPlus));
    const MatrixBuffer oracle =
        oracles::generalized_floyd_warshall(Opcode::MinPlus, w);
    if (max_abs_diff(b.matrix, oracle) > 1e-5 * 64.0) return false;

    const ClosureResult cap = max_capacity(g, ley);
    const MatrixBuffer cap_oracle = oracles::generalized_floyd_warshall(
        Opcode::MaxMin, encode(g, SemiringOp(Opcode::MaxMin)));
    if (max_abs_diff(cap.matrix, cap_oracle) != 0.0) return false;
  }
  return true;
}

bool selftest_knn() {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> coord(0, 15);
  for (int trial = 0; trial < 3; ++trial) {
    MatrixBuffer points(20, 6), refs(17, 6);
    for (float& v : points.values()) v = float(coord(rng));
    for (float& v : refs.values()) v = float(coord(rng));
    const KnnResult got = knn(points, refs, 3);
    const auto want = oracles::brute_force_knn(points, refs, 3);
    if (got.indices != want.indices) return false;
    if (max_abs_diff(got.dist2, want.dist2) != 0.0) return false;
  }
  return true;
}

bool selftest_threads() {
  std::mt19937 rng(31);
  std::uniform_real_distribution<float> unit(0.0f, 1.0f);
  MatrixBuffer a(70, 33), b(33, 51), c(70, 51);
  for (float& v : a.values()) v = unit(rng);
  for (float& v : b.values()) v = unit(rng);
  for (float& v : c.values()) v = unit(rng);
  const SemiringOp op(Opcode::MinPlus);
  OpCounters c1, c4;
  MmoOptions seq{true, 1}, par{true, 4};
  return bitwise_equal(mmo(op, a, b, c, c1, seq), mmo(op, a, b, c, c4, par));
}

int run_selftest() {
  struct Check {
    const char* name;
    bool (*fn)();
  };
  const Check checks[] = {
      {"half-precision round trip", selftest_half_roundtrip},
      {"padding absorption", selftest_padding},
      {"tiled engine matches scalar reference", selftest_tiling},
      {"closure solvers agree with oracles", selftest_closure},
      {"knn matches exhaustive search", selftest_knn},
      {"thread count does not change results", selftest_threads},
  };
  int failures = 0;
  for (const Check& check : checks) {
    const bool ok = check.fn();
    std::cout << (ok ? "[ok]   " : "[FAIL] ") << check.name << "\n";
    failures += ok ? 0 : 1;
  }
  std::cout << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace

}  // namespace smx
