#include <benchmark/benchmark.h>

#include <random>

#include "smx/closure.hpp"
#include "smx/generate.hpp"
#include "smx/mmo.hpp"

using namespace smx;

namespace {

MatrixBuffer random_operand(long rows, long cols, Opcode op,
                            std::uint64_t seed) {
  std::mt19937 rng(static_cast<unsigned>(seed));
  std::uniform_real_distribution<float> unit(0.0f, 1.0f);
  std::uniform_int_distribution<int> small(1, 9);
  MatrixBuffer m(rows, cols);
  for (float& v : m.values()) {
    switch (op) {
      case Opcode::OrAnd: v = float(rng() & 1u); break;
      case Opcode::MinMul:
      case Opcode::MaxMul: v = 0.25f + 0.75f * unit(rng); break;
      default: v = float(small(rng)); break;
    }
  }
  return m;
}

void bench_mmo_op(benchmark::State& state, Opcode oc) {
  const long n = state.range(0);
  const SemiringOp op(oc);
  const MatrixBuffer a = random_operand(n, n, oc, 1);
  const MatrixBuffer b = random_operand(n, n, oc, 2);
  const MatrixBuffer c = random_operand(n, n, oc, 3);
  MmoOptions opts;
  opts.check_domain = false;  // measure the kernel, not the scan
  opts.threads = 1;
  MatrixBuffer d(n, n);
  for (auto _ : state) {
    OpCounters counters;
    mmo_into(op, a, b, c, d, counters, opts);
    benchmark::DoNotOptimize(d.values().data());
    benchmark::ClobberMemory();
  }
  // lane-level combine+accumulate steps per pass
  state.SetItemsProcessed(state.iterations() * n * n * n);
}

void bench_closure(benchmark::State& state) {
  GenOptions gen;
  gen.n = int(state.range(0));
  gen.density = 0.3;
  gen.seed = 42;
  const Graph g = generate_graph(gen);
  SolveOptions opts;
  opts.check_domain = false;
  for (auto _ : state) {
    const ClosureResult res = apsp(g, opts);
    benchmark::DoNotOptimize(res.matrix.values().data());
  }
}

void bench_closure_threads(benchmark::State& state) {
  GenOptions gen;
  gen.n = 256;
  gen.density = 0.3;
  gen.seed = 42;
  const Graph g = generate_graph(gen);
  SolveOptions opts;
  opts.check_domain = false;
  opts.threads = int(state.range(0));
  for (auto _ : state) {
    const ClosureResult res = apsp(g, opts);
    benchmark::DoNotOptimize(res.matrix.values().data());
  }
}

}  // namespace

#define MMO_BENCH(name, opcode)                                    \
  BENCHMARK_CAPTURE(bench_mmo_op, name, opcode)                    \
      ->Arg(64)                                                    \
      ->Arg(128)                                                   \
      ->Arg(256)

MMO_BENCH(plus_mul, Opcode::PlusMul);
MMO_BENCH(min_plus, Opcode::MinPlus);
MMO_BENCH(max_plus, Opcode::MaxPlus);
MMO_BENCH(min_mul, Opcode::MinMul);
MMO_BENCH(max_mul, Opcode::MaxMul);
MMO_BENCH(min_max, Opcode::MinMax);
MMO_BENCH(max_min, Opcode::MaxMin);
MMO_BENCH(or_and, Opcode::OrAnd);
MMO_BENCH(add_norm, Opcode::AddNorm);

BENCHMARK(bench_closure)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK(bench_closure_threads)->Arg(1)->Arg(2)->Arg(4)->Arg(8);

BENCHMARK_MAIN();
