#include "smx/mmo.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace smx {

namespace detail {

namespace {

void scan_domain(const SemiringOp& op, const MatrixBuffer& m, bool round,
                 const char* operand) {
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j) {
      const float raw = m.at(i, j);
      const float x = round ? round_to_half(raw) : raw;
      if (!op.in_domain(x))
        throw DomainError(std::string(op.name()) + ": operand " + operand +
                          "(" + std::to_string(i) + ", " + std::to_string(j) +
                          ") = " + std::to_string(raw) +
                          (round ? " leaves the domain after half rounding"
                                 : " outside the domain"));
    }
}

}  // namespace

void check_mmo_operands(const SemiringOp& op, const MatrixBuffer& a,
                        const MatrixBuffer& b, const MatrixBuffer& c,
                        const MatrixBuffer& d, bool check_domain) {
  if (&d == &a || &d == &b)
    throw ShapeError("mmo: output must not alias an input operand");
  if (a.cols() != b.rows() || a.rows() != c.rows() || b.cols() != c.cols())
    throw ShapeError("mmo: shapes (" + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()) + ") * (" +
                     std::to_string(b.rows()) + "x" + std::to_string(b.cols()) +
                     ") with seed (" + std::to_string(c.rows()) + "x" +
                     std::to_string(c.cols()) + ") are inconsistent");
  if (a.mode() != c.mode() || b.mode() != c.mode())
    throw ShapeError("mmo: operands carry different precision modes");
  if (check_domain) {
    const bool round = c.mode() == PrecisionMode::Mixed16;
    scan_domain(op, a, round, "a");
    scan_domain(op, b, round, "b");
    scan_domain(op, c, false, "c");
  }
}

int resolve_thread_count(int requested, long work_items) {
  long t = requested > 0 ? requested
                         : static_cast<long>(std::max(
                               1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("SEMIRING_MXU_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    t = std::min(t, std::max(1L, cap));
  }
  return static_cast<int>(std::clamp(t, 1L, std::max(1L, work_items)));
}

void parallel_over(long items, int threads, OpCounters& counters,
                   void (*body)(long begin, long end, OpCounters&, void*),
                   void* ctx) {
  if (threads <= 1 || items <= 1) {
    body(0, items, counters, ctx);
    return;
  }
  std::vector<OpCounters> locals(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const long chunk = (items + threads - 1) / threads;
  for (int w = 0; w < threads; ++w) {
    const long begin = w * chunk;
    const long end = std::min(items, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(body, begin, end, std::ref(locals[w]), ctx);
  }
  for (auto& t : pool) t.join();
  for (const auto& local : locals) counters.merge(local);
}

// Anchor the production tile dimension so link errors cannot silently pick
// a different instantiation.
template void mmo_into_tiled<kTileDim>(const SemiringOp&, const MatrixBuffer&,
                                       const MatrixBuffer&,
                                       const MatrixBuffer&, MatrixBuffer&,
                                       OpCounters&, const MmoOptions&);

}  // namespace detail

std::uint64_t tile_op_count(long m, long n, long k) {
  const auto tiles = [](long x) {
    return static_cast<std::uint64_t>((x + kTileDim - 1) / kTileDim);
  };
  return tiles(m) * tiles(n) * tiles(k);
}

void mmo_into(const SemiringOp& op, const MatrixBuffer& a,
              const MatrixBuffer& b, const MatrixBuffer& c, MatrixBuffer& d,
              OpCounters& counters, const MmoOptions& opts) {
  detail::mmo_into_tiled<kTileDim>(op, a, b, c, d, counters, opts);
}

MatrixBuffer mmo(const SemiringOp& op, const MatrixBuffer& a,
                 const MatrixBuffer& b, const MatrixBuffer& c,
                 OpCounters& counters, const MmoOptions& opts) {
  MatrixBuffer d;
  mmo_into(op, a, b, c, d, counters, opts);
  return d;
}

MatrixBuffer mmo_reference(const SemiringOp& op, const MatrixBuffer& a,
                           const MatrixBuffer& b, const MatrixBuffer& c) {
  MatrixBuffer unused_d(c.rows(), c.cols(), 0.0f, c.mode());
  detail::check_mmo_operands(op, a, b, c, unused_d, true);
  const long m = a.rows(), n = b.cols(), k = a.cols();
  const bool round = c.mode() == PrecisionMode::Mixed16;

  MatrixBuffer d(m, n, 0.0f, c.mode());
  for (long i = 0; i < m; ++i)
    for (long j = 0; j < n; ++j) {
      float acc = c.at(i, j);
      for (long t = 0; t < k; ++t) {
        float av = a.at(i, t), bv = b.at(t, j);
        if (round) {
          av = round_to_half(av);
          bv = round_to_half(bv);
        }
        acc = op.oplus(acc, op.otimes(av, bv));
      }
      d.at(i, j) = acc;
    }
  return d;
}

}  // namespace smx
