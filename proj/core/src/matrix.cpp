#include "smx/matrix.hpp"

#include <bit>
#include <cmath>
#include <cstdint>

#include "smx/errors.hpp"

namespace smx {

bool bitwise_equal(const MatrixBuffer& a, const MatrixBuffer& b) {
  if (!a.same_shape(b)) return false;
  const auto& av = a.values();
  const auto& bv = b.values();
  for (std::size_t i = 0; i < av.size(); ++i) {
    if (std::bit_cast<std::uint32_t>(av[i]) !=
        std::bit_cast<std::uint32_t>(bv[i]))
      return false;
  }
  return true;
}

double max_abs_diff(const MatrixBuffer& a, const MatrixBuffer& b) {
  if (!a.same_shape(b))
    throw ShapeError("max_abs_diff: shapes differ");
  const auto& av = a.values();
  const auto& bv = b.values();
  double worst = 0.0;
  for (std::size_t i = 0; i < av.size(); ++i) {
    if (av[i] == bv[i]) continue;  // covers matching infinities
    const double d = std::fabs(static_cast<double>(av[i]) - bv[i]);
    if (d > worst) worst = d;
  }
  return worst;
}

MatrixBuffer transpose(const MatrixBuffer& m) {
  MatrixBuffer t(m.cols(), m.rows(), 0.0f, m.mode());
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j) t.at(j, i) = m.at(i, j);
  return t;
}

}  // namespace smx
