#pragma once

#include <cassert>
#include <vector>

#include "smx/semiring.hpp"

namespace smx {

/// Dense row-major float matrix tagged with the precision mode its values
/// are meant to flow through. The tag travels with the data so the engine
/// can reject accidental mode mixes.
class MatrixBuffer {
 public:
  MatrixBuffer() = default;
  MatrixBuffer(long rows, long cols, float fill = 0.0f,
               PrecisionMode mode = PrecisionMode::Exact32)
      : rows_(rows), cols_(cols), mode_(mode),
        data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
              fill) {
    assert(rows >= 0 && cols >= 0);
  }

  long rows() const { return rows_; }
  long cols() const { return cols_; }
  PrecisionMode mode() const { return mode_; }
  void set_mode(PrecisionMode mode) { mode_ = mode; }

  float at(long i, long j) const {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }
  float& at(long i, long j) {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }

  const std::vector<float>& values() const { return data_; }
  std::vector<float>& values() { return data_; }

  bool same_shape(const MatrixBuffer& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

 private:
  long rows_ = 0;
  long cols_ = 0;
  PrecisionMode mode_ = PrecisionMode::Exact32;
  std::vector<float> data_;
};

/// Bit-level equality (same shape, every value the same bit pattern).
bool bitwise_equal(const MatrixBuffer& a, const MatrixBuffer& b);

/// Largest elementwise |a - b| as a double. Positions where both sides
/// hold the same value (infinities included) contribute zero; a finite
/// value against an infinity contributes infinity.
double max_abs_diff(const MatrixBuffer& a, const MatrixBuffer& b);

MatrixBuffer transpose(const MatrixBuffer& m);

}  // namespace smx
