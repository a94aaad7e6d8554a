#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dsr/field.hpp"
#include "dsr/rng.hpp"

namespace dsr {

/// Dense row-major matrix over GF(q). Exact arithmetic only.
class FqMatrix {
 public:
  FqMatrix() : rows_(0), cols_(0), field_(Field::make(2)) {}
  FqMatrix(size_t rows, size_t cols, const Field& field)
      : rows_(rows), cols_(cols), a_(rows * cols, 0), field_(field) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  const Field& field() const { return field_; }

  uint32_t at(size_t r, size_t c) const { return a_[r * cols_ + c]; }
  uint32_t& at(size_t r, size_t c) { return a_[r * cols_ + c]; }
  std::span<const uint32_t> row(size_t r) const {
    return {a_.data() + r * cols_, cols_};
  }
  std::span<const uint32_t> entries() const { return a_; }

  void set_row(size_t r, std::span<const uint32_t> v);
  void append_rows(const FqMatrix& other);

  size_t rank() const;

  /// row_coeffs * this, one combined row per coefficient row.
  FqMatrix combine(const FqMatrix& row_coeffs) const;

  /// Uniform random matrix, deterministic given rng state.
  static FqMatrix random(size_t rows, size_t cols, const Field& field, Rng& rng);

  bool operator==(const FqMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_ &&
           field_.q() == o.field_.q();
  }

  /// {"q":..,"rows":..,"cols":..,"entries":[...]}
  std::string to_json() const;
  static FqMatrix from_json(const std::string& text);

 private:
  size_t rows_, cols_;
  std::vector<uint32_t> a_;
  Field field_;
};

/// Vandermonde matrix: entry (i,j) = elems[i]^j. Elements must be pairwise
/// distinct and r <= q, so every c x c minor is nonsingular.
FqMatrix vandermonde(size_t r, size_t c, std::span<const uint32_t> elems,
                     const Field& field);

}  // namespace dsr
