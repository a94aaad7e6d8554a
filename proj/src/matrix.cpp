#include "dsr/matrix.hpp"

#include <json.hpp>
#include <set>

#include "dsr/errors.hpp"

namespace dsr {

void FqMatrix::set_row(size_t r, std::span<const uint32_t> v) {
  if (v.size() != cols_) throw ValidationError("row length mismatch");
  std::copy(v.begin(), v.end(), a_.begin() + r * cols_);
}

void FqMatrix::append_rows(const FqMatrix& other) {
  if (other.cols_ != cols_) throw ValidationError("column count mismatch");
  a_.insert(a_.end(), other.a_.begin(), other.a_.end());
  rows_ += other.rows_;
}

size_t FqMatrix::rank() const {
  std::vector<uint32_t> m = a_;
  const Field& f = field_;
  size_t rank = 0;
  for (size_t col = 0; col < cols_ && rank < rows_; ++col) {
    size_t pivot = rank;
    while (pivot < rows_ && m[pivot * cols_ + col] == 0) ++pivot;
    if (pivot == rows_) continue;
    if (pivot != rank)
      for (size_t c = col; c < cols_; ++c)
        std::swap(m[pivot * cols_ + c], m[rank * cols_ + c]);
    uint32_t pinv = f.inv(m[rank * cols_ + col]);
    for (size_t r = rank + 1; r < rows_; ++r) {
      uint32_t v = m[r * cols_ + col];
      if (v == 0) continue;
      uint32_t factor = f.mul(v, pinv);
      for (size_t c = col; c < cols_; ++c)
        m[r * cols_ + c] =
            f.sub(m[r * cols_ + c], f.mul(factor, m[rank * cols_ + c]));
    }
    ++rank;
  }
  return rank;
}

FqMatrix FqMatrix::combine(const FqMatrix& row_coeffs) const {
  if (row_coeffs.cols_ != rows_)
    throw ValidationError("coefficient width must equal row count");
  FqMatrix out(row_coeffs.rows_, cols_, field_);
  for (size_t r = 0; r < row_coeffs.rows_; ++r)
    for (size_t i = 0; i < rows_; ++i) {
      uint32_t coef = row_coeffs.at(r, i);
      if (coef == 0) continue;
      for (size_t c = 0; c < cols_; ++c)
        out.at(r, c) = field_.add(out.at(r, c), field_.mul(coef, at(i, c)));
    }
  return out;
}

FqMatrix FqMatrix::random(size_t rows, size_t cols, const Field& field,
                          Rng& rng) {
  FqMatrix m(rows, cols, field);
  for (size_t r = 0; r < rows; ++r)
    for (size_t c = 0; c < cols; ++c) m.at(r, c) = rng.field_element(field);
  return m;
}

std::string FqMatrix::to_json() const {
  nlohmann::json j;
  j["q"] = field_.q();
  j["rows"] = rows_;
  j["cols"] = cols_;
  j["entries"] = a_;
  return j.dump();
}

FqMatrix FqMatrix::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  Field f = Field::make(j.at("q").get<uint32_t>());
  FqMatrix m(j.at("rows").get<size_t>(), j.at("cols").get<size_t>(), f);
  auto entries = j.at("entries").get<std::vector<uint32_t>>();
  if (entries.size() != m.rows_ * m.cols_)
    throw ValidationError("entries length != rows*cols");
  for (uint32_t v : entries)
    if (v >= f.q()) throw ValidationError("entry out of field range");
  m.a_ = std::move(entries);
  return m;
}

FqMatrix vandermonde(size_t r, size_t c, std::span<const uint32_t> elems,
                     const Field& field) {
  if (elems.size() != r) throw ValidationError("need r evaluation points");
  if (r > field.q()) throw ValidationError("vandermonde needs r <= q");
  std::set<uint32_t> distinct(elems.begin(), elems.end());
  if (distinct.size() != r)
    throw ValidationError("vandermonde evaluation points must be distinct");
  FqMatrix m(r, c, field);
  for (size_t i = 0; i < r; ++i) {
    uint32_t v = 1;
    for (size_t j = 0; j < c; ++j) {
      m.at(i, j) = v;
      v = field.mul(v, elems[i]);
    }
  }
  return m;
}

}  // namespace dsr
