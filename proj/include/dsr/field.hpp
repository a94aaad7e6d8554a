#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace dsr {

/// GF(q) for prime q or q = 2^m, m <= 16. Binary extension fields use one
/// fixed reduction polynomial per degree (see field.cpp) so results are
/// reproducible bit-for-bit.
class Field {
 public:
  static Field make(uint32_t q);
  static bool is_supported_order(uint32_t q);

  /// Smallest supported field order >= q_min.
  static Field smallest(uint32_t q_min);

  uint32_t q() const { return q_; }
  bool binary() const { return m_ != 0; }
  uint32_t degree() const { return m_; }           // 0 for prime fields
  uint32_t reduction_poly() const { return poly_; }  // 0 for prime fields

  uint32_t add(uint32_t a, uint32_t b) const {
    return binary() ? (a ^ b) : (a + b) % q_;
  }
  uint32_t sub(uint32_t a, uint32_t b) const {
    return binary() ? (a ^ b) : (a + q_ - b) % q_;
  }
  uint32_t neg(uint32_t a) const { return binary() ? a : (a ? q_ - a : 0); }
  uint32_t mul(uint32_t a, uint32_t b) const;
  uint32_t inv(uint32_t a) const;  // throws ValidationError on a == 0
  uint32_t div(uint32_t a, uint32_t b) const { return mul(a, inv(b)); }
  uint32_t pow(uint32_t a, uint64_t e) const;

  bool operator==(const Field& o) const { return q_ == o.q_; }

 private:
  Field(uint32_t q, uint32_t m, uint32_t poly);

  uint32_t q_ = 0;
  uint32_t m_ = 0;
  uint32_t poly_ = 0;
  // log/exp tables for binary fields
  std::shared_ptr<const std::vector<uint32_t>> log_, exp_;
};

}  // namespace dsr
