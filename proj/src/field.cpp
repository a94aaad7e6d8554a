#include "dsr/field.hpp"

#include "dsr/errors.hpp"

namespace dsr {
namespace {

// Fixed reduction polynomial per extension degree (bit m..0, x^m term
// included). Degree 8 is the published x^8+x^4+x^3+x+1.
constexpr uint32_t kReductionPoly[17] = {
    0,      0x3,    0x7,    0xB,    0x13,  0x25,   0x43,   0x89,  0x11B,
    0x211,  0x409,  0x805,  0x1053, 0x201B, 0x4443, 0x8003, 0x1100B};

bool is_prime(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; (uint64_t)d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

uint32_t clmul_reduce(uint32_t a, uint32_t b, uint32_t m, uint32_t poly) {
  uint64_t r = 0, aa = a;
  while (b) {
    if (b & 1) r ^= aa;
    aa <<= 1;
    b >>= 1;
  }
  for (int bit = 2 * (int)m - 2; bit >= (int)m; --bit)
    if (r & (1ull << bit)) r ^= (uint64_t)poly << (bit - m);
  return (uint32_t)r;
}

}  // namespace

Field::Field(uint32_t q, uint32_t m, uint32_t poly) : q_(q), m_(m), poly_(poly) {
  if (m_ == 0) return;
  // log/exp tables over a multiplicative generator
  uint32_t g = 0;
  for (uint32_t cand = 2; cand < q_; ++cand) {
    uint32_t x = cand, ord = 1;
    while (x != 1) {
      x = clmul_reduce(x, cand, m_, poly_);
      ++ord;
    }
    if (ord == q_ - 1) {
      g = cand;
      break;
    }
  }
  auto exp = std::make_shared<std::vector<uint32_t>>(2 * (q_ - 1));
  auto log = std::make_shared<std::vector<uint32_t>>(q_, 0);
  uint32_t x = 1;
  for (uint32_t i = 0; i < q_ - 1; ++i) {
    (*exp)[i] = x;
    (*exp)[i + q_ - 1] = x;
    (*log)[x] = i;
    x = clmul_reduce(x, g, m_, poly_);
  }
  exp_ = std::move(exp);
  log_ = std::move(log);
}

bool Field::is_supported_order(uint32_t q) {
  if (q >= 2 && (q & (q - 1)) == 0) {
    uint32_t m = 0;
    for (uint32_t v = q; v > 1; v >>= 1) ++m;
    return m <= 16;
  }
  return q < (1u << 31) && is_prime(q);
}

Field Field::make(uint32_t q) {
  if (q >= 2 && (q & (q - 1)) == 0) {
    uint32_t m = 0;
    for (uint32_t v = q; v > 1; v >>= 1) ++m;
    if (m > 16) throw ValidationError("binary field degree > 16 unsupported");
    return Field(q, m, kReductionPoly[m]);
  }
  if (q < (1u << 31) && is_prime(q)) return Field(q, 0, 0);
  throw ValidationError("field order must be prime or 2^m (m <= 16): q=" +
                        std::to_string(q));
}

Field Field::smallest(uint32_t q_min) {
  for (uint32_t q = q_min < 2 ? 2 : q_min;; ++q)
    if (is_supported_order(q)) return make(q);
}

uint32_t Field::mul(uint32_t a, uint32_t b) const {
  if (binary()) {
    if (a == 0 || b == 0) return 0;
    return (*exp_)[(*log_)[a] + (*log_)[b]];
  }
  return (uint32_t)((uint64_t)a * b % q_);
}

uint32_t Field::inv(uint32_t a) const {
  if (a == 0) throw ValidationError("inverse of zero");
  if (binary()) return (*exp_)[(q_ - 1) - (*log_)[a]];
  return pow(a, q_ - 2);
}

uint32_t Field::pow(uint32_t a, uint64_t e) const {
  uint32_t r = 1, base = a;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

}  // namespace dsr
