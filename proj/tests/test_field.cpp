#include <doctest.h>

#include "dsr/errors.hpp"
#include "dsr/field.hpp"
#include "dsr/rng.hpp"

using namespace dsr;

namespace {

// Independent GF(2^8) multiply: carryless product reduced by x^8+x^4+x^3+x+1.
uint32_t aes_mul(uint32_t a, uint32_t b) {
  uint32_t acc = 0;
  for (int i = 0; i < 8; ++i)
    if (b & (1u << i)) acc ^= a << i;
  for (int bit = 14; bit >= 8; --bit)
    if (acc & (1u << bit)) acc ^= 0x11Bu << (bit - 8);
  return acc;
}

void check_axioms_exhaustive(uint32_t q) {
  Field f = Field::make(q);
  for (uint32_t a = 0; a < q; ++a)
    for (uint32_t b = 0; b < q; ++b) {
      REQUIRE(f.add(a, b) == f.add(b, a));
      REQUIRE(f.mul(a, b) == f.mul(b, a));
      REQUIRE(f.sub(f.add(a, b), b) == a);
      for (uint32_t c = 0; c < q; ++c) {
        REQUIRE(f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c));
        REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      }
    }
  for (uint32_t a = 1; a < q; ++a) {
    REQUIRE(f.mul(a, f.inv(a)) == 1);
    REQUIRE(f.pow(a, q - 1) == 1);
  }
  REQUIRE(f.add(0, 0) == 0);
  REQUIRE(f.mul(0, q - 1) == 0);
}

}  // namespace

TEST_CASE("field: supported orders") {
  for (uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 13u, 16u, 256u, 257u, 65536u, 65537u})
    CHECK(Field::is_supported_order(q));
  for (uint32_t q : {0u, 1u, 6u, 9u, 10u, 12u, 15u, 131072u})
    CHECK_FALSE(Field::is_supported_order(q));
  CHECK(Field::smallest(5).q() == 5);
  CHECK(Field::smallest(6).q() == 7);
  CHECK(Field::smallest(14).q() == 16);
  CHECK(Field::smallest(21).q() == 23);
  CHECK(Field::smallest(256).q() == 256);
  CHECK_THROWS_AS(Field::make(6), ValidationError);
}

TEST_CASE("field: axioms, small orders exhaustive") {
  for (uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 13u, 16u, 17u, 32u})
    check_axioms_exhaustive(q);
}

TEST_CASE("field: axioms, large orders sampled") {
  Rng rng(0xF1E1D);
  for (uint32_t q : {101u, 257u, 65521u, 256u, 4096u, 65536u}) {
    Field f = Field::make(q);
    for (int i = 0; i < 10000; ++i) {
      uint32_t a = rng.field_element(f), b = rng.field_element(f),
               c = rng.field_element(f);
      REQUIRE(f.mul(a, b) == f.mul(b, a));
      REQUIRE(f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c));
      REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      if (a) REQUIRE(f.mul(a, f.inv(a)) == 1);
      REQUIRE(f.sub(f.add(a, b), b) == a);
    }
  }
}

TEST_CASE("field: GF(256) matches the AES reduction polynomial") {
  Field f = Field::make(256);
  CHECK(f.reduction_poly() == 0x11B);
  CHECK(f.mul(0x53, 0xCA) == 0x01);  // classic inverse pair
  CHECK(f.inv(0x53) == 0xCA);
  Rng rng(42);
  for (int i = 0; i < 2000; ++i) {
    uint32_t a = rng.field_element(f), b = rng.field_element(f);
    REQUIRE(f.mul(a, b) == aes_mul(a, b));
  }
}

TEST_CASE("field: inverse of zero throws") {
  CHECK_THROWS_AS(Field::make(7).inv(0), ValidationError);
  CHECK_THROWS_AS(Field::make(256).inv(0), ValidationError);
}

TEST_CASE("field: prime arithmetic matches integers mod p") {
  Field f = Field::make(65521);
  Rng rng(7);
  for (int i = 0; i < 10000; ++i) {
    uint64_t a = rng.field_element(f), b = rng.field_element(f);
    REQUIRE(f.mul((uint32_t)a, (uint32_t)b) == (uint32_t)(a * b % 65521));
  }
}
