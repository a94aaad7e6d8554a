#include <doctest.h>

#include <cmath>

#include "dsr/channel.hpp"
#include "dsr/matrix.hpp"
#include "dsr/errors.hpp"
#include "dsr/rng.hpp"

using namespace dsr;
using namespace dsr::channel;

namespace {

// Exhaustive oracle for tiny cases: enumerate every erasure pattern and every
// coefficient matrix, count the full-rank ones.
Rational p_beta_enumerated(int t, int beta, const Rational& p, uint32_t q) {
  Field f = Field::make(q);
  Rational total = 0;
  for (int i = beta; i <= t; ++i) {
    uint64_t mats = 1;
    for (int e = 0; e < beta * i; ++e) mats *= q;
    uint64_t full = 0;
    for (uint64_t code = 0; code < mats; ++code) {
      FqMatrix m((size_t)i, (size_t)beta, f);
      uint64_t c = code;
      for (int r = 0; r < i; ++r)
        for (int col = 0; col < beta; ++col) {
          m.at(r, col) = (uint32_t)(c % q);
          c /= q;
        }
      if (m.rank() == (size_t)beta) ++full;
    }
    total += Rational(binomial(t, i)) *
             rpow(1 - p, (unsigned)i) *
             rpow(p, (unsigned)(t - i)) * Rational(full, mats);
  }
  return total;
}

}  // namespace

TEST_CASE("channel: p_beta exact values") {
  CHECK(p_beta_exact(2, 1, Rational(1, 2), 2) == Rational(7, 16));
  CHECK(p_beta_exact(1, 2, Rational(1, 10), 8) == 0);  // t < beta
  CHECK(p_beta_exact(3, 0, Rational(1, 3), 4) == 1);
  // p = 0: all rows arrive; 15*14*12*8 / 2^16 full-rank 4x4 over GF(2)
  CHECK(p_beta_exact(4, 4, 0, 2) == Rational(315, 1024));
  // p = 1: nothing arrives
  CHECK(p_beta_exact(6, 1, 1, 16) == 0);
}

TEST_CASE("channel: p_beta matches full enumeration") {
  CHECK(p_beta_exact(3, 2, Rational(1, 3), 2) ==
        p_beta_enumerated(3, 2, Rational(1, 3), 2));
  CHECK(p_beta_exact(3, 1, Rational(1, 2), 3) ==
        p_beta_enumerated(3, 1, Rational(1, 2), 3));
  CHECK(p_beta_exact(2, 2, Rational(2, 5), 4) ==
        p_beta_enumerated(2, 2, Rational(2, 5), 4));
}

TEST_CASE("channel: p_beta monotonicity and the q->inf envelope") {
  Rational p(3, 10);
  for (int beta : {1, 2, 3}) {
    Rational prev = 0;
    for (int t = beta; t <= beta + 8; ++t) {
      Rational cur = p_beta_exact(t, beta, p, 16);
      REQUIRE(cur >= prev);  // more transmissions never hurt
      prev = cur;
      // bounded by the pure-erasure binomial tail
      Rational tail = 0;
      for (int i = beta; i <= t; ++i)
        tail += Rational(binomial(t, i)) *
                rpow(1 - p, (unsigned)i) *
                rpow(p, (unsigned)(t - i));
      REQUIRE(cur <= tail);
      // larger fields only help
      REQUIRE(p_beta_exact(t, beta, p, 256) >= cur);
    }
  }
}

TEST_CASE("channel: double path tracks the exact path") {
  for (int t : {3, 8, 20})
    for (int beta : {1, 2, 4}) {
      for (uint32_t q : {2u, 256u, 65536u}) {
        Rational p(29, 100);
        double exact = to_double(p_beta_exact(t, beta, p, q));
        double approx = p_beta(t, beta, p, q);
        REQUIRE(std::abs(exact - approx) < 1e-12);
      }
    }
}

TEST_CASE("channel: system success probability") {
  CHECK(psr_exact(9, 0, Rational(9, 10)) ==
        rpow(Rational(9, 10), 9));
  // 7-of-9 with pb = 0.9: binomial tail
  Rational tail = psr_exact(7, 2, Rational(9, 10));
  CHECK(std::abs(to_double(tail) - 0.947028) < 1e-5);
  CHECK(psr_exact(3, 2, 1) == 1);
  CHECK(psr_exact(3, 2, 0) == 0);
  CHECK(std::abs(psr(7, 2, 0.9) - to_double(tail)) < 1e-12);
  CHECK_THROWS_AS(psr_exact(3, 1, Rational(11, 10)), ValidationError);
  // more spare links never hurt
  for (int d2 = 0; d2 < 5; ++d2)
    REQUIRE(psr_exact(5, d2 + 1, Rational(3, 4)) >= psr_exact(5, d2, Rational(3, 4)));
}

TEST_CASE("channel: parallel and serial simulators agree bit for bit") {
  Field f = Field::make(256);
  SimulatePlan plan{3, 1, 6, 2};
  PsrResult par = simulate_repair(plan, 0.25, f, 20000, 99);
  PsrResult ser = simulate_repair_serial(plan, 0.25, f, 20000, 99);
  CHECK(par.p_s == ser.p_s);
  CHECK(par.ci_halfwidth == ser.ci_halfwidth);
  // different seed, different estimate (sanity that the seed matters)
  PsrResult other = simulate_repair(plan, 0.25, f, 20000, 100);
  CHECK(other.p_s != par.p_s);
}

TEST_CASE("channel: simulation agrees with the analytic formula") {
  Field f = Field::make(16);
  for (auto [t, beta, p] : {std::tuple{5, 2, 0.3}, {8, 3, 0.2}, {4, 1, 0.5}}) {
    SimulatePlan plan{4, 2, t, beta};
    double analytic = psr(4, 2, p_beta(t, beta, Rational((int)std::lround(p * 10), 10), f.q()));
    PsrResult emp = simulate_repair(plan, p, f, 60000, 4242);
    REQUIRE(std::abs(emp.p_s - analytic) <
            3.5 * std::sqrt(analytic * (1 - analytic) / 60000.0) + 1e-6);
  }
}

TEST_CASE("channel: per-link full rank matches the q-product") {
  Field f = Field::make(2);
  // 3 received rows in GF(2)^2: (1 - 1/8)(1 - 2/8) = 21/32
  double expect = 21.0 / 32.0;
  Rng rng(77);
  int n = 20000, hits = 0;
  for (int i = 0; i < n; ++i)
    if (link_full_rank_once(3, 2, f, rng)) ++hits;
  double est = (double)hits / n;
  CHECK(std::abs(est - expect) < 3.5 * std::sqrt(expect * (1 - expect) / n));
  // fewer rows than beta can never be full rank
  CHECK_FALSE(link_full_rank_once(1, 2, f, rng));
}

TEST_CASE("channel: csv table is deterministic and well formed") {
  std::string a = psr_table_csv(3, 1, 2, Rational(1, 4), 16, 2, 6, 3000, 5);
  std::string b = psr_table_csv(3, 1, 2, Rational(1, 4), 16, 2, 6, 3000, 5);
  CHECK(a == b);
  CHECK(a.substr(0, a.find('\n')) ==
        "t,p_beta,p_s_analytic,p_s_empirical,ci_halfwidth");
  // one header plus five rows
  CHECK(std::count(a.begin(), a.end(), '\n') == 6);
}
