#include <doctest.h>

#include "dsr/errors.hpp"
#include "dsr/optimizer.hpp"

using namespace dsr;
using namespace dsr::optimizer;

namespace {

SystemParams mbr_system() {
  SystemParams s;
  s.n = 10;
  s.k = 5;
  s.d = 9;
  s.M = 70;
  s.alpha = 18;
  s.beta = 2;
  return s;
}

}  // namespace

TEST_CASE("optimizer: delta = 1 accepts the first feasible t") {
  PracticalPlan plan = practical_bandwidth(1, 4, 1, 3, Rational(1, 2), 16, 100);
  CHECK(plan.t == 3);  // t = beta
  CHECK(plan.gamma_hat == 15);
}

TEST_CASE("optimizer: hand-checked bisection over GF(2)") {
  // d1=2, d2=0, beta=1, p=1/2, delta=1/4: P_s(t=6) = (3367/4096)^2 < 3/4,
  // P_s(t=7) = (14197/16384)^2 >= 3/4
  PracticalPlan plan =
      practical_bandwidth(Rational(1, 4), 2, 0, 1, Rational(1, 2), 2, 50);
  CHECK(plan.t == 7);
  CHECK(plan.gamma_hat == 14);
  CHECK(plan.achieved_ps >= 0.75);
  CHECK(plan.achieved_ps < 0.76);
}

TEST_CASE("optimizer: infeasible cap carries diagnostics") {
  CHECK_THROWS_AS(
      practical_bandwidth(Rational(1, 1000000), 4, 0, 2, Rational(9, 10), 256, 5),
      InfeasibleError);
  CHECK_THROWS_AS(practical_bandwidth(Rational(1, 2), 4, 0, 3, Rational(1, 2), 16, 2),
                  InfeasibleError);  // t_cap < beta
  CHECK_THROWS_AS(practical_bandwidth(2, 4, 0, 3, Rational(1, 2), 16, 50),
                  ValidationError);
}

TEST_CASE("optimizer: t grows with p and with stricter delta") {
  int prev = 0;
  for (int ptenths = 1; ptenths <= 6; ++ptenths) {
    PracticalPlan plan = practical_bandwidth(Rational(1, 100), 5, 0, 2,
                                             Rational(ptenths, 10), 256, 400);
    REQUIRE(plan.t >= prev);
    prev = plan.t;
  }
  PracticalPlan loose =
      practical_bandwidth(Rational(1, 10), 5, 0, 2, Rational(3, 10), 256, 400);
  PracticalPlan tight =
      practical_bandwidth(Rational(1, 10000), 5, 0, 2, Rational(3, 10), 256, 400);
  CHECK(tight.t >= loose.t);
  // larger fields cannot need more transmissions
  PracticalPlan small_q =
      practical_bandwidth(Rational(1, 100), 5, 0, 2, Rational(3, 10), 2, 400);
  PracticalPlan big_q =
      practical_bandwidth(Rational(1, 100), 5, 0, 2, Rational(3, 10), 65536, 400);
  CHECK(big_q.t <= small_q.t);
}

TEST_CASE("optimizer: scaled beta per helper count") {
  SystemParams s = mbr_system();
  auto b9 = scaled_beta(CodeMode::MBR, s, 9);
  CHECK(b9.beta == 2);
  CHECK(b9.scale == 1);
  auto b7 = scaled_beta(CodeMode::MBR, s, 7);
  CHECK(b7.beta == 14);
  CHECK(b7.scale == 5);
  auto b8 = scaled_beta(CodeMode::MBR, s, 8);
  CHECK(b8.beta == 7);
  CHECK(b8.scale == 3);
  auto m9 = scaled_beta(CodeMode::MSR, s, 9);
  CHECK(m9.beta == 14);
  CHECK(m9.scale == 5);
}

TEST_CASE("optimizer: plan search is deterministic and respects d_tot") {
  SystemParams s = mbr_system();
  PracticalPlan a = optimize_plan(Rational(1, 100), 9, s, CodeMode::MBR,
                                  Rational(3, 10), 256);
  PracticalPlan b = optimize_plan(Rational(1, 100), 9, s, CodeMode::MBR,
                                  Rational(3, 10), 256);
  CHECK(a.d1 == b.d1);
  CHECK(a.d2 == b.d2);
  CHECK(a.t == b.t);
  CHECK(a.d1 + a.d2 <= 9);
  CHECK(a.d1 >= 5);
  CHECK(a.achieved_ps >= 0.99);

  // d_tot = k leaves no spare links
  PracticalPlan forced = optimize_plan(Rational(1, 100), 5, s, CodeMode::MBR,
                                       Rational(3, 10), 256);
  CHECK(forced.d1 == 5);
  CHECK(forced.d2 == 0);

  CHECK_THROWS_AS(optimize_plan(Rational(1, 100), 4, s, CodeMode::MBR,
                                Rational(3, 10), 256),
                  ValidationError);
  CHECK_THROWS_AS(optimize_plan(Rational(1, 100), 9, s, CodeMode::MBR,
                                Rational(3, 10), 256, 3),
                  InfeasibleError);  // cap too small for every pair
}

TEST_CASE("optimizer: sweep rows follow the p grid") {
  SystemParams s = mbr_system();
  std::vector<Rational> ps = {Rational(1, 10), Rational(2, 10), Rational(3, 10)};
  auto rows = sweep(ps, Rational(1, 100), 9, s, CodeMode::MBR, 256);
  REQUIRE(rows.size() == 3);
  for (size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].feasible);
    CHECK(rows[i].p == ps[i]);
  }
  // normalized bandwidth grows with channel loss
  CHECK(rows[2].plan.gamma_hat_normalized >= rows[0].plan.gamma_hat_normalized);
  CHECK_THROWS_AS(sweep({Rational(2, 10), Rational(1, 10)}, Rational(1, 100), 9,
                        s, CodeMode::MBR, 256),
                  ValidationError);
}
