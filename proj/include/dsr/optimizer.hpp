#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dsr/analysis.hpp"
#include "dsr/channel.hpp"

namespace dsr {

/// Solution of the finite-transmission bandwidth optimization. When the
/// code-family beta(d1) is not an integer, M is scaled by the smallest
/// integer making alpha and beta integral; gamma_hat counts packets at that
/// scale, gamma_hat/scale is the per-original-file value used for ranking.
struct PracticalPlan {
  int d1 = 0;
  int d2 = 0;
  int t = 0;
  int beta = 0;           // integer per-helper repair packets (after scaling)
  BigInt scale = 1;       // M multiplier applied to make alpha, beta integral
  int64_t gamma_hat = 0;  // (d1+d2)*t at the scaled file size
  Rational gamma_hat_normalized = 0;  // gamma_hat / scale
  double achieved_ps = 0;
  double delta = 0;
};

namespace optimizer {

inline constexpr int kDefaultTCapFactor = 50;

int default_t_cap(int beta, const Rational& p);

/// Smallest t >= beta with P_s(d1, d2, p_beta(t)) >= 1-delta, t <= t_cap;
/// gamma_hat = (d1+d2) t. Throws InfeasibleError (carrying the best P_s in
/// the message) when no t qualifies.
PracticalPlan practical_bandwidth(const Rational& delta, int d1, int d2,
                                  int beta, const Rational& p, uint32_t q,
                                  int t_cap);

/// Exhaustive search over k <= d1 <= d_tot, 0 <= d2 <= d_tot - d1 with
/// beta(d1) from the mode's extreme point at d = d1. Ties broken by smaller
/// normalized gamma_hat, then smaller t, then smaller d1+d2, then larger d1.
PracticalPlan optimize_plan(const Rational& delta, int d_tot,
                            const SystemParams& params, CodeMode mode,
                            const Rational& p, uint32_t q, int t_cap = 0);

struct SweepRow {
  Rational p;
  bool feasible = true;
  PracticalPlan plan;
};

std::vector<SweepRow> sweep(const std::vector<Rational>& p_values,
                            const Rational& delta, int d_tot,
                            const SystemParams& params, CodeMode mode,
                            uint32_t q, int t_cap = 0);

/// Integer beta for the mode at helper count d1, plus the M-scale used.
struct ScaledBeta {
  int beta = 0;
  BigInt scale = 1;
};
ScaledBeta scaled_beta(CodeMode mode, const SystemParams& params, int d1);

}  // namespace optimizer
}  // namespace dsr
