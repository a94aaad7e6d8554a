#include "dsr/optimizer.hpp"

#include <sstream>

#include "dsr/errors.hpp"

namespace dsr {
namespace optimizer {

namespace {

// Exact evaluation is used while the q-power bit count stays moderate;
// beyond that the high-precision double path of channel::p_beta takes over.
constexpr int64_t kExactBitBudget = 20000;

int log2_of(uint32_t q) {
  int b = 0;
  while ((1u << b) < q) ++b;
  return b;
}

bool meets_target_exact(int d1, int d2, int beta, int t, const Rational& p,
                        uint32_t q, const Rational& delta, double* ps_out) {
  Rational pb = channel::p_beta_exact(t, beta, p, q);
  Rational ps = channel::psr_exact(d1, d2, pb);
  *ps_out = to_double(ps);
  return ps >= 1 - delta;
}

bool meets_target_double(int d1, int d2, int beta, int t, const Rational& p,
                         uint32_t q, const Rational& delta, double* ps_out) {
  double pb = channel::p_beta(t, beta, p, q);
  double ps = channel::psr(d1, d2, pb);
  *ps_out = ps;
  return (long double)ps >= 1.0L - (long double)to_double(delta);
}

}  // namespace

int default_t_cap(int beta, const Rational& p) {
  Rational r = Rational(beta) / (1 - p);
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  BigInt ceil = (num + den - 1) / den;
  return kDefaultTCapFactor * ceil.convert_to<int>();
}

PracticalPlan practical_bandwidth(const Rational& delta, int d1, int d2,
                                  int beta, const Rational& p, uint32_t q,
                                  int t_cap) {
  if (delta < 0 || delta > 1) throw ValidationError("delta must be in [0,1]");
  if (beta < 1) throw ValidationError("beta must be >= 1");
  if (d1 < 1 || d2 < 0) throw ValidationError("need d1 >= 1, d2 >= 0");
  if (t_cap < beta)
    throw InfeasibleError("t_cap below beta: no plan can carry beta packets");

  bool exact = (int64_t)log2_of(q) * beta * t_cap <= kExactBitBudget;
  auto meets = [&](int t, double* ps) {
    return exact ? meets_target_exact(d1, d2, beta, t, p, q, delta, ps)
                 : meets_target_double(d1, d2, beta, t, p, q, delta, ps);
  };

  double ps_cap = 0;
  if (!meets(t_cap, &ps_cap)) {
    std::ostringstream os;
    os << "no t <= " << t_cap << " reaches P_s >= 1-delta (best P_s = "
       << ps_cap << " at t = " << t_cap << ")";
    throw InfeasibleError(os.str());
  }

  // P_s is nondecreasing in t, so bisect for the smallest feasible t.
  int lo = beta, hi = t_cap;
  double ps_lo = 0;
  if (meets(lo, &ps_lo)) hi = lo;
  while (lo < hi) {
    int mid = lo + (hi - lo) / 2;
    double ps_mid = 0;
    if (meets(mid, &ps_mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  PracticalPlan plan;
  plan.d1 = d1;
  plan.d2 = d2;
  plan.t = hi;
  plan.beta = beta;
  plan.gamma_hat = (int64_t)(d1 + d2) * hi;
  plan.gamma_hat_normalized = plan.gamma_hat;
  meets(hi, &plan.achieved_ps);
  plan.delta = to_double(delta);
  return plan;
}

ScaledBeta scaled_beta(CodeMode mode, const SystemParams& params, int d1) {
  SystemParams q = params;
  q.d = d1;
  q.h = 0;
  q.p = 0;
  Rational beta = analysis::extreme_point(mode, q).beta;
  BigInt scale = boost::multiprecision::denominator(beta);
  BigInt b = boost::multiprecision::numerator(beta);
  return {b.convert_to<int>(), scale};
}

PracticalPlan optimize_plan(const Rational& delta, int d_tot,
                            const SystemParams& params, CodeMode mode,
                            const Rational& p, uint32_t q, int t_cap) {
  if (d_tot < params.k || d_tot > params.n - 1)
    throw ValidationError("need k <= d_tot <= n-1");
  bool found = false;
  PracticalPlan best;
  std::ostringstream diag;
  for (int d1 = params.k; d1 <= d_tot; ++d1) {
    ScaledBeta sb = scaled_beta(mode, params, d1);
    for (int d2 = 0; d2 + d1 <= d_tot; ++d2) {
      int cap = t_cap > 0 ? t_cap : default_t_cap(sb.beta, p);
      try {
        PracticalPlan plan = practical_bandwidth(delta, d1, d2, sb.beta, p, q, cap);
        plan.scale = sb.scale;
        plan.gamma_hat_normalized = Rational(plan.gamma_hat, sb.scale);
        // total order: normalized bandwidth, then t, then d1+d2, then larger d1
        bool better =
            !found ||
            std::tuple(plan.gamma_hat_normalized, plan.t, plan.d1 + plan.d2,
                       -plan.d1) < std::tuple(best.gamma_hat_normalized,
                                              best.t, best.d1 + best.d2,
                                              -best.d1);
        if (better) {
          best = plan;
          found = true;
        }
      } catch (const InfeasibleError& e) {
        diag << "(d1=" << d1 << ",d2=" << d2 << "): " << e.what() << "; ";
      }
    }
  }
  if (!found)
    throw InfeasibleError("no (d1,d2) pair is feasible: " + diag.str());
  return best;
}

std::vector<SweepRow> sweep(const std::vector<Rational>& p_values,
                            const Rational& delta, int d_tot,
                            const SystemParams& params, CodeMode mode,
                            uint32_t q, int t_cap) {
  for (size_t i = 1; i < p_values.size(); ++i)
    if (p_values[i] < p_values[i - 1])
      throw ValidationError("p values must be sorted ascending");
  std::vector<SweepRow> rows(p_values.size());
  for (size_t i = 0; i < p_values.size(); ++i) {
    rows[i].p = p_values[i];
    try {
      rows[i].plan = optimize_plan(delta, d_tot, params, mode, p_values[i], q, t_cap);
    } catch (const InfeasibleError&) {
      rows[i].feasible = false;
    }
  }
  return rows;
}

}  // namespace optimizer
}  // namespace dsr
