#include "dsr/analysis.hpp"

#include "dsr/errors.hpp"

namespace dsr {

void SystemParams::validate() const {
  if (n < 2) throw ValidationError("n must be >= 2");
  if (k < 1 || k > d || d > n - 1)
    throw ValidationError("need 1 <= k <= d <= n-1");
  if (alpha <= 0 || beta <= 0) throw ValidationError("alpha, beta must be positive");
  if (M <= 0) throw ValidationError("M must be positive");
  if (p < 0 || p >= 1) throw ValidationError("p must be in [0, 1)");
  if (h < 0) throw ValidationError("h must be >= 0");
  if (h > 0 && !alpha_prime)
    throw ValidationError("alpha_prime required when h > 0");
  if (alpha_prime && *alpha_prime <= 0)
    throw ValidationError("alpha_prime must be positive");
}

namespace analysis {

Rational capacity(const SystemParams& params, const Rational& beta_sent) {
  if (beta_sent < 0) throw ValidationError("beta_sent must be >= 0");
  Rational one_minus_p = 1 - params.p;
  Rational total = 0;
  for (int i = 0; i < params.k; ++i) {
    Rational link = (params.d + params.h - i) * one_minus_p * beta_sent;
    total += link < params.alpha ? link : params.alpha;
  }
  return total;
}

Rational breakpoint_f(int i, const SystemParams& params) {
  int deff = params.d + params.h;
  Rational num = 2 * params.M * deff;
  Rational den = Rational((2 * params.k - i - 1) * i +
                          2 * params.k * (deff - params.k + 1));
  return num / den;
}

namespace {

Rational segment_g(int i, int deff, int k, bool printed) {
  int sign = printed ? +1 : -1;
  return Rational((2 * deff + sign * 2 * k + i + 1) * i, 2 * deff);
}

}  // namespace

TradeoffAlpha tradeoff_alpha(const Rational& gamma_prime,
                             const SystemParams& params, bool printed_g) {
  int k = params.k;
  int deff = params.d + params.h;
  Rational one_minus_p = 1 - params.p;
  if (gamma_prime < breakpoint_f(k - 1, params) / one_minus_p)
    throw InfeasibleError("gamma_prime below the MBR repair bandwidth");
  if (gamma_prime >= breakpoint_f(0, params) / one_minus_p)
    return {params.M / k, 0};
  for (int i = 1; i < k; ++i) {
    if (gamma_prime >= breakpoint_f(i, params) / one_minus_p) {
      Rational g = segment_g(i, deff, k, printed_g);
      return {(params.M - g * one_minus_p * gamma_prime) / (k - i), i};
    }
  }
  throw InfeasibleError("gamma_prime below the MBR repair bandwidth");
}

TradeoffPoint extreme_point(CodeMode mode, const SystemParams& params) {
  int k = params.k;
  int deff = params.d + params.h;
  Rational one_minus_p = 1 - params.p;
  TradeoffPoint pt;
  pt.lossy = params.p > 0;
  if (mode == CodeMode::MSR) {
    pt.alpha = params.M / k;
    pt.gamma = params.M * deff / (k * (deff - k + 1) * one_minus_p);
  } else {
    pt.alpha = 2 * params.M * deff / Rational(k * (2 * deff - k + 1));
    pt.gamma = pt.alpha / one_minus_p;
  }
  pt.beta = pt.gamma * one_minus_p / deff;
  return pt;
}

HelperStorage min_helper_storage(CodeMode mode, const SystemParams& params) {
  if (params.h != 1)
    throw ValidationError("min_helper_storage is established for h = 1 only");
  if (mode == CodeMode::MSR)
    return {params.beta, Rational(params.d - params.k + 2)};
  return {params.k * params.beta, Rational(params.d + 1, params.k)};
}

std::vector<Rational> monotonicity_check(CodeMode mode,
                                         const SystemParams& params,
                                         int hmax) {
  if (params.d + hmax > params.n - 1)
    throw ValidationError("d + hmax must be <= n - 1");
  std::vector<Rational> gammas;
  gammas.reserve(hmax + 1);
  for (int h = 0; h <= hmax; ++h) {
    SystemParams q = params;
    q.d = params.d + h;
    q.h = 0;
    gammas.push_back(extreme_point(mode, q).gamma);
  }
  return gammas;
}

}  // namespace analysis
}  // namespace dsr
