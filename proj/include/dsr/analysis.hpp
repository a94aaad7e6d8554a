#pragma once

#include <optional>
#include <vector>

#include "dsr/rational.hpp"

namespace dsr {

enum class CodeMode { MSR, MBR };

/// (n, k, d, alpha, beta, M) storage system plus erasure probability p and
/// the repairing-node spec (h, alpha'). alpha/beta may be rational here;
/// integrality is enforced where codes are actually constructed.
struct SystemParams {
  int n = 0;
  int k = 0;
  int d = 0;
  Rational alpha = 0;
  Rational beta = 0;
  Rational M = 0;
  Rational p = 0;
  int h = 0;
  std::optional<Rational> alpha_prime;

  void validate() const;  // throws ValidationError
};

struct TradeoffPoint {
  Rational alpha;
  Rational gamma;  // total packets sent: (d+h)*beta, inflated by 1/(1-p) if lossy
  Rational beta;
  bool lossy = false;
};

namespace analysis {

/// Capacity under infinite failure/repair:
///   sum_{i=0}^{k-1} min{alpha, (d+h-i)(1-p)*beta_sent}.
Rational capacity(const SystemParams& params, const Rational& beta_sent);

struct TradeoffAlpha {
  Rational alpha;
  int segment;  // 0 = MSR plateau, i >= 1 = piecewise segment index
};

/// Minimal per-node storage on the optimal tradeoff at repair bandwidth
/// gamma_prime. Throws InfeasibleError below the MBR bandwidth.
/// printed_g evaluates the uncorrected published g(i) for comparison.
TradeoffAlpha tradeoff_alpha(const Rational& gamma_prime,
                             const SystemParams& params,
                             bool printed_g = false);

/// Breakpoint f(i) = 2Md/((2k-i-1)i + 2k(d-k+1)).
Rational breakpoint_f(int i, const SystemParams& params);

TradeoffPoint extreme_point(CodeMode mode, const SystemParams& params);

struct HelperStorage {
  Rational storage;        // minimal alpha' for the repairing node
  Rational saving_ratio;   // complete-node storage / alpha'
};

/// Minimal repairing-node storage (h = 1 only): MSR -> beta, MBR -> k*beta.
HelperStorage min_helper_storage(CodeMode mode, const SystemParams& params);

/// gamma(d), gamma(d+1), ..., gamma(d+hmax); nonincreasing.
std::vector<Rational> monotonicity_check(CodeMode mode,
                                         const SystemParams& params, int hmax);

}  // namespace analysis
}  // namespace dsr
