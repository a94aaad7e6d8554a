#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dsr/field.hpp"
#include "dsr/rational.hpp"
#include "dsr/rng.hpp"

namespace dsr {

struct ChannelSpec {
  Rational p;    // i.i.d. packet erasure probability, [0, 1)
  int t = 0;     // transmissions per helper
  uint32_t q = 256;
};

struct PsrResult {
  double p_beta = 0;       // per-link success probability
  double p_s = 0;          // system success probability
  bool empirical = false;
  uint64_t trials = 0;
  double ci_halfwidth = 0;  // 99% normal-approximation half-width
};

namespace channel {

/// Probability of recovering beta packets from t transmissions over an
/// erasure link with random GF(q) combination coefficients:
///   sum_{i=beta}^{t} C(t,i)(1-p)^i p^{t-i} prod_{l=0}^{beta-1}(q^i-q^l)/q^{beta i}
/// and 0 when t < beta. Exact rational arithmetic throughout.
Rational p_beta_exact(int t, int beta, const Rational& p, uint32_t q);

/// High-precision variant: binomial terms exact, the q-product in double.
/// Suitable for large t*beta where the exact q-product is too costly.
double p_beta(int t, int beta, const Rational& p, uint32_t q);

/// P_s for d1 required links out of d1+d2: pb^d1 when d2 = 0, else the
/// binomial tail sum_{i=d1}^{d1+d2} C(d1+d2,i) pb^i (1-pb)^{d1+d2-i}.
Rational psr_exact(int d1, int d2, const Rational& pb);
double psr(int d1, int d2, double pb);

struct SimulatePlan {
  int d1 = 0;
  int d2 = 0;
  int t = 0;
  int beta = 0;
};

/// Monte Carlo PSR: per trial, each of d1+d2 links carries t packets erased
/// i.i.d.; a link succeeds when its received random combinations reach rank
/// beta over GF(q); the trial succeeds when >= d1 links do. Per-trial RNG
/// streams derive from (seed, trial), so parallel and serial runs agree
/// bit for bit.
PsrResult simulate_repair(const SimulatePlan& plan, double p,
                          const Field& field, uint64_t trials, uint64_t seed);

/// Serial reference for the OpenMP kernel above; identical results.
PsrResult simulate_repair_serial(const SimulatePlan& plan, double p,
                                 const Field& field, uint64_t trials,
                                 uint64_t seed);

/// One trial of a single link with exactly `received` surviving packets;
/// used to check the q-product term of the analytic formula in isolation.
bool link_full_rank_once(int received, int beta, const Field& field, Rng& rng);

/// CSV rows (t, p_beta, p_s_analytic, p_s_empirical, ci_halfwidth) for
/// t in [t_min, t_max]; deterministic given seed.
std::string psr_table_csv(int d1, int d2, int beta, const Rational& p,
                          uint32_t q, int t_min, int t_max, uint64_t trials,
                          uint64_t seed);

}  // namespace channel
}  // namespace dsr
