#include "dsr/channel.hpp"

#include <cmath>
#include <sstream>

#include "dsr/errors.hpp"
#include "dsr/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dsr {
namespace channel {

Rational p_beta_exact(int t, int beta, const Rational& p, uint32_t q) {
  if (t < 0 || beta < 0) throw ValidationError("t, beta must be >= 0");
  if (t < beta) return 0;
  if (beta == 0) return 1;
  // Every term is integral over pd^t * q^(beta t); accumulate numerators in
  // big integers and normalize once.
  BigInt pn = boost::multiprecision::numerator(p);
  BigInt pd = boost::multiprecision::denominator(p);
  BigInt good = pd - pn;  // numerator of 1-p over pd
  BigInt bq = q;
  BigInt sum = 0;
  for (int i = beta; i <= t; ++i) {
    BigInt term = binomial(t, i) * boost::multiprecision::pow(good, i) *
                  boost::multiprecision::pow(pn, t - i);
    BigInt qi = boost::multiprecision::pow(bq, i);
    for (int l = 0; l < beta; ++l)
      term *= qi - boost::multiprecision::pow(bq, l);
    // lift from q^(beta i) to the common q^(beta t)
    term *= boost::multiprecision::pow(bq, (unsigned)beta * (t - i));
    sum += term;
  }
  BigInt den = boost::multiprecision::pow(pd, t) *
               boost::multiprecision::pow(bq, (unsigned)beta * t);
  return Rational(sum, den);
}

double p_beta(int t, int beta, const Rational& p, uint32_t q) {
  if (t < 0 || beta < 0) throw ValidationError("t, beta must be >= 0");
  if (t < beta) return 0.0;
  if (beta == 0) return 1.0;
  long double sum = 0;
  Rational one_minus_p = 1 - p;
  double lq = std::log((double)q);
  for (int i = beta; i <= t; ++i) {
    Rational prob = Rational(binomial(t, i)) *
                    rpow(one_minus_p, (unsigned)i) *
                    rpow(p, (unsigned)(t - i));
    long double qfactor = 1.0L;
    for (int l = 0; l < beta; ++l) {
      long double e = std::exp((long double)(l - i) * lq);
      if (e < 1e-30L) break;  // remaining factors are 1 to double precision
      qfactor *= 1.0L - e;
    }
    sum += (long double)to_double(prob) * qfactor;
  }
  return (double)sum;
}

Rational psr_exact(int d1, int d2, const Rational& pb) {
  if (pb < 0 || pb > 1) throw ValidationError("pb must be in [0,1]");
  if (d2 == 0) return rpow(pb, (unsigned)d1);
  Rational sum = 0;
  int dtot = d1 + d2;
  for (int i = d1; i <= dtot; ++i)
    sum += Rational(binomial(dtot, i)) * rpow(pb, (unsigned)i) *
           rpow(1 - pb, (unsigned)(dtot - i));
  return sum;
}

double psr(int d1, int d2, double pb) {
  if (pb < 0 || pb > 1) throw ValidationError("pb must be in [0,1]");
  if (d2 == 0) return std::pow(pb, d1);
  long double sum = 0;
  int dtot = d1 + d2;
  for (int i = d1; i <= dtot; ++i)
    sum += to_double(Rational(binomial(dtot, i))) * std::pow(pb, i) *
           std::pow(1.0 - pb, dtot - i);
  return (double)sum;
}

namespace {

/// Incremental rank tracking over GF(q): rows live in a flat beta*beta
/// scratch buffer, one echelon row per achieved rank.
struct RankScratch {
  explicit RankScratch(int beta)
      : beta(beta), rows(beta * (size_t)beta), leads(beta), row(beta) {}

  int beta;
  std::vector<uint32_t> rows;
  std::vector<int> leads;
  std::vector<uint32_t> row;
  int rank = 0;

  void reset() { rank = 0; }

  /// Eliminates `row` against the basis; returns true if it extends it.
  bool insert(const Field& f) {
    for (int r = 0; r < rank; ++r) {
      int lead = leads[r];
      if (row[lead] == 0) continue;
      const uint32_t* b = rows.data() + (size_t)r * beta;
      uint32_t factor = f.div(row[lead], b[lead]);
      for (int c = lead; c < beta; ++c)
        row[c] = f.sub(row[c], f.mul(factor, b[c]));
    }
    for (int c = 0; c < beta; ++c)
      if (row[c] != 0) {
        std::copy(row.begin(), row.end(), rows.begin() + (size_t)rank * beta);
        leads[rank] = c;
        ++rank;
        return true;
      }
    return false;
  }
};

bool one_trial(const SimulatePlan& plan, double p, const Field& field,
               Rng& rng, RankScratch& scratch) {
  int links_ok = 0;
  int links = plan.d1 + plan.d2;
  for (int link = 0; link < links; ++link) {
    scratch.reset();
    for (int pkt = 0; pkt < plan.t && scratch.rank < plan.beta; ++pkt) {
      if (rng.bernoulli(p)) continue;  // erased
      for (int c = 0; c < plan.beta; ++c)
        scratch.row[c] = rng.field_element(field);
      scratch.insert(field);
    }
    if (scratch.rank == plan.beta) ++links_ok;
  }
  return links_ok >= plan.d1;
}

PsrResult summarize(uint64_t successes, uint64_t trials) {
  PsrResult res;
  res.empirical = true;
  res.trials = trials;
  res.p_s = (double)successes / (double)trials;
  res.ci_halfwidth =
      2.5758293035489004 * std::sqrt(res.p_s * (1.0 - res.p_s) / (double)trials);
  return res;
}

}  // namespace

PsrResult simulate_repair(const SimulatePlan& plan, double p,
                          const Field& field, uint64_t trials, uint64_t seed) {
  if (trials < 1) throw ValidationError("trials must be >= 1");
  uint64_t successes = 0;
#pragma omp parallel
  {
    RankScratch scratch(plan.beta);
#pragma omp for reduction(+ : successes) schedule(static)
    for (int64_t trial = 0; trial < (int64_t)trials; ++trial) {
      Rng rng = Rng::substream(seed, (uint64_t)trial);
      if (one_trial(plan, p, field, rng, scratch)) ++successes;
    }
  }
  return summarize(successes, trials);
}

PsrResult simulate_repair_serial(const SimulatePlan& plan, double p,
                                 const Field& field, uint64_t trials,
                                 uint64_t seed) {
  if (trials < 1) throw ValidationError("trials must be >= 1");
  uint64_t successes = 0;
  RankScratch scratch(plan.beta);
  for (uint64_t trial = 0; trial < trials; ++trial) {
    Rng rng = Rng::substream(seed, trial);
    if (one_trial(plan, p, field, rng, scratch)) ++successes;
  }
  return summarize(successes, trials);
}

bool link_full_rank_once(int received, int beta, const Field& field, Rng& rng) {
  RankScratch scratch(beta);
  for (int pkt = 0; pkt < received && scratch.rank < beta; ++pkt) {
    for (int c = 0; c < beta; ++c) scratch.row[c] = rng.field_element(field);
    scratch.insert(field);
  }
  return scratch.rank == beta;
}

std::string psr_table_csv(int d1, int d2, int beta, const Rational& p,
                          uint32_t q, int t_min, int t_max, uint64_t trials,
                          uint64_t seed) {
  Field field = Field::make(q);
  double pd = to_double(p);
  std::ostringstream os;
  os << "t,p_beta,p_s_analytic,p_s_empirical,ci_halfwidth\n";
  char buf[256];
  for (int t = t_min; t <= t_max; ++t) {
    double pb = p_beta(t, beta, p, q);
    double ps = psr(d1, d2, pb);
    PsrResult emp = simulate_repair({d1, d2, t, beta}, pd, field, trials,
                                    seed ^ (uint64_t)t * 0x2545F4914F6CDD1Dull);
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g\n", t, pb, ps,
                  emp.p_s, emp.ci_halfwidth);
    os << buf;
  }
  return os.str();
}

}  // namespace channel
}  // namespace dsr
