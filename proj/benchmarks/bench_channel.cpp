// Compares the OpenMP Monte Carlo PSR kernel against the serial reference.
// Usage: bench_channel [trials]

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "dsr/channel.hpp"

using namespace dsr;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  uint64_t trials = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 200000;
  Field field = Field::make(256);
  channel::SimulatePlan plan{7, 2, 20, 2};
  double p = 0.3;

  // warm up field tables and thread pool
  channel::simulate_repair(plan, p, field, 1000, 1);

  auto t0 = Clock::now();
  PsrResult par = channel::simulate_repair(plan, p, field, trials, 42);
  double t_par = seconds_since(t0);

  t0 = Clock::now();
  PsrResult ser =
      channel::simulate_repair_serial(plan, p, field, trials, 42);
  double t_ser = seconds_since(t0);

  std::printf("plan: d1=%d d2=%d t=%d beta=%d p=%.2f q=%u trials=%llu\n",
              plan.d1, plan.d2, plan.t, plan.beta, p, field.q(),
              (unsigned long long)trials);
  std::printf("parallel: %.3fs  (P_s = %.6f)\n", t_par, par.p_s);
  std::printf("serial:   %.3fs  (P_s = %.6f)\n", t_ser, ser.p_s);
  std::printf("speedup:  %.2fx\n", t_ser / t_par);
  if (par.p_s != ser.p_s) {
    std::printf("MISMATCH: parallel and serial kernels disagree\n");
    return 1;
  }
  return 0;
}
