#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dsr/analysis.hpp"
#include "dsr/matrix.hpp"

namespace dsr {

/// Global encoding vectors of every node: nodes hold alpha rows of length M,
/// repairing nodes alpha' rows. Payload bytes are never materialized; the
/// row spaces carry every property we test.
struct StorageState {
  int file_dim = 0;  // M in packets
  std::map<int, FqMatrix> nodes;
  std::map<int, FqMatrix> helpers;  // repairing storage nodes
  SystemParams params;
  Field field = Field::make(2);

  std::string to_json() const;
  static StorageState from_json(const std::string& text);
};

struct RepairTranscript {
  int stage = -1;
  int failed = -1;
  std::map<int, FqMatrix> sent;  // helper id -> beta rows actually shipped
  FqMatrix mixing;               // newcomer coefficients over received rows

  std::string to_json() const;
};

struct ReconstructionReport {
  bool ok = true;
  std::vector<int> failing_subset;  // first failing k-subset, if any
};

inline constexpr int kDefaultRetryBudget = 32;

/// Random linear code over all n nodes; retries until the reconstruction
/// property holds. Deterministic given seed.
StorageState init_random_code(const SystemParams& params, const Field& field,
                              uint64_t seed,
                              int retry_budget = kDefaultRetryBudget);

/// Checks every C(n,k) subset of complete nodes for rank M. Repairing nodes
/// are excluded: data collectors never contact them.
ReconstructionReport check_reconstruction(const StorageState& state);

struct RepairOutcome {
  StorageState state;
  RepairTranscript transcript;
};

/// Functional repair: each helper sends beta random combinations of its own
/// rows; the newcomer keeps alpha random combinations of everything received.
/// repairing_ids name helpers map entries that also contribute beta rows each.
RepairOutcome functional_repair(const StorageState& state, int failed,
                                const std::vector<int>& helper_ids,
                                uint64_t seed,
                                const std::vector<int>& repairing_ids = {},
                                int retry_budget = kDefaultRetryBudget);

/// Appendix-style MSR construction: r x c Vandermonde generator with
/// r = n(n-k+1)+1, c = M = k(n-k+1); node i holds the i-th block of n-k+1
/// rows, the last row is the repairing storage node (alpha' = 1, beta = 1).
StorageState construct_msr_vandermonde(int n, int k, const Field& field);

/// Repair for the Vandermonde MSR state: d = n-1 survivors send one random
/// combination each, the repairing node its single stored row.
StorageState vandermonde_repair(const StorageState& state, int failed,
                                uint64_t seed,
                                int retry_budget = kDefaultRetryBudget);

/// MBR system with one repairing storage node holding k*beta rows: stages
/// 1..k fill the repairing node's per-stage blocks with fresh source-coded
/// packets; later stages resend random combinations of the stored blocks.
StorageState mbr_helper_lifecycle(const StorageState& state, int stage,
                                  int failed, uint64_t seed,
                                  int retry_budget = kDefaultRetryBudget);

/// Augmented MBR base state for mbr_helper_lifecycle: n nodes with
/// alpha = (d+1)beta, M = sum_{i=0}^{k-1} (d+1-i) beta, plus repairing node 0
/// with capacity alpha' (kept empty until the lifecycle fills it).
StorageState init_mbr_helper_system(int n, int k, int d, int beta,
                                    const Rational& alpha_prime,
                                    const Field& field, uint64_t seed);

}  // namespace dsr
