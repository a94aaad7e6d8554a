#include "dsr/codesim.hpp"

#include <algorithm>
#include <json.hpp>

#include "dsr/errors.hpp"

namespace dsr {
namespace {

int64_t as_packets(const Rational& r, const char* what) {
  if (boost::multiprecision::denominator(r) != 1 || r < 0)
    throw ValidationError(std::string(what) + " must be a nonnegative integer packet count");
  return boost::multiprecision::numerator(r).convert_to<int64_t>();
}

/// Lossless cut bound with `contributors` senders of beta packets each.
bool cut_bound_holds(const SystemParams& params, int contributors) {
  Rational total = 0;
  for (int i = 0; i < params.k; ++i) {
    Rational link = (contributors - i) * params.beta;
    if (link < 0) link = 0;
    total += link < params.alpha ? link : params.alpha;
  }
  return total >= params.M;
}

nlohmann::json matrix_to_json_obj(const FqMatrix& m) {
  return nlohmann::json::parse(m.to_json());
}

FqMatrix matrix_from_json_obj(const nlohmann::json& j) {
  return FqMatrix::from_json(j.dump());
}

}  // namespace

std::string StorageState::to_json() const {
  nlohmann::json j;
  j["file_dim"] = file_dim;
  j["q"] = field.q();
  j["params"] = {{"n", params.n},     {"k", params.k},
                 {"d", params.d},     {"h", params.h},
                 {"alpha", to_string(params.alpha)},
                 {"beta", to_string(params.beta)},
                 {"M", to_string(params.M)},
                 {"p", to_string(params.p)}};
  if (params.alpha_prime)
    j["params"]["alpha_prime"] = to_string(*params.alpha_prime);
  for (const auto& [id, m] : nodes) j["nodes"][std::to_string(id)] = matrix_to_json_obj(m);
  for (const auto& [id, m] : helpers)
    j["helpers"][std::to_string(id)] = matrix_to_json_obj(m);
  return j.dump();
}

StorageState StorageState::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  StorageState st;
  st.file_dim = j.at("file_dim").get<int>();
  st.field = Field::make(j.at("q").get<uint32_t>());
  const auto& p = j.at("params");
  st.params.n = p.at("n").get<int>();
  st.params.k = p.at("k").get<int>();
  st.params.d = p.at("d").get<int>();
  st.params.h = p.at("h").get<int>();
  st.params.alpha = parse_rational(p.at("alpha").get<std::string>());
  st.params.beta = parse_rational(p.at("beta").get<std::string>());
  st.params.M = parse_rational(p.at("M").get<std::string>());
  st.params.p = parse_rational(p.at("p").get<std::string>());
  if (p.contains("alpha_prime"))
    st.params.alpha_prime = parse_rational(p.at("alpha_prime").get<std::string>());
  if (j.contains("nodes"))
    for (auto& [key, val] : j.at("nodes").items())
      st.nodes.emplace(std::stoi(key), matrix_from_json_obj(val));
  if (j.contains("helpers"))
    for (auto& [key, val] : j.at("helpers").items())
      st.helpers.emplace(std::stoi(key), matrix_from_json_obj(val));
  return st;
}

std::string RepairTranscript::to_json() const {
  nlohmann::json j;
  j["stage"] = stage;
  j["failed"] = failed;
  for (const auto& [id, m] : sent) j["sent"][std::to_string(id)] = matrix_to_json_obj(m);
  j["mixing"] = matrix_to_json_obj(mixing);
  return j.dump();
}

StorageState init_random_code(const SystemParams& params, const Field& field,
                              uint64_t seed, int retry_budget) {
  params.validate();
  int64_t alpha = as_packets(params.alpha, "alpha");
  int64_t M = as_packets(params.M, "M");
  as_packets(params.beta, "beta");
  for (int attempt = 0; attempt < retry_budget; ++attempt) {
    Rng rng = Rng::substream(seed, attempt);
    StorageState st;
    st.file_dim = (int)M;
    st.field = field;
    st.params = params;
    for (int i = 0; i < params.n; ++i)
      st.nodes.emplace(i, FqMatrix::random(alpha, M, field, rng));
    if (check_reconstruction(st).ok) return st;
  }
  throw ConstructionError(
      "random code construction exhausted retries at q=" +
      std::to_string(field.q()) + " (field too small)");
}

ReconstructionReport check_reconstruction(const StorageState& state) {
  std::vector<int> ids;
  for (const auto& [id, m] : state.nodes) ids.push_back(id);
  int n = (int)ids.size(), k = state.params.k;
  if (k > n) return {false, {}};
  std::vector<int> comb(k);
  for (int i = 0; i < k; ++i) comb[i] = i;
  for (;;) {
    FqMatrix stack(0, state.file_dim, state.field);
    for (int i : comb) stack.append_rows(state.nodes.at(ids[i]));
    if (stack.rank() != (size_t)state.file_dim) {
      ReconstructionReport rep;
      rep.ok = false;
      for (int i : comb) rep.failing_subset.push_back(ids[i]);
      return rep;
    }
    int i = k - 1;
    while (i >= 0 && comb[i] == n - k + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
  }
  return {true, {}};
}

RepairOutcome functional_repair(const StorageState& state, int failed,
                                const std::vector<int>& helper_ids,
                                uint64_t seed,
                                const std::vector<int>& repairing_ids,
                                int retry_budget) {
  if (!state.nodes.count(failed))
    throw ValidationError("failed node not present");
  for (int id : helper_ids)
    if (!state.nodes.count(id) || id == failed)
      throw ValidationError("invalid helper id");
  for (int id : repairing_ids)
    if (!state.helpers.count(id))
      throw ValidationError("invalid repairing node id");

  int64_t alpha = as_packets(state.params.alpha, "alpha");
  int64_t beta = as_packets(state.params.beta, "beta");
  int contributors = (int)(helper_ids.size() + repairing_ids.size());
  if (!cut_bound_holds(state.params, contributors))
    throw InfeasibleError("cut bound violated: capacity below M for " +
                          std::to_string(contributors) + " contributors");

  Rng rng(seed);
  for (int attempt = 0; attempt < retry_budget; ++attempt) {
    RepairTranscript tr;
    tr.failed = failed;
    FqMatrix received(0, state.file_dim, state.field);
    for (int id : helper_ids) {
      const FqMatrix& rows = state.nodes.at(id);
      FqMatrix coeffs = FqMatrix::random(beta, rows.rows(), state.field, rng);
      FqMatrix sent = rows.combine(coeffs);
      received.append_rows(sent);
      tr.sent.emplace(id, std::move(sent));
    }
    for (int id : repairing_ids) {
      const FqMatrix& rows = state.helpers.at(id);
      FqMatrix sent(0, state.file_dim, state.field);
      if ((int64_t)rows.rows() == beta) {
        sent = rows;  // ships its entire content
      } else {
        FqMatrix coeffs = FqMatrix::random(beta, rows.rows(), state.field, rng);
        sent = rows.combine(coeffs);
      }
      received.append_rows(sent);
      tr.sent.emplace(~id, std::move(sent));  // keyed apart from node ids
    }
    FqMatrix mixing = FqMatrix::random(alpha, received.rows(), state.field, rng);
    StorageState next = state;
    next.nodes.at(failed) = received.combine(mixing);
    // A repairing node that ships its whole content must keep its rows
    // outside the newcomer's span: the rows are fixed forever, and a later
    // collector pairing this newcomer with a node repaired from the same
    // rows would be rank-deficient.
    bool sustainable = true;
    for (int id : repairing_ids) {
      const FqMatrix& rows = state.helpers.at(id);
      if ((int64_t)rows.rows() != beta) continue;
      FqMatrix probe(0, state.file_dim, state.field);
      probe.append_rows(next.nodes.at(failed));
      probe.append_rows(rows);
      size_t want = std::min((size_t)state.file_dim, (size_t)alpha + rows.rows());
      if (probe.rank() != want) sustainable = false;
    }
    if (sustainable && check_reconstruction(next).ok) {
      tr.mixing = std::move(mixing);
      return {std::move(next), std::move(tr)};
    }
  }
  throw ConstructionError("repair mixing exhausted retries at q=" +
                          std::to_string(state.field.q()) +
                          " (field too small)");
}

StorageState construct_msr_vandermonde(int n, int k, const Field& field) {
  if (k < 1 || k > n - 1) throw ValidationError("need 1 <= k <= n-1");
  int r = n * (n - k + 1) + 1;
  int c = k * (n - k + 1);
  if ((int64_t)field.q() < r)
    throw ValidationError("vandermonde MSR needs q >= r = " + std::to_string(r));
  std::vector<uint32_t> elems(r);
  for (int i = 0; i < r; ++i) elems[i] = (uint32_t)i;
  FqMatrix g = vandermonde(r, c, elems, field);

  StorageState st;
  st.file_dim = c;
  st.field = field;
  st.params.n = n;
  st.params.k = k;
  st.params.d = n - 1;
  st.params.h = 1;
  st.params.alpha = n - k + 1;
  st.params.beta = 1;
  st.params.M = c;
  st.params.alpha_prime = 1;
  int block = n - k + 1;
  for (int i = 0; i < n; ++i) {
    FqMatrix rows(block, c, field);
    for (int b = 0; b < block; ++b) rows.set_row(b, g.row(i * block + b));
    st.nodes.emplace(i, std::move(rows));
  }
  FqMatrix rep(1, c, field);
  rep.set_row(0, g.row(r - 1));
  st.helpers.emplace(0, std::move(rep));
  return st;
}

StorageState vandermonde_repair(const StorageState& state, int failed,
                                uint64_t seed, int retry_budget) {
  std::vector<int> helper_ids;
  for (const auto& [id, m] : state.nodes)
    if (id != failed) helper_ids.push_back(id);
  return functional_repair(state, failed, helper_ids, seed, {0}, retry_budget)
      .state;
}

StorageState init_mbr_helper_system(int n, int k, int d, int beta,
                                    const Rational& alpha_prime,
                                    const Field& field, uint64_t seed) {
  if (k < 1 || k > d || d > n - 1) throw ValidationError("need 1 <= k <= d <= n-1");
  SystemParams params;
  params.n = n;
  params.k = k;
  params.d = d;
  params.h = 1;
  params.beta = beta;
  params.alpha = (d + 1) * beta;
  Rational M = 0;
  for (int i = 0; i < k; ++i) M += (d + 1 - i) * beta;
  params.M = M;
  params.alpha_prime = alpha_prime;
  StorageState st = init_random_code(params, field, seed);
  int64_t ap = as_packets(alpha_prime, "alpha_prime");
  st.helpers.emplace(0, FqMatrix((size_t)ap, st.file_dim, field));
  return st;
}

StorageState mbr_helper_lifecycle(const StorageState& state, int stage,
                                  int failed, uint64_t seed,
                                  int retry_budget) {
  if (stage < 1) throw ValidationError("stage index starts at 1");
  if (!state.helpers.count(0))
    throw ValidationError("state has no repairing storage node");
  int64_t beta = as_packets(state.params.beta, "beta");
  StorageState cur = state;
  FqMatrix& rep = cur.helpers.at(0);
  int blocks = (int)(rep.rows() / beta);

  Rng rng = Rng::substream(seed, (uint64_t)stage);
  if (stage <= blocks) {
    // fresh source-coded packets become this stage's stored block
    FqMatrix block = FqMatrix::random(beta, cur.file_dim, cur.field, rng);
    for (int64_t r = 0; r < beta; ++r)
      rep.set_row((stage - 1) * beta + r, block.row(r));
  }

  std::vector<int> helper_ids;
  for (const auto& [id, m] : cur.nodes)
    if (id != failed && (int)helper_ids.size() < cur.params.d)
      helper_ids.push_back(id);

  // Build the repairing node's contribution for this stage.
  FqMatrix contribution(0, cur.file_dim, cur.field);
  if (stage <= blocks) {
    FqMatrix b(beta, cur.file_dim, cur.field);
    for (int64_t r = 0; r < beta; ++r)
      b.set_row(r, rep.row((stage - 1) * beta + r));
    contribution = std::move(b);
  } else {
    FqMatrix coeffs = FqMatrix::random(beta, rep.rows(), cur.field, rng);
    contribution = rep.combine(coeffs);
  }

  if (!cut_bound_holds(cur.params, (int)helper_ids.size() + 1))
    throw InfeasibleError("cut bound violated in helper lifecycle");

  int64_t alpha = as_packets(cur.params.alpha, "alpha");
  FqMatrix received(0, cur.file_dim, cur.field);
  for (int id : helper_ids) {
    const FqMatrix& rows = cur.nodes.at(id);
    FqMatrix coeffs = FqMatrix::random(beta, rows.rows(), cur.field, rng);
    received.append_rows(rows.combine(coeffs));
  }
  received.append_rows(contribution);

  for (int attempt = 0; attempt < retry_budget; ++attempt) {
    FqMatrix mixing = FqMatrix::random(alpha, received.rows(), cur.field, rng);
    StorageState next = cur;
    next.nodes.at(failed) = received.combine(mixing);
    if (check_reconstruction(next).ok) return next;
  }
  throw ConstructionError(
      "helper lifecycle repair exhausted retries at stage " +
      std::to_string(stage));
}

}  // namespace dsr
