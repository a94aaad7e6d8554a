#include "dsr/flowgraph.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "dsr/errors.hpp"

namespace dsr {

int FlowGraph::add_vertex(Vertex v) {
  vertices_.push_back(v);
  return (int)vertices_.size() - 1;
}

void FlowGraph::add_edge(int from, int to, Capacity cap) {
  if (from < 0 || to < 0 || from >= (int)vertices_.size() ||
      to >= (int)vertices_.size())
    throw ValidationError("edge references unknown vertex");
  edges_.push_back({from, to, std::move(cap)});
}

std::string FlowGraph::vertex_label(int v) const {
  const Vertex& vx = vertices_.at(v);
  switch (vx.kind) {
    case VertexKind::Source:
      return "S";
    case VertexKind::DC:
      return "DC";
    case VertexKind::In:
    case VertexKind::Out: {
      std::string s = vx.kind == VertexKind::In ? "in" : "out";
      s += vx.repairing ? "_r" : "";
      s += "(" + std::to_string(vx.node);
      if (vx.stage >= 0) s += "," + std::to_string(vx.stage);
      return s + ")";
    }
  }
  return "?";
}

RepairSchedule worst_case_schedule(const SystemParams& params, int stages) {
  RepairSchedule sched;
  for (int i = 0; i < stages; ++i) {
    RepairStage st;
    st.failed = i;
    for (int j = 0; j < i; ++j) st.helpers.push_back(j);  // prior newcomers
    for (int j = i + 1; (int)st.helpers.size() < params.d; ++j) {
      if (j >= params.n)
        throw ValidationError("not enough survivors for worst-case schedule");
      st.helpers.push_back(j);
    }
    st.repairing_participates = params.h > 0;
    sched.stages.push_back(std::move(st));
  }
  return sched;
}

FlowGraph build_repair_graph(const SystemParams& params,
                             const RepairSchedule& schedule,
                             const std::vector<int>& dc_nodes) {
  FlowGraph g;
  int s = g.add_vertex({FlowGraph::VertexKind::Source});
  g.set_source(s);

  std::vector<int> cur_out(params.n);
  for (int i = 0; i < params.n; ++i) {
    int in = g.add_vertex({FlowGraph::VertexKind::In, i, -1});
    int out = g.add_vertex({FlowGraph::VertexKind::Out, i, -1});
    g.add_edge(s, in, Capacity::of(params.alpha));
    g.add_edge(in, out, Capacity::of(params.alpha));
    cur_out[i] = out;
  }

  // Repairing storage nodes share one In/Out pair across all stages; the
  // alpha' bottleneck is what limits their total contribution (Lemma-3
  // behaviour depends on it).
  std::vector<int> rep_out;
  for (int j = 0; j < params.h; ++j) {
    Rational ap = params.alpha_prime.value_or(params.alpha);
    int in = g.add_vertex({FlowGraph::VertexKind::In, j, -1, true});
    int out = g.add_vertex({FlowGraph::VertexKind::Out, j, -1, true});
    g.add_edge(s, in, Capacity::of(ap));
    g.add_edge(in, out, Capacity::of(ap));
    rep_out.push_back(out);
  }

  // Each helper ships beta' = beta/(1-p) packets of which (1-p)beta' = beta
  // arrive, so repair edges carry exactly beta.
  int stage_idx = 0;
  for (const RepairStage& st : schedule.stages) {
    if (st.failed < 0 || st.failed >= params.n)
      throw ValidationError("schedule references unknown node");
    std::set<int> seen;
    if ((int)st.helpers.size() != params.d)
      throw ValidationError("stage must have exactly d helpers");
    int in = g.add_vertex({FlowGraph::VertexKind::In, st.failed, stage_idx});
    int out = g.add_vertex({FlowGraph::VertexKind::Out, st.failed, stage_idx});
    for (int hid : st.helpers) {
      if (hid < 0 || hid >= params.n || hid == st.failed || !seen.insert(hid).second)
        throw ValidationError("invalid helper set in schedule");
      g.add_edge(cur_out[hid], in, Capacity::of(params.beta));
    }
    if (st.repairing_participates)
      for (int r : rep_out) g.add_edge(r, in, Capacity::of(params.beta));
    g.add_edge(in, out, Capacity::of(params.alpha));
    cur_out[st.failed] = out;
    ++stage_idx;
  }

  int dc = g.add_vertex({FlowGraph::VertexKind::DC});
  g.set_sink(dc);
  std::set<int> dcset(dc_nodes.begin(), dc_nodes.end());
  if (dcset.size() != dc_nodes.size() || (int)dc_nodes.size() != params.k)
    throw ValidationError("DC must attach to k distinct nodes");
  for (int id : dc_nodes) {
    if (id < 0 || id >= params.n)
      throw ValidationError("DC references unknown node");
    g.add_edge(cur_out[id], dc, Capacity::inf());
  }
  return g;
}

namespace {

struct DinicEdge {
  int to;
  BigInt cap;
  size_t rev;
};

class Dinic {
 public:
  explicit Dinic(int n) : adj_(n), level_(n), iter_(n) {}

  void add(int u, int v, BigInt cap) {
    adj_[u].push_back({v, std::move(cap), adj_[v].size()});
    adj_[v].push_back({u, 0, adj_[u].size() - 1});
  }

  BigInt max_flow(int s, int t) {
    BigInt flow = 0;
    while (bfs(s, t)) {
      std::fill(iter_.begin(), iter_.end(), 0u);
      for (;;) {
        BigInt f = dfs(s, t, BigInt(-1));
        if (f == 0) break;
        flow += f;
      }
    }
    return flow;
  }

  std::vector<int> reachable(int s) const {
    std::vector<char> vis(adj_.size(), 0);
    std::queue<int> q;
    q.push(s);
    vis[s] = 1;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (const auto& e : adj_[u])
        if (e.cap > 0 && !vis[e.to]) {
          vis[e.to] = 1;
          q.push(e.to);
        }
    }
    std::vector<int> out;
    for (int i = 0; i < (int)vis.size(); ++i)
      if (vis[i]) out.push_back(i);
    return out;
  }

 private:
  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    q.push(s);
    level_[s] = 0;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (const auto& e : adj_[u])
        if (e.cap > 0 && level_[e.to] < 0) {
          level_[e.to] = level_[u] + 1;
          q.push(e.to);
        }
    }
    return level_[t] >= 0;
  }

  BigInt dfs(int u, int t, BigInt limit) {
    if (u == t) return limit;
    for (size_t& i = iter_[u]; i < adj_[u].size(); ++i) {
      DinicEdge& e = adj_[u][i];
      if (e.cap <= 0 || level_[e.to] != level_[u] + 1) continue;
      BigInt pass = (limit < 0 || e.cap < limit) ? e.cap : limit;
      BigInt f = dfs(e.to, t, pass);
      if (f > 0) {
        e.cap -= f;
        adj_[e.to][e.rev].cap += f;
        return f;
      }
    }
    return 0;
  }

  std::vector<std::vector<DinicEdge>> adj_;
  std::vector<int> level_;
  std::vector<size_t> iter_;
};

BigInt lcm_of_denominators(const FlowGraph& g) {
  BigInt scale = 1;
  for (const auto& e : g.edges())
    if (!e.cap.infinite) {
      BigInt den = boost::multiprecision::denominator(e.cap.value);
      scale = boost::multiprecision::lcm(scale, den);
    }
  return scale;
}

}  // namespace

CutResult min_cut(const FlowGraph& g) {
  if (g.source() < 0 || g.sink() < 0)
    throw ValidationError("graph needs a source and a sink");
  BigInt scale = lcm_of_denominators(g);
  BigInt finite_sum = 0;
  for (const auto& e : g.edges())
    if (!e.cap.infinite)
      finite_sum += boost::multiprecision::numerator(Rational(e.cap.value * scale));
  BigInt inf_cap = finite_sum + 1;

  Dinic dinic((int)g.vertices().size());
  for (const auto& e : g.edges())
    dinic.add(e.from, e.to,
              e.cap.infinite
                  ? inf_cap
                  : boost::multiprecision::numerator(Rational(e.cap.value * scale)));
  BigInt flow = dinic.max_flow(g.source(), g.sink());

  CutResult res;
  res.source_side = dinic.reachable(g.source());
  if (flow > finite_sum) {
    res.infinite = true;
    return res;
  }
  res.value = Rational(flow, scale);
  return res;
}

CutResult brute_force_min_cut(const FlowGraph& g) {
  int n = (int)g.vertices().size();
  int s = g.source(), t = g.sink();
  std::vector<int> free_vs;
  for (int v = 0; v < n; ++v)
    if (v != s && v != t) free_vs.push_back(v);
  if (free_vs.size() > 20)
    throw ValidationError("brute-force min-cut limited to 20 vertices");

  bool found = false;
  Rational best = 0;
  std::vector<int> best_side;
  for (uint64_t mask = 0; mask < (1ull << free_vs.size()); ++mask) {
    std::vector<char> in_u(n, 0);
    in_u[s] = 1;
    for (size_t i = 0; i < free_vs.size(); ++i)
      if (mask & (1ull << i)) in_u[free_vs[i]] = 1;
    Rational cut = 0;
    bool crosses_inf = false;
    for (const auto& e : g.edges()) {
      if (!in_u[e.from] || in_u[e.to]) continue;
      if (e.cap.infinite) {
        crosses_inf = true;
        break;
      }
      cut += e.cap.value;
    }
    if (crosses_inf) continue;
    if (!found || cut < best) {
      found = true;
      best = cut;
      best_side.clear();
      for (int v = 0; v < n; ++v)
        if (in_u[v]) best_side.push_back(v);
    }
  }
  CutResult res;
  if (!found) {
    res.infinite = true;
    return res;
  }
  res.value = best;
  res.source_side = std::move(best_side);
  return res;
}

CutResult min_cut_over_dc_placements(const SystemParams& params,
                                     const RepairSchedule& schedule) {
  std::vector<int> comb(params.k);
  for (int i = 0; i < params.k; ++i) comb[i] = i;
  bool found = false;
  CutResult best;
  for (;;) {
    CutResult r = min_cut(build_repair_graph(params, schedule, comb));
    if (!found || (!r.infinite && (best.infinite || r.value < best.value))) {
      found = true;
      best = r;
    }
    // next combination
    int i = params.k - 1;
    while (i >= 0 && comb[i] == params.n - params.k + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < params.k; ++j) comb[j] = comb[j - 1] + 1;
  }
  return best;
}

}  // namespace dsr
