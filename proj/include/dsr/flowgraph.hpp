#pragma once

#include <string>
#include <vector>

#include "dsr/analysis.hpp"
#include "dsr/rational.hpp"

namespace dsr {

/// Edge capacity: exact rational or the infinity sentinel.
struct Capacity {
  bool infinite = false;
  Rational value = 0;

  static Capacity inf() { return {true, 0}; }
  static Capacity of(Rational v) { return {false, std::move(v)}; }
};

struct CutResult {
  bool infinite = false;   // every source/sink separation crosses an inf edge
  Rational value = 0;
  std::vector<int> source_side;  // one minimizing partition (vertex ids)
};

/// Directed acyclic information flow graph: Source, In/Out pairs per storage
/// node incarnation, shared In/Out pair per repairing storage node, DC.
class FlowGraph {
 public:
  enum class VertexKind { Source, In, Out, DC };

  struct Vertex {
    VertexKind kind;
    int node = -1;   // storage node id, or repairing node id
    int stage = -1;  // -1 for stage-0 / shared vertices
    bool repairing = false;
  };

  struct Edge {
    int from, to;
    Capacity cap;
  };

  int add_vertex(Vertex v);
  void add_edge(int from, int to, Capacity cap);

  int source() const { return source_; }
  int sink() const { return sink_; }
  void set_source(int v) { source_ = v; }
  void set_sink(int v) { sink_ = v; }

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }

  std::string vertex_label(int v) const;

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  int source_ = -1, sink_ = -1;
};

struct RepairStage {
  int failed;                 // storage node id being replaced
  std::vector<int> helpers;   // surviving node ids, size d
  bool repairing_participates = false;
};

struct RepairSchedule {
  std::vector<RepairStage> stages;
};

/// The adversarial schedule of the cut argument: stage i fails node i, the
/// helpers are the i prior newcomers plus d-i untouched originals, and the DC
/// sits on the k newcomers (on the k first originals when stages == 0).
RepairSchedule worst_case_schedule(const SystemParams& params, int stages);

/// Build the flow graph for a failure/repair schedule with the DC attached
/// to dc_nodes (k distinct storage node ids, latest incarnations).
FlowGraph build_repair_graph(const SystemParams& params,
                             const RepairSchedule& schedule,
                             const std::vector<int>& dc_nodes);

/// Max-flow = min-cut, exact on rational capacities.
CutResult min_cut(const FlowGraph& g);

/// Independent oracle: enumerates every source/sink 2-partition.
/// Refuses graphs with more than 20 non-terminal vertices.
CutResult brute_force_min_cut(const FlowGraph& g);

/// Minimum of min_cut over all C(n,k) DC placements (small n).
CutResult min_cut_over_dc_placements(const SystemParams& params,
                                     const RepairSchedule& schedule);

}  // namespace dsr
