#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "braess/errors.hpp"

namespace braess {

// Unordered node pair stored with u < v.
struct Edge {
  int u = 0;
  int v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Normalizes (a, b) to canonical orientation. Self-loops are rejected.
Edge make_edge(int a, int b);

enum class EdgeOp { Add, Delete };

// One unit edge flip: Add is a +1 weight change, Delete is -1.
struct EdgeDelta {
  Edge edge;
  EdgeOp op = EdgeOp::Add;

  friend bool operator==(const EdgeDelta&, const EdgeDelta&) = default;
};

EdgeDelta inverse(const EdgeDelta& delta);

// Undirected simple graph on dense node indices [0, n). Neighbor lists stay
// sorted, so edge iteration is canonical: (u, v) with u < v, lexicographic.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int num_nodes);

  int num_nodes() const { return static_cast<int>(adj_.size()); }
  int num_edges() const { return num_edges_; }

  int degree(int u) const {
    check_node(u);
    return static_cast<int>(adj_[u].size());
  }

  const std::vector<int>& neighbors(int u) const {
    check_node(u);
    return adj_[u];
  }

  std::vector<int> degrees() const;

  bool has_edge(int a, int b) const;
  void add_edge(int a, int b);
  void remove_edge(int a, int b);

  // All edges in canonical order.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check_node(int u) const;

  std::vector<std::vector<int>> adj_;
  int num_edges_ = 0;
};

struct GeneratorSpec {
  enum class Family { Ring, ErdosRenyiNM, Path, Complete };

  Family family = Family::Ring;
  int n = 0;
  int m = 0;  // ErdosRenyiNM only
  std::uint64_t seed = 0;
};

// Deterministic: equal GeneratorSpec values produce bit-identical edge sets.
// ErdosRenyiNM samples uniform m-edge graphs and rejects disconnected draws
// (at most 1000 attempts, then ConnectivityRetriesExhausted).
Graph generate(const GeneratorSpec& spec);

// BFS from node 0 reaches every node.
bool is_connected(const Graph& g);

// Applies one edge flip and returns the updated graph. Deleting the last
// edge at either endpoint is an error unless allow_isolation is set.
Graph apply_delta(const Graph& g, const EdgeDelta& delta,
                  bool allow_isolation = false);

// Text format: one "u v" pair per line; '#' starts a comment; blank lines are
// ignored. An optional "# nodes=<n> edges=<m>" header fixes the node count
// (otherwise it is max endpoint + 1).
Graph read_edge_list(const std::string& text);

// Canonical form: header comment, then edges sorted (u < v, lexicographic).
std::string write_edge_list(const Graph& g);

}  // namespace braess
