#include "braess/graph.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <set>
#include <sstream>
#include <unordered_set>

#include "braess/rng.hpp"

namespace braess {

Edge make_edge(int a, int b) {
  if (a == b) fail(Errc::SelfLoopRejected, "self-loop at node " + std::to_string(a));
  if (a < 0 || b < 0) fail(Errc::InvalidArgument, "negative node index");
  return a < b ? Edge{a, b} : Edge{b, a};
}

EdgeDelta inverse(const EdgeDelta& delta) {
  return {delta.edge, delta.op == EdgeOp::Add ? EdgeOp::Delete : EdgeOp::Add};
}

Graph::Graph(int num_nodes) {
  if (num_nodes < 0) fail(Errc::InvalidArgument, "negative node count");
  adj_.resize(static_cast<std::size_t>(num_nodes));
}

void Graph::check_node(int u) const {
  if (u < 0 || u >= num_nodes())
    fail(Errc::InvalidArgument,
         "node " + std::to_string(u) + " outside [0, " + std::to_string(num_nodes()) + ")");
}

std::vector<int> Graph::degrees() const {
  std::vector<int> d(adj_.size());
  for (std::size_t u = 0; u < adj_.size(); ++u) d[u] = static_cast<int>(adj_[u].size());
  return d;
}

bool Graph::has_edge(int a, int b) const {
  check_node(a);
  check_node(b);
  if (a == b) return false;
  const auto& list = adj_[a].size() <= adj_[b].size() ? adj_[a] : adj_[b];
  const int other = adj_[a].size() <= adj_[b].size() ? b : a;
  return std::binary_search(list.begin(), list.end(), other);
}

void Graph::add_edge(int a, int b) {
  const Edge e = make_edge(a, b);
  check_node(e.u);
  check_node(e.v);
  if (has_edge(e.u, e.v))
    fail(Errc::EdgeAlreadyPresent,
         "(" + std::to_string(e.u) + ", " + std::to_string(e.v) + ")");
  auto insert_sorted = [](std::vector<int>& list, int x) {
    list.insert(std::lower_bound(list.begin(), list.end(), x), x);
  };
  insert_sorted(adj_[e.u], e.v);
  insert_sorted(adj_[e.v], e.u);
  ++num_edges_;
}

void Graph::remove_edge(int a, int b) {
  const Edge e = make_edge(a, b);
  check_node(e.u);
  check_node(e.v);
  if (!has_edge(e.u, e.v))
    fail(Errc::EdgeAbsent, "(" + std::to_string(e.u) + ", " + std::to_string(e.v) + ")");
  auto erase_sorted = [](std::vector<int>& list, int x) {
    list.erase(std::lower_bound(list.begin(), list.end(), x));
  };
  erase_sorted(adj_[e.u], e.v);
  erase_sorted(adj_[e.v], e.u);
  --num_edges_;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(num_edges_));
  for (int u = 0; u < num_nodes(); ++u)
    for (int v : adj_[u])
      if (v > u) out.push_back({u, v});
  return out;
}

namespace {

Graph ring(int n) {
  if (n < 3) fail(Errc::InvalidArgument, "ring needs n >= 3");
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

Graph path(int n) {
  if (n < 1) fail(Errc::InvalidArgument, "path needs n >= 1");
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph complete(int n) {
  if (n < 1) fail(Errc::InvalidArgument, "complete graph needs n >= 1");
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

// Lexicographic rank -> (u, v): row u holds pairs (u, u+1) .. (u, n-1).
Edge decode_pair(std::uint64_t idx, int n) {
  const double nn = static_cast<double>(n);
  int u = static_cast<int>(nn - 0.5 - std::sqrt((nn - 0.5) * (nn - 0.5) - 2.0 * static_cast<double>(idx)));
  if (u < 0) u = 0;
  auto offset = [n](int row) {
    return static_cast<std::uint64_t>(row) * static_cast<std::uint64_t>(n) -
           static_cast<std::uint64_t>(row) * (static_cast<std::uint64_t>(row) + 1) / 2;
  };
  while (u > 0 && offset(u) > idx) --u;
  while (offset(u + 1) <= idx) ++u;
  const int v = u + 1 + static_cast<int>(idx - offset(u));
  return {u, v};
}

Graph erdos_renyi_nm(int n, int m, std::uint64_t seed) {
  if (n < 1) fail(Errc::InvalidArgument, "erdos-renyi needs n >= 1");
  const std::uint64_t total =
      static_cast<std::uint64_t>(n) * (static_cast<std::uint64_t>(n) - 1) / 2;
  if (m < 0 || static_cast<std::uint64_t>(m) > total)
    fail(Errc::InvalidArgument, "edge count " + std::to_string(m) + " outside [0, " +
                                    std::to_string(total) + "]");
  Rng rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    // Floyd's sampler: uniform m-subset of pair ranks without enumeration.
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(static_cast<std::size_t>(m) * 2);
    for (std::uint64_t j = total - static_cast<std::uint64_t>(m); j < total; ++j) {
      const std::uint64_t t = rng.below(j + 1);
      chosen.insert(chosen.count(t) ? j : t);
    }
    Graph g(n);
    for (std::uint64_t idx : chosen) {
      const Edge e = decode_pair(idx, n);
      g.add_edge(e.u, e.v);
    }
    if (is_connected(g)) return g;
  }
  fail(Errc::ConnectivityRetriesExhausted,
       "no connected graph with n=" + std::to_string(n) + " m=" + std::to_string(m) +
           " after 1000 draws");
}

}  // namespace

Graph generate(const GeneratorSpec& spec) {
  switch (spec.family) {
    case GeneratorSpec::Family::Ring: return ring(spec.n);
    case GeneratorSpec::Family::Path: return path(spec.n);
    case GeneratorSpec::Family::Complete: return complete(spec.n);
    case GeneratorSpec::Family::ErdosRenyiNM: return erdos_renyi_nm(spec.n, spec.m, spec.seed);
  }
  fail(Errc::InvalidArgument, "unknown generator family");
}

bool is_connected(const Graph& g) {
  const int n = g.num_nodes();
  if (n <= 1) return true;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> queue{0};
  seen[0] = 1;
  int visited = 1;
  while (!queue.empty()) {
    const int u = queue.back();
    queue.pop_back();
    for (int v : g.neighbors(u)) {
      if (!seen[v]) {
        seen[v] = 1;
        ++visited;
        queue.push_back(v);
      }
    }
  }
  return visited == n;
}

Graph apply_delta(const Graph& g, const EdgeDelta& delta, bool allow_isolation) {
  Graph out = g;
  if (delta.op == EdgeOp::Add) {
    out.add_edge(delta.edge.u, delta.edge.v);
  } else {
    if (!allow_isolation) {
      if (!g.has_edge(delta.edge.u, delta.edge.v))
        fail(Errc::EdgeAbsent,
             "(" + std::to_string(delta.edge.u) + ", " + std::to_string(delta.edge.v) + ")");
      if (g.degree(delta.edge.u) == 1 || g.degree(delta.edge.v) == 1)
        fail(Errc::WouldIsolateNode,
             "deleting (" + std::to_string(delta.edge.u) + ", " +
                 std::to_string(delta.edge.v) + ") leaves a degree-0 node");
    }
    out.remove_edge(delta.edge.u, delta.edge.v);
  }
  return out;
}

Graph read_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  long long header_nodes = -1;
  std::vector<Edge> edges;
  std::set<Edge> seen;
  int max_node = -1;

  while (std::getline(in, line)) {
    ++line_no;
    std::size_t i = 0;
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i == line.size()) continue;
    if (line[i] == '#') {
      // The canonical header pins the node count; other comments are skipped.
      const auto pos = line.find("nodes=");
      if (header_nodes < 0 && pos != std::string::npos) {
        long long n = 0;
        std::size_t j = pos + 6;
        bool any = false;
        while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) {
          n = n * 10 + (line[j] - '0');
          ++j;
          any = true;
        }
        if (any) header_nodes = n;
      }
      continue;
    }
    std::istringstream fields(line.substr(i));
    long long a = 0, b = 0;
    if (!(fields >> a >> b))
      fail(Errc::ParseError, "line " + std::to_string(line_no) + ": expected \"u v\"");
    std::string rest;
    if (fields >> rest && rest[0] != '#')
      fail(Errc::ParseError, "line " + std::to_string(line_no) + ": trailing token \"" + rest + "\"");
    if (a < 0 || b < 0)
      fail(Errc::ParseError, "line " + std::to_string(line_no) + ": negative node index");
    if (a == b)
      fail(Errc::SelfLoopRejected, "line " + std::to_string(line_no) + ": " + std::to_string(a) +
                                       " " + std::to_string(b));
    const Edge e = make_edge(static_cast<int>(a), static_cast<int>(b));
    if (!seen.insert(e).second)
      fail(Errc::DuplicateEdgeRejected,
           "line " + std::to_string(line_no) + ": (" + std::to_string(e.u) + ", " +
               std::to_string(e.v) + ") repeated");
    edges.push_back(e);
    max_node = std::max({max_node, e.u, e.v});
  }

  const int n = header_nodes >= 0 ? static_cast<int>(header_nodes) : max_node + 1;
  if (max_node >= n)
    fail(Errc::ParseError, "header nodes=" + std::to_string(n) +
                               " but edge references node " + std::to_string(max_node));
  Graph g(n);
  for (const Edge& e : edges) g.add_edge(e.u, e.v);
  return g;
}

std::string write_edge_list(const Graph& g) {
  std::ostringstream out;
  out << "# nodes=" << g.num_nodes() << " edges=" << g.num_edges() << "\n";
  for (const Edge& e : g.edges()) out << e.u << " " << e.v << "\n";
  return out.str();
}

}  // namespace braess
