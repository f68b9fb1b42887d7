#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "braess/errors.hpp"
#include "braess/graph.hpp"

#include "test_util.hpp"

using braess::Edge;
using braess::EdgeDelta;
using braess::EdgeOp;
using braess::Errc;
using braess::Graph;
using test_util::code_of;

TEST_CASE("make_edge normalizes endpoint order and rejects loops") {
  CHECK(braess::make_edge(5, 2) == Edge{2, 5});
  CHECK(braess::make_edge(2, 5) == Edge{2, 5});
  CHECK(code_of([] { braess::make_edge(3, 3); }) == Errc::SelfLoopRejected);
}

TEST_CASE("edges compare lexicographically") {
  CHECK(Edge{0, 1} < Edge{0, 2});
  CHECK(Edge{0, 9} < Edge{1, 2});
}

TEST_CASE("graph membership and degrees") {
  Graph g(4);
  g.add_edge(0, 1);
  g.add_edge(2, 1);
  CHECK(g.num_nodes() == 4);
  CHECK(g.num_edges() == 2);
  CHECK(g.has_edge(1, 0));
  CHECK(g.has_edge(1, 2));
  CHECK_FALSE(g.has_edge(0, 2));
  CHECK(g.degree(1) == 2);
  CHECK(g.degree(3) == 0);
  CHECK(g.neighbors(1) == std::vector<int>{0, 2});

  CHECK(code_of([&] { g.add_edge(0, 1); }) == Errc::EdgeAlreadyPresent);
  CHECK(code_of([&] { g.remove_edge(0, 3); }) == Errc::EdgeAbsent);
  CHECK(code_of([&] { g.add_edge(0, 4); }) == Errc::InvalidArgument);

  g.remove_edge(1, 0);
  CHECK_FALSE(g.has_edge(0, 1));
  CHECK(g.num_edges() == 1);
}

TEST_CASE("edge list is canonical") {
  Graph g(5);
  g.add_edge(3, 4);
  g.add_edge(0, 2);
  g.add_edge(0, 1);
  g.add_edge(1, 4);
  const std::vector<Edge> want = {{0, 1}, {0, 2}, {1, 4}, {3, 4}};
  CHECK(g.edges() == want);
}

TEST_CASE("generators produce the expected shapes") {
  const Graph ring = test_util::ring(8);
  CHECK(ring.num_nodes() == 8);
  CHECK(ring.num_edges() == 8);
  for (int v = 0; v < 8; ++v) CHECK(ring.degree(v) == 2);
  CHECK(ring.has_edge(0, 7));

  const Graph path = test_util::path(5);
  CHECK(path.num_edges() == 4);
  CHECK(path.degree(0) == 1);
  CHECK(path.degree(2) == 2);

  const Graph complete = test_util::complete(6);
  CHECK(complete.num_edges() == 15);
  for (int v = 0; v < 6; ++v) CHECK(complete.degree(v) == 5);

  CHECK(code_of([] { test_util::ring(2); }) == Errc::InvalidArgument);
}

TEST_CASE("degree sum equals twice the edge count") {
  for (const Graph& g : {test_util::ring(9), test_util::er(20, 40, 3), test_util::complete(7)}) {
    const std::vector<int> d = g.degrees();
    CHECK(std::accumulate(d.begin(), d.end(), 0) == 2 * g.num_edges());
  }
}

TEST_CASE("erdos-renyi generator is exact-size, connected, and pure") {
  const Graph a = test_util::er(30, 58, 7);
  CHECK(a.num_nodes() == 30);
  CHECK(a.num_edges() == 58);
  CHECK(braess::is_connected(a));

  const Graph b = test_util::er(30, 58, 7);
  CHECK(a == b);  // same spec, same graph

  const Graph c = test_util::er(30, 58, 8);
  CHECK_FALSE(a == c);

  // m over the simple-graph maximum is a contract violation, not a retry loop.
  CHECK(code_of([] { test_util::er(5, 11, 0); }) == Errc::InvalidArgument);
  // m below n-1 can never be connected; the retry budget runs out.
  CHECK(code_of([] { test_util::er(6, 3, 0); }) == Errc::ConnectivityRetriesExhausted);
}

TEST_CASE("connectivity check") {
  CHECK(braess::is_connected(test_util::ring(5)));
  Graph split(4);
  split.add_edge(0, 1);
  split.add_edge(2, 3);
  CHECK_FALSE(braess::is_connected(split));
  CHECK(braess::is_connected(Graph(1)));
}

TEST_CASE("apply_delta round-trips through its inverse") {
  const Graph g = test_util::ring(6);
  const EdgeDelta add{braess::make_edge(0, 3), EdgeOp::Add};
  const Graph with = braess::apply_delta(g, add);
  CHECK(with.has_edge(0, 3));
  CHECK(braess::apply_delta(with, braess::inverse(add)) == g);

  CHECK(code_of([&] { braess::apply_delta(g, {Edge{0, 3}, EdgeOp::Delete}); }) == Errc::EdgeAbsent);
  CHECK(code_of([&] { braess::apply_delta(with, add); }) == Errc::EdgeAlreadyPresent);
}

TEST_CASE("deleting the last edge at a node is guarded") {
  const Graph p = test_util::path(3);  // 0-1-2
  CHECK(code_of([&] { braess::apply_delta(p, {Edge{0, 1}, EdgeOp::Delete}); }) ==
        Errc::WouldIsolateNode);
  const Graph cut = braess::apply_delta(p, {Edge{0, 1}, EdgeOp::Delete}, true);
  CHECK(cut.degree(0) == 0);
  CHECK(cut.num_edges() == 1);
}

TEST_CASE("edge list round-trip") {
  const Graph g = test_util::er(12, 20, 5);
  const Graph back = braess::read_edge_list(braess::write_edge_list(g));
  CHECK(back == g);
}

TEST_CASE("edge list parser tolerates comments and isolated trailing nodes") {
  const Graph g = braess::read_edge_list("# a comment\n\n# nodes=5 edges=2\n0 1\n\n1 2\n");
  CHECK(g.num_nodes() == 5);
  CHECK(g.num_edges() == 2);
  CHECK(g.degree(4) == 0);

  // Without a header the node count is one past the largest id.
  const Graph bare = braess::read_edge_list("0 1\n1 3\n");
  CHECK(bare.num_nodes() == 4);
}

TEST_CASE("edge list parser rejects malformed input") {
  CHECK(code_of([] { braess::read_edge_list("0 1\n1 one\n"); }) == Errc::ParseError);
  CHECK(code_of([] { braess::read_edge_list("0 1 9\n"); }) == Errc::ParseError);
  CHECK(code_of([] { braess::read_edge_list("0 1\n2 2\n"); }) == Errc::SelfLoopRejected);
  CHECK(code_of([] { braess::read_edge_list("0 1\n1 0\n"); }) == Errc::DuplicateEdgeRejected);
  CHECK(code_of([] { braess::read_edge_list("# nodes=3 edges=1\n0 5\n"); }) == Errc::ParseError);
}
