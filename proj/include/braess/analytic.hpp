#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "braess/graph.hpp"
#include "braess/spectrum.hpp"

namespace braess {

// Closed-form spectral gap of the n-ring: 1 - cos(2*pi/n).
double ring_gap(int n);

// Unit eigenvector in the ring's two-dimensional gap eigenspace:
//   f(k) = sqrt(2) * (mu * sin(2*pi*k/n) + nu * cos(2*pi*k/n))
//          / sqrt(n * (mu^2 + nu^2))
Eigen::VectorXd ring_eigenvector(int n, double mu, double nu);

struct RingEigenbasis {
  int n = 0;
  double mu = 0.0;
  double nu = 0.0;
  Eigen::VectorXd vector;
};

RingEigenbasis make_ring_eigenbasis(int n, double mu, double nu);

/**
 * Inputs for the edge-addition certificate. `graph` is the sparser graph (the
 * candidate edge absent), `gap`/`fiedler` its eigenpair, and `projection` the
 * overlap <fiedler, f0_hat> with the augmented graph's kernel vector, which is
 * known analytically from degrees:
 *   f0_hat(k) = sqrt(d_k + [k in {u,v}]) / sqrt(2 * (|E| + 1)).
 */
struct EldanInputs {
  const Graph* graph = nullptr;
  double gap = 0.0;
  Eigen::VectorXd fiedler;
  Edge edge;
  double projection = 0.0;
};

// Overlap of `fiedler` with the augmented graph's kernel vector, from the
// degree formula above. O(|V|).
double eldan_projection(const Graph& g, const Eigen::VectorXd& fiedler, Edge e);

// Same quantity given the precomputed sum over f(k)*sqrt(d_k); O(1). Scoring
// loops use this with the sum hoisted out of the candidate loop.
double eldan_projection_from_sum(double weighted_sum, int num_edges, double fu,
                                 double fv, int du, int dv);

EldanInputs make_eldan_inputs(const Graph& g, double gap,
                              const Eigen::VectorXd& fiedler, Edge e);

/**
 * Certificate value g(u, v, L). A strictly positive value certifies that
 * adding the edge (u, v) strictly decreases the spectral gap (evaluated at
 * the exact eigenpair of the sparser graph):
 *
 *   g = -P^2 * gap
 *       - 2 (1 - gap) * [ a_u f_u^2 + a_v f_v^2 ]
 *       + 2 f_u f_v / sqrt((d_u + 1)(d_v + 1))
 *   a_w = (sqrt(d_w + 1) - sqrt(d_w)) / sqrt(d_w + 1)
 *
 * Errors: EdgeAlreadyPresent if the edge is in the graph.
 */
double eldan_criterion(const EldanInputs& in);

/**
 * The built-in eight-node showcase family (CLI fixture tag "figure1"):
 * base = ring + chord {0,3}; minus = ring; plus = base + {0,5};
 * tilde = base + {4,7}. Published gaps ride along for regression checks, and
 * labels carry the two node classes (+1 / -1) used by the smoothing lab.
 */
struct BraessFixtures {
  Graph minus;    // 8-ring
  Graph base;     // ring + {0,3}
  Graph plus;     // base + {0,5}: gap rises
  Graph tilde;    // base + {4,7}: gap falls
  std::array<double, 4> published_gaps{};  // minus, base, plus, tilde
  std::array<int, 8> labels{};             // +1 / -1 per node
};

BraessFixtures braess_fixtures();

/**
 * Cheeger constant by exhaustive enumeration of the 2^(n-1) - 1 nontrivial
 * splits (subsets containing node 0, full set excluded):
 *   h = min |boundary(S)| / min(vol(S), vol(V \ S))
 * Guarded at 20 nodes (GraphTooLargeForEnumeration).
 */
double cheeger_constant(const Graph& g);

struct ReferenceCell {
  int row = 0;
  std::string cell;
  double expected = 0.0;
  double computed = 0.0;
  double abs_error = 0.0;
  bool pass = false;
};

struct ReferenceReport {
  std::vector<ReferenceCell> cells;
  bool all_pass = false;
};

/**
 * Recomputes the twelve published reference values for the showcase family
 * (criterion value, deletion proxy, addition proxy, exact gap change; one row
 * per chord {0,3}, {0,5}, {4,7}) and checks each against its published value
 * at 1e-5. Row 1 evaluates the ring cells on the pinned (mu, nu) = (3, 1)
 * eigenvector; the other rows use dense-solver eigenvectors. Criterion cells
 * keep the bare ring as the structure term in g for every row (see the
 * comment in the implementation); proxy cells use each row's own graphs.
 */
ReferenceReport verify_reference_values();

std::string reference_report_json(const ReferenceReport& report);

}  // namespace braess
