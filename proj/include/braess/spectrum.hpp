#pragma once

#include <optional>
#include <string>

#include <Eigen/Core>

#include "braess/graph.hpp"

namespace braess {

/**
 * Spectral state of a connected graph under the symmetric normalized
 * Laplacian L = I - D^{-1/2} A D^{-1/2}.
 *
 * gap      second-smallest eigenvalue of L (0 <= gap <= 2)
 * fiedler  unit eigenvector for the gap; sign fixed so the entry of largest
 *          magnitude is positive (lowest index wins magnitude ties)
 * ground   unit kernel vector D^{1/2} 1 / ||D^{1/2} 1||
 * residual achieved ||L f - gap f||
 */
struct SpectrumEstimate {
  double gap = 0.0;
  Eigen::VectorXd fiedler;
  Eigen::VectorXd ground;
  double residual = 0.0;
  bool converged = false;
  int iterations = 0;
  // Set when the dense path detects a disconnected input (gap forced to 0).
  bool disconnected = false;
};

struct SolverConfig {
  double tolerance = 1e-10;
  int max_iterations = 5000;
  std::optional<Eigen::VectorXd> warm_start;
};

// y = L x in O(|E| + |V|) without materializing L. Every node needs degree
// >= 1 (ZeroDegreeNode otherwise).
Eigen::VectorXd laplacian_apply(const Graph& g, const Eigen::VectorXd& x);

// Dense symmetric eigendecomposition; the test oracle. Guarded at 4096 nodes
// (GraphTooLargeForDense). A disconnected input is reported, not thrown:
// gap = 0 and the disconnected flag set.
SpectrumEstimate exact_spectrum(const Graph& g);

/**
 * Matrix-free power iteration on B = 2I - L with the kernel deflated:
 *
 *   x <- (B - 2 f0 f0^T) x,  normalize each step
 *
 * The deflated operator's top eigenpair is (2 - gap, fiedler), so the
 * Rayleigh quotient recovers the gap. Convergence is declared on the
 * eigen-residual ||L x - gap x|| <= tolerance. On stagnation past
 * max_iterations the best estimate is returned with converged = false;
 * the caller decides. The cold start is a fixed-seed random vector
 * orthogonalized against f0 — a structured start can be exactly
 * orthogonal to the fiedler direction on symmetric graphs, which power
 * iteration never recovers from. The iterate is re-seeded from the same
 * deterministic stream if the deflated operator annihilates it.
 */
SpectrumEstimate iterative_spectrum(const Graph& g, const SolverConfig& cfg = {});

/**
 * First-order gap change for one edge flip at the current eigenpair:
 *
 *   dw * ((f_u - f_v)^2 - gap * (f_u^2 + f_v^2)),  dw = +1 add / -1 delete
 *
 * Pure arithmetic, O(1); a ranking score, not a guarantee.
 */
double proxy_gap_delta(const SpectrumEstimate& est, const Graph& g,
                       const EdgeDelta& delta);

// JSON record {gap, residual, fiedler[], ground[]}, doubles at 17 significant
// digits; byte-stable across runs.
std::string spectrum_to_json(const SpectrumEstimate& est);

}  // namespace braess
