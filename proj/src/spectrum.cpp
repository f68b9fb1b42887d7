#include "braess/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <Eigen/Dense>

#include "braess/rng.hpp"

namespace braess {

namespace {

constexpr int kDenseNodeLimit = 4096;

std::vector<double> inv_sqrt_degrees(const Graph& g) {
  std::vector<double> inv(static_cast<std::size_t>(g.num_nodes()));
  for (int u = 0; u < g.num_nodes(); ++u) {
    const int d = g.degree(u);
    if (d == 0) fail(Errc::ZeroDegreeNode, "node " + std::to_string(u) + " has degree 0");
    inv[u] = 1.0 / std::sqrt(static_cast<double>(d));
  }
  return inv;
}

Eigen::VectorXd apply_impl(const Graph& g, const std::vector<double>& inv,
                           const Eigen::VectorXd& x) {
  const int n = g.num_nodes();
  Eigen::VectorXd y(n);
  for (int u = 0; u < n; ++u) {
    double acc = 0.0;
    for (int v : g.neighbors(u)) acc += x[v] * inv[v];
    y[u] = x[u] - inv[u] * acc;
  }
  return y;
}

Eigen::VectorXd ground_vector(const Graph& g) {
  const int n = g.num_nodes();
  Eigen::VectorXd f0(n);
  for (int u = 0; u < n; ++u) f0[u] = std::sqrt(static_cast<double>(g.degree(u)));
  f0.normalize();
  return f0;
}

// Largest-magnitude entry positive; lowest index wins exact ties.
void canonicalize_sign(Eigen::VectorXd& x) {
  int arg = 0;
  double best = std::abs(x[0]);
  for (int i = 1; i < x.size(); ++i) {
    const double a = std::abs(x[i]);
    if (a > best) {
      best = a;
      arg = i;
    }
  }
  if (x[arg] < 0.0) x = -x;
}

void append_double(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

}  // namespace

Eigen::VectorXd laplacian_apply(const Graph& g, const Eigen::VectorXd& x) {
  if (x.size() != g.num_nodes())
    fail(Errc::InvalidArgument, "vector length " + std::to_string(x.size()) +
                                    " != node count " + std::to_string(g.num_nodes()));
  return apply_impl(g, inv_sqrt_degrees(g), x);
}

SpectrumEstimate exact_spectrum(const Graph& g) {
  const int n = g.num_nodes();
  if (n < 2) fail(Errc::InvalidArgument, "need at least 2 nodes for a spectral gap");
  if (n > kDenseNodeLimit)
    fail(Errc::GraphTooLargeForDense,
         std::to_string(n) + " nodes exceeds dense limit " + std::to_string(kDenseNodeLimit));
  const std::vector<double> inv = inv_sqrt_degrees(g);

  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (int u = 0; u < n; ++u) {
    lap(u, u) = 1.0;
    for (int v : g.neighbors(u)) lap(u, v) = -inv[u] * inv[v];
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("dense eigendecomposition failed");

  SpectrumEstimate est;
  est.ground = ground_vector(g);
  est.fiedler = solver.eigenvectors().col(1);
  canonicalize_sign(est.fiedler);
  est.disconnected = !is_connected(g);
  est.gap = est.disconnected ? 0.0 : std::clamp(solver.eigenvalues()[1], 0.0, 2.0);
  est.residual = (lap * est.fiedler - est.gap * est.fiedler).norm();
  est.converged = true;
  est.iterations = 0;
  return est;
}

SpectrumEstimate iterative_spectrum(const Graph& g, const SolverConfig& cfg) {
  const int n = g.num_nodes();
  if (n < 2) fail(Errc::InvalidArgument, "need at least 2 nodes for a spectral gap");
  const std::vector<double> inv = inv_sqrt_degrees(g);
  const Eigen::VectorXd f0 = ground_vector(g);

  Rng fallback(0xFA11BACC0FFEEULL);
  auto fresh_vector = [&]() {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = 2.0 * fallback.unit() - 1.0;
    return v;
  };
  auto orthonormalize = [&](Eigen::VectorXd& x) {
    // Repeated Gram-Schmidt against f0; re-seeds on a degenerate start.
    for (;;) {
      x -= (f0.dot(x)) * f0;
      const double norm = x.norm();
      if (norm > 1e-12) {
        x /= norm;
        return;
      }
      x = fresh_vector();
    }
  };

  Eigen::VectorXd x;
  if (cfg.warm_start && cfg.warm_start->size() == n) {
    x = *cfg.warm_start;
  } else {
    x = fresh_vector();
  }
  orthonormalize(x);

  SpectrumEstimate est;
  est.ground = f0;

  Eigen::VectorXd lx = apply_impl(g, inv, x);
  int iterations = 0;
  for (;;) {
    Eigen::VectorXd y = 2.0 * x - lx;
    y -= (2.0 * f0.dot(x)) * f0;
    y -= (f0.dot(y)) * f0;
    const double norm = y.norm();
    if (norm > 1e-12) {
      x = y / norm;
    } else {
      // Deflated operator annihilated the iterate; restart off a fresh vector.
      x = fresh_vector();
      orthonormalize(x);
    }
    ++iterations;
    lx = apply_impl(g, inv, x);
    est.gap = x.dot(lx);
    est.residual = (lx - est.gap * x).norm();
    if (est.residual <= cfg.tolerance) {
      est.converged = true;
      break;
    }
    if (iterations >= cfg.max_iterations) break;
  }

  est.gap = std::clamp(est.gap, 0.0, 2.0);
  est.iterations = iterations;
  canonicalize_sign(x);
  est.fiedler = std::move(x);
  return est;
}

double proxy_gap_delta(const SpectrumEstimate& est, const Graph& g,
                       const EdgeDelta& delta) {
  (void)g;  // signature keeps the graph for context; the update is O(1) in it
  const double fu = est.fiedler[delta.edge.u];
  const double fv = est.fiedler[delta.edge.v];
  const double dw = delta.op == EdgeOp::Add ? 1.0 : -1.0;
  const double diff = fu - fv;
  return dw * (diff * diff - est.gap * (fu * fu + fv * fv));
}

std::string spectrum_to_json(const SpectrumEstimate& est) {
  std::string out = "{\"gap\":";
  append_double(out, est.gap);
  out += ",\"residual\":";
  append_double(out, est.residual);
  auto append_vec = [&out](const Eigen::VectorXd& v) {
    out += "[";
    for (int i = 0; i < v.size(); ++i) {
      if (i) out += ",";
      append_double(out, v[i]);
    }
    out += "]";
  };
  out += ",\"fiedler\":";
  append_vec(est.fiedler);
  out += ",\"ground\":";
  append_vec(est.ground);
  out += "}";
  return out;
}

}  // namespace braess
