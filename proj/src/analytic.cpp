#include "braess/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include <json.hpp>

namespace braess {

namespace {
constexpr int kEnumerationNodeLimit = 20;
constexpr double kReferenceTolerance = 1e-5;
}  // namespace

double ring_gap(int n) {
  if (n < 3) fail(Errc::InvalidArgument, "ring needs n >= 3");
  return 1.0 - std::cos(2.0 * std::numbers::pi / static_cast<double>(n));
}

Eigen::VectorXd ring_eigenvector(int n, double mu, double nu) {
  if (n < 3) fail(Errc::InvalidArgument, "ring needs n >= 3");
  const double scale2 = mu * mu + nu * nu;
  if (scale2 == 0.0) fail(Errc::InvalidArgument, "(mu, nu) must be nonzero");
  const double norm = std::sqrt(static_cast<double>(n) * scale2 / 2.0);
  Eigen::VectorXd f(n);
  for (int k = 0; k < n; ++k) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    f[k] = (mu * std::sin(theta) + nu * std::cos(theta)) / norm;
  }
  return f;
}

RingEigenbasis make_ring_eigenbasis(int n, double mu, double nu) {
  return {n, mu, nu, ring_eigenvector(n, mu, nu)};
}

double eldan_projection_from_sum(double weighted_sum, int num_edges, double fu,
                                 double fv, int du, int dv) {
  const double adjusted = weighted_sum +
                          fu * (std::sqrt(du + 1.0) - std::sqrt(static_cast<double>(du))) +
                          fv * (std::sqrt(dv + 1.0) - std::sqrt(static_cast<double>(dv)));
  return adjusted / std::sqrt(2.0 * (num_edges + 1.0));
}

double eldan_projection(const Graph& g, const Eigen::VectorXd& fiedler, Edge e) {
  double sum = 0.0;
  for (int k = 0; k < g.num_nodes(); ++k)
    sum += fiedler[k] * std::sqrt(static_cast<double>(g.degree(k)));
  return eldan_projection_from_sum(sum, g.num_edges(), fiedler[e.u], fiedler[e.v],
                                   g.degree(e.u), g.degree(e.v));
}

EldanInputs make_eldan_inputs(const Graph& g, double gap,
                              const Eigen::VectorXd& fiedler, Edge e) {
  if (g.has_edge(e.u, e.v))
    fail(Errc::EdgeAlreadyPresent,
         "(" + std::to_string(e.u) + ", " + std::to_string(e.v) + ")");
  EldanInputs in;
  in.graph = &g;
  in.gap = gap;
  in.fiedler = fiedler;
  in.edge = e;
  in.projection = eldan_projection(g, fiedler, e);
  return in;
}

double eldan_criterion(const EldanInputs& in) {
  const Graph& g = *in.graph;
  const Edge e = in.edge;
  if (g.has_edge(e.u, e.v))
    fail(Errc::EdgeAlreadyPresent,
         "(" + std::to_string(e.u) + ", " + std::to_string(e.v) + ")");
  const double du = static_cast<double>(g.degree(e.u));
  const double dv = static_cast<double>(g.degree(e.v));
  const double fu = in.fiedler[e.u];
  const double fv = in.fiedler[e.v];
  const double au = (std::sqrt(du + 1.0) - std::sqrt(du)) / std::sqrt(du + 1.0);
  const double av = (std::sqrt(dv + 1.0) - std::sqrt(dv)) / std::sqrt(dv + 1.0);
  return -in.projection * in.projection * in.gap -
         2.0 * (1.0 - in.gap) * (au * fu * fu + av * fv * fv) +
         2.0 * fu * fv / (std::sqrt(du + 1.0) * std::sqrt(dv + 1.0));
}

BraessFixtures braess_fixtures() {
  BraessFixtures fx;
  fx.minus = generate({GeneratorSpec::Family::Ring, 8, 0, 0});
  fx.base = apply_delta(fx.minus, {{0, 3}, EdgeOp::Add});
  fx.plus = apply_delta(fx.base, {{0, 5}, EdgeOp::Add});
  fx.tilde = apply_delta(fx.base, {{4, 7}, EdgeOp::Add});
  fx.published_gaps = {0.2929, 0.2829, 0.3545, 0.2713};
  fx.labels = {1, 1, -1, -1, -1, -1, 1, 1};
  return fx;
}

double cheeger_constant(const Graph& g) {
  const int n = g.num_nodes();
  if (n < 2) fail(Errc::InvalidArgument, "need at least 2 nodes for a cut");
  if (n > kEnumerationNodeLimit)
    fail(Errc::GraphTooLargeForEnumeration,
         std::to_string(n) + " nodes exceeds enumeration limit " +
             std::to_string(kEnumerationNodeLimit));

  const std::vector<Edge> edges = g.edges();
  const std::vector<int> deg = g.degrees();
  long long total_vol = 0;
  for (int d : deg) total_vol += d;

  double best = std::numeric_limits<double>::infinity();
  const std::uint32_t full = (1u << (n - 1)) - 1u;
  // Node 0 is pinned inside S, so each nontrivial cut appears exactly once.
  for (std::uint32_t mask = 0; mask < full; ++mask) {
    auto in_s = [mask](int u) {
      return u == 0 || ((mask >> (u - 1)) & 1u) != 0u;
    };
    long long vol_s = deg[0];
    for (int u = 1; u < n; ++u)
      if (in_s(u)) vol_s += deg[u];
    const long long vol_c = total_vol - vol_s;
    if (vol_s == 0 || vol_c == 0) continue;
    long long boundary = 0;
    for (const Edge& e : edges)
      if (in_s(e.u) != in_s(e.v)) ++boundary;
    const double ratio = static_cast<double>(boundary) /
                         static_cast<double>(std::min(vol_s, vol_c));
    best = std::min(best, ratio);
  }
  return best;
}

namespace {

ReferenceCell make_cell(int row, const char* name, double expected, double computed) {
  ReferenceCell c;
  c.row = row;
  c.cell = name;
  c.expected = expected;
  c.computed = computed;
  c.abs_error = std::abs(computed - expected);
  c.pass = c.abs_error <= kReferenceTolerance;
  return c;
}

}  // namespace

ReferenceReport verify_reference_values() {
  const BraessFixtures fx = braess_fixtures();

  SpectrumEstimate ring_est;
  ring_est.gap = ring_gap(8);
  ring_est.fiedler = ring_eigenvector(8, 3.0, 1.0);
  ring_est.converged = true;

  const SpectrumEstimate minus_est = exact_spectrum(fx.minus);
  const SpectrumEstimate base_est = exact_spectrum(fx.base);
  const SpectrumEstimate plus_est = exact_spectrum(fx.plus);
  const SpectrumEstimate tilde_est = exact_spectrum(fx.tilde);

  ReferenceReport report;
  auto add_row = [&report](int row, double g, double g_exp, double pdel, double pdel_exp,
                           double padd, double padd_exp, double dlam, double dlam_exp) {
    report.cells.push_back(make_cell(row, "criterion", g_exp, g));
    report.cells.push_back(make_cell(row, "proxy_delete", pdel_exp, pdel));
    report.cells.push_back(make_cell(row, "proxy_add", padd_exp, padd));
    report.cells.push_back(make_cell(row, "exact_delta", dlam_exp, dlam));
  };

  // Row 1: chord {0,3} against the bare ring; pinned (3,1) ring eigenvector.
  add_row(1,
          eldan_criterion(make_eldan_inputs(fx.minus, ring_est.gap, ring_est.fiedler, {0, 3})),
          0.003867,
          proxy_gap_delta(base_est, fx.base, {{0, 3}, EdgeOp::Delete}), 0.027992,
          proxy_gap_delta(ring_est, fx.minus, {{0, 3}, EdgeOp::Add}), -0.017678,
          base_est.gap - minus_est.gap, -0.01002);

  // Rows 2-3: chords {0,5} / {4,7} with the base graph's solver eigenpair.
  // The published criterion cells keep the bare ring as the structure term
  // (ring degrees and edge count inside g), exactly like the row-1 worked
  // form; only the eigenpair comes from the measured base graph. Evaluating
  // g on the base graph's own structure gives -0.132501 / +0.005884 instead
  // of the published -0.146246 / +0.004952.
  add_row(2,
          eldan_criterion(make_eldan_inputs(fx.minus, base_est.gap, base_est.fiedler, {0, 5})),
          -0.146246,
          proxy_gap_delta(plus_est, fx.plus, {{0, 5}, EdgeOp::Delete}), -0.064550,
          proxy_gap_delta(base_est, fx.base, {{0, 5}, EdgeOp::Add}), 0.415994,
          plus_est.gap - base_est.gap, 0.071632);

  add_row(3,
          eldan_criterion(make_eldan_inputs(fx.minus, base_est.gap, base_est.fiedler, {4, 7})),
          0.004952,
          proxy_gap_delta(tilde_est, fx.tilde, {{4, 7}, EdgeOp::Delete}), 0.032403,
          proxy_gap_delta(base_est, fx.base, {{4, 7}, EdgeOp::Add}), -0.024739,
          tilde_est.gap - base_est.gap, -0.011584);

  report.all_pass = true;
  for (const ReferenceCell& c : report.cells) report.all_pass = report.all_pass && c.pass;
  return report;
}

std::string reference_report_json(const ReferenceReport& report) {
  nlohmann::json cells = nlohmann::json::array();
  for (const ReferenceCell& c : report.cells) {
    cells.push_back({{"row", c.row},
                     {"cell", c.cell},
                     {"expected", c.expected},
                     {"computed", c.computed},
                     {"abs_error", c.abs_error},
                     {"pass", c.pass}});
  }
  nlohmann::json out = {{"cells", cells}, {"all_pass", report.all_pass}};
  return out.dump(2);
}

}  // namespace braess
