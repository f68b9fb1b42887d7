#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "braess/analytic.hpp"
#include "braess/errors.hpp"
#include "braess/graph.hpp"
#include "braess/spectrum.hpp"

#include "test_util.hpp"

using braess::Edge;
using braess::Errc;
using braess::Graph;
using test_util::code_of;

TEST_CASE("ring gap closed form matches the dense oracle") {
  for (int n = 3; n <= 20; ++n)
    CHECK(braess::ring_gap(n) ==
          doctest::Approx(braess::exact_spectrum(test_util::ring(n)).gap).epsilon(1e-12));
}

TEST_CASE("ring eigenvectors are unit eigenvectors at the gap eigenvalue") {
  for (const auto& [n, mu, nu] : {std::tuple{8, 3.0, 1.0}, {8, 1.0, 0.0}, {12, 2.0, -5.0}}) {
    const Eigen::VectorXd f = braess::ring_eigenvector(n, mu, nu);
    CHECK(std::abs(f.norm() - 1.0) < 1e-12);
    const Graph ring = test_util::ring(n);
    const Eigen::VectorXd lf = braess::laplacian_apply(ring, f);
    CHECK((lf - braess::ring_gap(n) * f).norm() < 1e-10);
  }
}

TEST_CASE("the pinned (3,1) combination has the documented entries") {
  const Eigen::VectorXd f = braess::ring_eigenvector(8, 3.0, 1.0);
  const double root40 = std::sqrt(40.0);
  CHECK(f[0] == doctest::Approx(1.0 / root40).epsilon(1e-12));
  CHECK(f[1] == doctest::Approx(2.0 * std::numbers::sqrt2 / root40).epsilon(1e-12));
  CHECK(f[2] == doctest::Approx(3.0 / root40).epsilon(1e-12));
}

TEST_CASE("projection shortcut equals the augmented-graph kernel overlap") {
  const Graph g = test_util::er(18, 40, 21);
  const braess::SpectrumEstimate est = braess::exact_spectrum(g);
  int checked = 0;
  for (int u = 0; u < g.num_nodes() && checked < 6; ++u) {
    for (int v = u + 1; v < g.num_nodes() && checked < 6; ++v) {
      if (g.has_edge(u, v)) continue;
      ++checked;
      // Oracle: build the graph with (u,v) added and take its actual ground
      // vector's overlap with the fiedler vector.
      const Graph aug = braess::apply_delta(g, {Edge{u, v}, braess::EdgeOp::Add});
      const Eigen::VectorXd hat0 = braess::exact_spectrum(aug).ground;
      const double want = est.fiedler.dot(hat0);
      CHECK(braess::eldan_projection(g, est.fiedler, Edge{u, v}) ==
            doctest::Approx(want).epsilon(1e-12));
      double weighted = 0.0;
      for (int w = 0; w < g.num_nodes(); ++w)
        weighted += est.fiedler[w] * std::sqrt(static_cast<double>(g.degree(w)));
      CHECK(braess::eldan_projection_from_sum(weighted, g.num_edges(), est.fiedler[u],
                                              est.fiedler[v], g.degree(u), g.degree(v)) ==
            doctest::Approx(want).epsilon(1e-12));
    }
  }
  CHECK(checked == 6);
}

TEST_CASE("criterion value matches an inline recomputation") {
  const Graph g = test_util::er(14, 30, 5);
  const braess::SpectrumEstimate est = braess::exact_spectrum(g);
  int checked = 0;
  for (int u = 0; u < g.num_nodes() && checked < 8; ++u) {
    for (int v = u + 1; v < g.num_nodes() && checked < 8; ++v) {
      if (g.has_edge(u, v)) continue;
      ++checked;
      const braess::EldanInputs in = braess::make_eldan_inputs(g, est.gap, est.fiedler, {u, v});
      const double du = g.degree(u), dv = g.degree(v);
      const double fu = est.fiedler[u], fv = est.fiedler[v];
      const double au = (std::sqrt(du + 1) - std::sqrt(du)) / std::sqrt(du + 1);
      const double av = (std::sqrt(dv + 1) - std::sqrt(dv)) / std::sqrt(dv + 1);
      const double want = -in.projection * in.projection * est.gap -
                          2.0 * (1.0 - est.gap) * (au * fu * fu + av * fv * fv) +
                          2.0 * fu * fv / std::sqrt((du + 1) * (dv + 1));
      CHECK(braess::eldan_criterion(in) == doctest::Approx(want).epsilon(1e-12));
    }
  }
  CHECK(checked == 8);
  CHECK(code_of([&] {
          braess::make_eldan_inputs(g, est.gap, est.fiedler, g.edges().front());
        }) == Errc::EdgeAlreadyPresent);
}

TEST_CASE("criterion is invariant under fiedler sign flips") {
  const Graph g = test_util::er(12, 24, 3);
  const braess::SpectrumEstimate est = braess::exact_spectrum(g);
  Edge candidate{-1, -1};
  for (int u = 0; u < g.num_nodes() && candidate.u < 0; ++u)
    for (int v = u + 1; v < g.num_nodes(); ++v)
      if (!g.has_edge(u, v)) {
        candidate = {u, v};
        break;
      }
  const double a =
      braess::eldan_criterion(braess::make_eldan_inputs(g, est.gap, est.fiedler, candidate));
  const double b =
      braess::eldan_criterion(braess::make_eldan_inputs(g, est.gap, -est.fiedler, candidate));
  CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("a positive certificate always means the exact gap drops") {
  // Small-scale soundness sweep; the acceptance suite runs the full one.
  for (int seed = 0; seed < 20; ++seed) {
    const Graph g = test_util::er(10, 16, 100 + seed);
    const braess::SpectrumEstimate est = braess::exact_spectrum(g);
    for (int u = 0; u < g.num_nodes(); ++u) {
      for (int v = u + 1; v < g.num_nodes(); ++v) {
        if (g.has_edge(u, v)) continue;
        const double cert =
            braess::eldan_criterion(braess::make_eldan_inputs(g, est.gap, est.fiedler, {u, v}));
        if (cert > 0.0) {
          const Graph aug = braess::apply_delta(g, {Edge{u, v}, braess::EdgeOp::Add});
          CHECK(braess::exact_spectrum(aug).gap < est.gap);
        }
      }
    }
  }
}

TEST_CASE("the four bundled graphs have their published gaps") {
  const braess::BraessFixtures fx = braess::braess_fixtures();
  CHECK(fx.minus.num_edges() == 8);
  CHECK(fx.base.num_edges() == 9);
  CHECK(fx.plus.num_edges() == 10);
  CHECK(fx.tilde.num_edges() == 10);
  CHECK(fx.base.has_edge(0, 3));
  CHECK(fx.plus.has_edge(0, 5));
  CHECK(fx.tilde.has_edge(4, 7));
  const Graph* graphs[] = {&fx.minus, &fx.base, &fx.plus, &fx.tilde};
  for (int i = 0; i < 4; ++i)
    CHECK(std::abs(braess::exact_spectrum(*graphs[i]).gap - fx.published_gaps[i]) < 5e-4);
  int positives = 0;
  for (int label : fx.labels) positives += label == 1 ? 1 : 0;
  CHECK(positives == 4);
  CHECK(fx.labels[0] == 1);
  CHECK(fx.labels[2] == -1);
}

TEST_CASE("cheeger constant matches closed forms on structured graphs") {
  CHECK(braess::cheeger_constant(test_util::ring(8)) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(braess::cheeger_constant(test_util::ring(7)) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(braess::cheeger_constant(test_util::complete(4)) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(braess::cheeger_constant(test_util::complete(2)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(braess::cheeger_constant(test_util::path(4)) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("cheeger sandwich holds on sampled graphs") {
  for (int seed = 0; seed < 10; ++seed) {
    const Graph g = test_util::er(9, 14, 200 + seed);
    const double h = braess::cheeger_constant(g);
    const double gap = braess::exact_spectrum(g).gap;
    CHECK(2.0 * h + 1e-12 >= gap);
    CHECK(gap + 1e-12 >= h * h / 2.0);
  }
}

TEST_CASE("cheeger guard and disconnected behaviour") {
  CHECK(code_of([] { braess::cheeger_constant(test_util::ring(21)); }) ==
        Errc::GraphTooLargeForEnumeration);
  Graph split(4);
  split.add_edge(0, 1);
  split.add_edge(2, 3);
  CHECK(braess::cheeger_constant(split) == 0.0);
}

TEST_CASE("the reference table reproduces every published cell") {
  const braess::ReferenceReport report = braess::verify_reference_values();
  CHECK(report.all_pass);
  CHECK(report.cells.size() == 12);
  for (const braess::ReferenceCell& cell : report.cells) {
    INFO("row ", cell.row, " cell ", cell.cell, " expected ", cell.expected, " computed ",
         cell.computed);
    CHECK(cell.pass);
    CHECK(cell.abs_error < 1e-5);
  }
  const nlohmann::json json = nlohmann::json::parse(braess::reference_report_json(report));
  CHECK(json.at("all_pass").get<bool>());
  CHECK(json.at("cells").size() == 12);
}
