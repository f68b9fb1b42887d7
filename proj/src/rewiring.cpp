#include "braess/rewiring.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>
#include <unordered_set>

#include <json.hpp>

#include "braess/analytic.hpp"
#include "braess/rng.hpp"

namespace braess {

namespace {

constexpr int kDefaultCandidateCap = 10000;
constexpr int kDenseNodeLimit = 4096;
constexpr int kEldanRefineSteps = 8;

// Ranking key: Eldan addition prefers the most negative certificate.
double selection_key(const EdgeScore& s, const RewirePlan& plan) {
  if (plan.strategy == Strategy::Eldan && plan.direction == EdgeOp::Add) return -s.value;
  return s.value;
}

void validate_plan(const Graph& g, const RewirePlan& plan, bool need_budget) {
  if (need_budget && plan.budget < 1) fail(Errc::InvalidPlan, "budget must be >= 1");
  if (plan.update_period < 1) fail(Errc::InvalidPlan, "update_period must be >= 1");
  if (plan.threads < 1) fail(Errc::InvalidPlan, "threads must be >= 1");
  if (plan.candidate_cap) {
    if (plan.direction != EdgeOp::Add)
      fail(Errc::InvalidPlan, "candidate_cap applies to additions only");
    if (*plan.candidate_cap < 1) fail(Errc::InvalidPlan, "candidate_cap must be >= 1");
  }
  if (plan.stop_on_criterion && plan.strategy != Strategy::Eldan)
    fail(Errc::InvalidPlan, "stop_on_criterion is defined for the Eldan strategy only");
  if (plan.strategy == Strategy::ExactGreedy && g.num_nodes() > kDenseNodeLimit)
    fail(Errc::InvalidPlan, "ExactGreedy needs the dense solver (<= " +
                                std::to_string(kDenseNodeLimit) + " nodes)");
}

// Runs fn(i) for i in [0, count) on up to `threads` workers. Slot-indexed
// writes keep results identical for any worker count.
template <typename Fn>
void parallel_for(int count, int threads, Fn&& fn) {
  const int workers = std::max(1, std::min(threads, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      try {
        for (int i = w; i < count; i += workers) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::uint64_t pair_count(int n) {
  return static_cast<std::uint64_t>(n) * (static_cast<std::uint64_t>(n) - 1) / 2;
}

std::vector<Edge> deletion_candidates(const Graph& g) {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(g.num_edges()));
  for (const Edge& e : g.edges())
    if (g.degree(e.u) > 1 && g.degree(e.v) > 1) out.push_back(e);
  return out;
}

std::vector<Edge> addition_candidates(const Graph& g, const RewirePlan& plan) {
  const int n = g.num_nodes();
  const std::uint64_t complement = pair_count(n) - static_cast<std::uint64_t>(g.num_edges());
  const int cap = plan.candidate_cap.value_or(kDefaultCandidateCap);
  std::vector<Edge> out;
  if (complement <= static_cast<std::uint64_t>(cap)) {
    out.reserve(static_cast<std::size_t>(complement));
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (!g.has_edge(u, v)) out.push_back({u, v});
    return out;
  }
  // Seeded rejection sampling without replacement, then canonical order.
  Rng rng(plan.seed);
  std::unordered_set<std::uint64_t> taken;
  taken.reserve(static_cast<std::size_t>(cap) * 2);
  out.reserve(static_cast<std::size_t>(cap));
  const std::uint64_t total = pair_count(n);
  while (out.size() < static_cast<std::size_t>(cap)) {
    const std::uint64_t idx = rng.below(total);
    if (!taken.insert(idx).second) continue;
    // Decode lexicographic rank to (u, v), row by row.
    std::uint64_t rank = idx;
    int u = 0;
    std::uint64_t row = static_cast<std::uint64_t>(n) - 1;
    while (rank >= row) {
      rank -= row;
      --row;
      ++u;
    }
    const int v = u + 1 + static_cast<int>(rank);
    if (!g.has_edge(u, v)) out.push_back({u, v});
  }
  std::sort(out.begin(), out.end());
  return out;
}

double eldan_delete_score(const Graph& g, const SpectrumEstimate& est, Edge e) {
  Graph pruned = g;
  pruned.remove_edge(e.u, e.v);
  SolverConfig cfg;
  cfg.tolerance = 1e-12;
  cfg.max_iterations = kEldanRefineSteps;
  cfg.warm_start = est.fiedler;
  const SpectrumEstimate refined = iterative_spectrum(pruned, cfg);
  return eldan_criterion(make_eldan_inputs(pruned, refined.gap, refined.fiedler, e));
}

}  // namespace

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::Proxy: return "proxy";
    case Strategy::Eldan: return "eldan";
    case Strategy::ExactGreedy: return "exactgreedy";
  }
  return "unknown";
}

const char* terminal_reason_name(TerminalReason r) {
  switch (r) {
    case TerminalReason::BudgetExhausted: return "BudgetExhausted";
    case TerminalReason::CriterionStopped: return "CriterionStopped";
    case TerminalReason::NoLegalCandidates: return "NoLegalCandidates";
  }
  return "unknown";
}

std::vector<EdgeScore> score_candidates(const Graph& g, const SpectrumEstimate& est,
                                        const RewirePlan& plan) {
  validate_plan(g, plan, /*need_budget=*/false);
  if (est.fiedler.size() != g.num_nodes())
    fail(Errc::InvalidArgument, "estimate does not match the graph");

  std::vector<Edge> candidates;
  if (plan.direction == EdgeOp::Delete) {
    if (g.num_edges() == 0) fail(Errc::NoCandidates, "graph has no edges");
    candidates = deletion_candidates(g);
  } else {
    if (pair_count(g.num_nodes()) == static_cast<std::uint64_t>(g.num_edges()))
      fail(Errc::NoCandidates, "graph is complete");
    candidates = addition_candidates(g, plan);
  }

  std::vector<EdgeScore> scores(candidates.size());
  const int count = static_cast<int>(candidates.size());

  auto fill = [&](auto&& value_fn) {
    parallel_for(count, plan.threads, [&](int i) {
      scores[i] = {candidates[i], plan.direction, value_fn(candidates[i]), plan.strategy};
    });
  };

  switch (plan.strategy) {
    case Strategy::Proxy:
      fill([&](Edge e) { return proxy_gap_delta(est, g, {e, plan.direction}); });
      break;
    case Strategy::Eldan:
      if (plan.direction == EdgeOp::Add) {
        double weighted_sum = 0.0;
        for (int k = 0; k < g.num_nodes(); ++k)
          weighted_sum += est.fiedler[k] * std::sqrt(static_cast<double>(g.degree(k)));
        EldanInputs in;
        in.graph = &g;
        in.gap = est.gap;
        in.fiedler = est.fiedler;
        parallel_for(count, 1, [&](int i) {  // O(1) per candidate; serial
          const Edge e = candidates[i];
          in.edge = e;
          in.projection =
              eldan_projection_from_sum(weighted_sum, g.num_edges(), est.fiedler[e.u],
                                        est.fiedler[e.v], g.degree(e.u), g.degree(e.v));
          scores[i] = {e, plan.direction, eldan_criterion(in), plan.strategy};
        });
      } else {
        fill([&](Edge e) { return eldan_delete_score(g, est, e); });
      }
      break;
    case Strategy::ExactGreedy:
      fill([&](Edge e) {
        Graph next = g;
        if (plan.direction == EdgeOp::Add)
          next.add_edge(e.u, e.v);
        else
          next.remove_edge(e.u, e.v);
        return exact_spectrum(next).gap - est.gap;
      });
      break;
  }
  return scores;
}

namespace {

std::vector<std::size_t> ranked_order(const std::vector<EdgeScore>& scores,
                                      const RewirePlan& plan) {
  std::vector<std::size_t> order(scores.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double ka = selection_key(scores[a], plan);
    const double kb = selection_key(scores[b], plan);
    if (ka != kb) return ka > kb;
    return scores[a].edge < scores[b].edge;
  });
  return order;
}

bool deletion_keeps_connected(const Graph& g, Edge e) {
  Graph next = g;
  next.remove_edge(e.u, e.v);
  return is_connected(next);
}

// Certificate for deleting e, re-evaluated on a converged eigenpair of the
// pruned graph. The ranking scores come from a bounded 8-step refinement,
// which can report a spurious positive; a criterion-stopped run must never
// take an uncertified step, so each application is gated on this value.
double rechecked_delete_certificate(const Graph& g, const SpectrumEstimate& est,
                                    Edge e, const SolverConfig& solver) {
  Graph pruned = g;
  pruned.remove_edge(e.u, e.v);
  SolverConfig cfg = solver;
  cfg.warm_start = est.fiedler;
  const SpectrumEstimate refined = iterative_spectrum(pruned, cfg);
  return eldan_criterion(make_eldan_inputs(pruned, refined.gap, refined.fiedler, e));
}

}  // namespace

EdgeScore select_best(const Graph& g, const std::vector<EdgeScore>& scores,
                      const RewirePlan& plan) {
  validate_plan(g, plan, /*need_budget=*/false);
  for (std::size_t idx : ranked_order(scores, plan)) {
    const EdgeScore& s = scores[idx];
    if (plan.direction == EdgeOp::Delete) {
      if (!g.has_edge(s.edge.u, s.edge.v)) continue;
      if (g.degree(s.edge.u) <= 1 || g.degree(s.edge.v) <= 1) continue;
      if (plan.forbid_disconnect && !deletion_keeps_connected(g, s.edge)) continue;
    } else {
      if (g.has_edge(s.edge.u, s.edge.v)) continue;
    }
    return s;
  }
  fail(Errc::AllCandidatesFiltered, "no legal candidate remains");
}

std::pair<Graph, RewireTrace> rewire(const Graph& g, const RewirePlan& plan) {
  validate_plan(g, plan, /*need_budget=*/true);
  if (!plan.allow_disconnected_input && !is_connected(g))
    fail(Errc::DisconnectedInput, "input graph is not connected");

  Graph work = g;
  RewireTrace trace;
  SpectrumEstimate est = iterative_spectrum(work, plan.solver);
  trace.initial_gap = est.gap;
  if (!est.converged) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "initial solve: no convergence after %d iterations (residual %.3g)",
                  est.iterations, est.residual);
    trace.warnings.emplace_back(buf);
  }

  int steps = 0;
  bool criterion_stop = false;
  for (;;) {
    if (steps >= plan.budget) {
      trace.terminal = TerminalReason::BudgetExhausted;
      break;
    }
    std::vector<EdgeScore> scores;
    try {
      scores = score_candidates(work, est, plan);
    } catch (const Error& err) {
      if (err.code() == Errc::NoCandidates) {
        trace.terminal = TerminalReason::NoLegalCandidates;
        break;
      }
      throw;
    }
    if (scores.empty()) {
      trace.terminal = TerminalReason::NoLegalCandidates;
      break;
    }

    std::vector<TraceStep> pending;
    int applied = 0;
    bool recheck_failed = false;
    for (std::size_t idx : ranked_order(scores, plan)) {
      if (applied >= plan.update_period || steps >= plan.budget) break;
      const EdgeScore& s = scores[idx];
      if (plan.stop_on_criterion && selection_key(s, plan) <= 0.0) {
        criterion_stop = true;  // sorted order: nothing better remains
        break;
      }
      if (plan.direction == EdgeOp::Delete) {
        if (work.degree(s.edge.u) <= 1 || work.degree(s.edge.v) <= 1) continue;
        if (plan.forbid_disconnect && !deletion_keeps_connected(work, s.edge)) continue;
        if (plan.stop_on_criterion &&
            rechecked_delete_certificate(work, est, s.edge, plan.solver) <= 0.0) {
          recheck_failed = true;
          continue;
        }
        work.remove_edge(s.edge.u, s.edge.v);
      } else {
        work.add_edge(s.edge.u, s.edge.v);
      }
      ++steps;
      ++applied;
      pending.push_back({steps, s.edge, s.value, 0.0, work.num_edges()});
    }

    if (applied == 0) {
      // Every positively-scored candidate failing its converged recheck means
      // no certified deletion remains, the same terminal as max g <= 0.
      if (recheck_failed) criterion_stop = true;
      trace.terminal = criterion_stop ? TerminalReason::CriterionStopped
                                      : TerminalReason::NoLegalCandidates;
      break;
    }

    SolverConfig cfg = plan.solver;
    cfg.warm_start = est.fiedler;
    est = iterative_spectrum(work, cfg);
    if (!est.converged) {
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "step %d: refresh without convergence after %d iterations (residual %.3g)",
                    steps, est.iterations, est.residual);
      trace.warnings.emplace_back(buf);
    }
    for (TraceStep& p : pending) {
      p.gap_after = est.gap;
      trace.steps.push_back(p);
    }
    if (criterion_stop) {
      trace.terminal = TerminalReason::CriterionStopped;
      break;
    }
  }

  trace.final_gap = est.gap;
  return {std::move(work), std::move(trace)};
}

std::pair<Graph, RewireTrace> prune_to_sparsity(const Graph& g, double target_fraction,
                                                const RewirePlan& plan) {
  if (!(target_fraction > 0.0 && target_fraction < 1.0))
    fail(Errc::InvalidArgument, "target_fraction must lie in (0, 1)");
  if (plan.direction != EdgeOp::Delete)
    fail(Errc::InvalidPlan, "prune_to_sparsity deletes; plan.direction must be Delete");
  const long long budget = std::llround(target_fraction * static_cast<double>(g.num_edges()));
  if (budget == 0) {
    RewireTrace trace;
    const SpectrumEstimate est = iterative_spectrum(g, plan.solver);
    trace.initial_gap = trace.final_gap = est.gap;
    trace.terminal = TerminalReason::BudgetExhausted;
    return {g, trace};
  }
  RewirePlan sized = plan;
  sized.budget = static_cast<int>(budget);
  return rewire(g, sized);
}

std::string trace_to_csv(const RewireTrace& trace,
                         const std::vector<std::string>& header_comments) {
  std::string out;
  for (const std::string& line : header_comments) out += "# " + line + "\n";
  out += "step,edge_u,edge_v,score,gap_after,edges_total\n";
  char buf[128];
  for (const TraceStep& s : trace.steps) {
    std::snprintf(buf, sizeof buf, "%d,%d,%d,%.17g,%.17g,%d\n", s.step, s.edge.u,
                  s.edge.v, s.score, s.gap_after, s.edges_total);
    out += buf;
  }
  return out;
}

std::string trace_summary_json(const RewireTrace& trace) {
  nlohmann::json out = {
      {"initial_gap", trace.initial_gap},
      {"final_gap", trace.final_gap},
      {"steps", static_cast<int>(trace.steps.size())},
      {"terminal_reason", terminal_reason_name(trace.terminal)},
      {"warnings", trace.warnings},
  };
  return out.dump(2);
}

}  // namespace braess
