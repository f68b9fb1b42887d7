#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "braess/graph.hpp"
#include "braess/spectrum.hpp"

namespace braess {

enum class Strategy { Proxy, Eldan, ExactGreedy };

enum class TerminalReason { BudgetExhausted, CriterionStopped, NoLegalCandidates };

const char* strategy_name(Strategy s);
const char* terminal_reason_name(TerminalReason r);

/**
 * One greedy run: `budget` edge flips in one `direction`, scored by
 * `strategy`. Scores go stale in batches of `update_period`: each batch is
 * scored once against the current eigenpair, the top entries applied, then
 * the eigenpair refreshed (warm-started). `candidate_cap` bounds the sampled
 * complement for additions (default 10000); it is an error on deletions.
 * `stop_on_criterion` is defined for the Eldan strategy only: deletion stops
 * when max g <= 0, addition when max(-g) <= 0. A criterion-stopped deletion
 * run additionally re-certifies each selected edge on a converged eigenpair
 * of the pruned graph before applying it (the bounded refinement behind the
 * ranking scores can report a spurious positive); when every positive
 * candidate fails that recheck the run stops on the criterion.
 */
struct RewirePlan {
  EdgeOp direction = EdgeOp::Delete;
  Strategy strategy = Strategy::Proxy;
  int budget = 1;
  int update_period = 1;
  std::optional<int> candidate_cap;  // additions only; defaults to 10000
  std::uint64_t seed = 0;
  bool stop_on_criterion = false;
  bool forbid_disconnect = false;
  bool allow_disconnected_input = false;
  int threads = 1;
  SolverConfig solver;
};

struct EdgeScore {
  Edge edge;
  EdgeOp direction = EdgeOp::Delete;
  double value = 0.0;      // strategy-specific scale
  Strategy basis = Strategy::Proxy;
};

struct TraceStep {
  int step = 0;  // 1-based
  Edge edge;
  double score = 0.0;
  double gap_after = 0.0;  // refreshed estimate after the step's batch
  int edges_total = 0;
};

struct RewireTrace {
  double initial_gap = 0.0;
  double final_gap = 0.0;
  std::vector<TraceStep> steps;
  TerminalReason terminal = TerminalReason::BudgetExhausted;
  std::vector<std::string> warnings;  // e.g. solver non-convergence, downgraded
};

/**
 * Scores every legal candidate in canonical edge order. Deletions that would
 * leave a degree-0 node are omitted (never errors). For additions the
 * complement is enumerated when it fits the cap, else sampled uniformly
 * without replacement (seeded). Candidate evaluation may run on
 * `plan.threads` workers; results are slot-indexed, so the score list is
 * independent of the parallelism.
 *
 * Strategy scales: Proxy and ExactGreedy approximate/measure the gap change
 * for the flip; Eldan carries the certificate value g (addition selects
 * max(-g), deletion max g). Eldan deletion scores each candidate on the
 * pruned graph's eigenpair, refined by at most 8 warm-started power steps.
 */
std::vector<EdgeScore> score_candidates(const Graph& g, const SpectrumEstimate& est,
                                        const RewirePlan& plan);

// Highest-ranked legal score; ties break to the canonically smallest edge.
// With forbid_disconnect, deletions that disconnect the graph are filtered
// here (AllCandidatesFiltered when nothing survives).
EdgeScore select_best(const Graph& g, const std::vector<EdgeScore>& scores,
                      const RewirePlan& plan);

// Runs the greedy loop; returns the rewired graph and the full trace.
std::pair<Graph, RewireTrace> rewire(const Graph& g, const RewirePlan& plan);

// Deletion run sized to round(target_fraction * |E|) flips.
std::pair<Graph, RewireTrace> prune_to_sparsity(const Graph& g, double target_fraction,
                                                const RewirePlan& plan);

// CSV body: step,edge_u,edge_v,score,gap_after,edges_total. Prepended
// comment lines (if any) carry the resolved run config.
std::string trace_to_csv(const RewireTrace& trace,
                         const std::vector<std::string>& header_comments = {});

// {initial_gap, final_gap, steps, terminal_reason} plus any warnings.
std::string trace_summary_json(const RewireTrace& trace);

}  // namespace braess
