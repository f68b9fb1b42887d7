// braess: spectral-gap rewiring and smoothing experiments on undirected graphs.
//
// Subcommands: rewire, analyze, smooth, bench. Every run is deterministic in
// its flags: output CSV/JSON bodies are byte-identical across reruns; only
// wall-clock timings differ, and those go to stdout, never into files.
// Exit codes: 0 success, 2 validation/usage error (no partial outputs),
// 3 solver non-convergence (outputs written, flagged in warnings).

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "braess/analytic.hpp"
#include "braess/errors.hpp"
#include "braess/graph.hpp"
#include "braess/rewiring.hpp"
#include "braess/rng.hpp"
#include "braess/smoothing.hpp"
#include "braess/spectrum.hpp"

namespace {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---- input resolution -----------------------------------------------------

struct InputFlags {
  std::string gen;      // family:params, e.g. ring:8, er:30:58
  std::string input;    // edge-list path
  std::string fixture;  // figure1:<variant>; bare figure1 only where noted
  std::vector<std::string> add;     // pre-edit u,v
  std::vector<std::string> remove;  // pre-edit u,v
};

void add_input_flags(CLI::App* cmd, InputFlags& in, bool with_edits = true) {
  auto* gen = cmd->add_option("--gen", in.gen,
                              "Generate the input graph: ring:N | er:N:M | path:N | complete:N");
  auto* file = cmd->add_option("--input", in.input, "Read the input graph from an edge-list file");
  auto* fix = cmd->add_option("--fixture", in.fixture,
                              "Built-in graph: figure1:gminus|g|gplus|gtilde");
  gen->excludes(file)->excludes(fix);
  file->excludes(fix);
  if (with_edits) {
    cmd->add_option("--add", in.add, "Pre-edit: add edge u,v (repeatable)");
    cmd->add_option("--remove", in.remove, "Pre-edit: remove edge u,v (repeatable)");
  }
}

braess::GeneratorSpec parse_gen(const std::string& text, std::uint64_t seed) {
  std::vector<std::string> parts;
  std::string token;
  std::istringstream stream(text);
  while (std::getline(stream, token, ':')) parts.push_back(token);
  auto want = [&](std::size_t n) {
    if (parts.size() != n)
      braess::fail(braess::Errc::ParseError, "bad generator spec '" + text + "'");
  };
  auto num = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      braess::fail(braess::Errc::ParseError, "bad number '" + s + "' in generator spec");
    }
  };
  braess::GeneratorSpec spec;
  spec.seed = seed;
  if (parts.empty()) braess::fail(braess::Errc::ParseError, "empty generator spec");
  if (parts[0] == "ring") {
    want(2);
    spec.family = braess::GeneratorSpec::Family::Ring;
    spec.n = num(parts[1]);
  } else if (parts[0] == "er") {
    want(3);
    spec.family = braess::GeneratorSpec::Family::ErdosRenyiNM;
    spec.n = num(parts[1]);
    spec.m = num(parts[2]);
  } else if (parts[0] == "path") {
    want(2);
    spec.family = braess::GeneratorSpec::Family::Path;
    spec.n = num(parts[1]);
  } else if (parts[0] == "complete") {
    want(2);
    spec.family = braess::GeneratorSpec::Family::Complete;
    spec.n = num(parts[1]);
  } else {
    braess::fail(braess::Errc::ParseError, "unknown generator family '" + parts[0] + "'");
  }
  return spec;
}

std::pair<int, int> parse_pair(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    braess::fail(braess::Errc::ParseError, "expected u,v but got '" + text + "'");
  try {
    std::size_t ua = 0, ub = 0;
    const std::string left = text.substr(0, comma), right = text.substr(comma + 1);
    const int a = std::stoi(left, &ua);
    const int b = std::stoi(right, &ub);
    if (ua != left.size() || ub != right.size()) throw std::invalid_argument(text);
    return {a, b};
  } catch (const std::exception&) {
    braess::fail(braess::Errc::ParseError, "expected u,v but got '" + text + "'");
  }
}

braess::Graph fixture_graph(const std::string& tag) {
  const braess::BraessFixtures fx = braess::braess_fixtures();
  if (tag == "figure1:gminus") return fx.minus;
  if (tag == "figure1:g") return fx.base;
  if (tag == "figure1:gplus") return fx.plus;
  if (tag == "figure1:gtilde") return fx.tilde;
  braess::fail(braess::Errc::ParseError,
               "unknown fixture '" + tag + "' (want figure1:gminus|g|gplus|gtilde)");
}

std::string read_file(const std::string& path) {
  std::ifstream stream(path, std::ios::binary);
  if (!stream) braess::fail(braess::Errc::ParseError, "cannot open '" + path + "'");
  std::ostringstream out;
  out << stream.rdbuf();
  return out.str();
}

braess::Graph resolve_graph(const InputFlags& in, std::uint64_t seed) {
  int sources = 0;
  for (const std::string* s : {&in.gen, &in.input, &in.fixture})
    if (!s->empty()) ++sources;
  if (sources != 1)
    braess::fail(braess::Errc::InvalidArgument,
                 "exactly one of --gen / --input / --fixture is required");
  braess::Graph g;
  if (!in.gen.empty()) {
    g = braess::generate(parse_gen(in.gen, seed));
  } else if (!in.input.empty()) {
    g = braess::read_edge_list(read_file(in.input));
  } else {
    g = fixture_graph(in.fixture);
  }
  for (const std::string& e : in.add) {
    const auto [a, b] = parse_pair(e);
    g.add_edge(a, b);
  }
  for (const std::string& e : in.remove) {
    const auto [a, b] = parse_pair(e);
    g.remove_edge(a, b);
  }
  return g;
}

json input_config(const InputFlags& in) {
  json cfg = json::object();
  if (!in.gen.empty()) cfg["gen"] = in.gen;
  if (!in.input.empty()) cfg["input"] = in.input;
  if (!in.fixture.empty()) cfg["fixture"] = in.fixture;
  if (!in.add.empty()) cfg["add"] = in.add;
  if (!in.remove.empty()) cfg["remove"] = in.remove;
  return cfg;
}

// ---- output plumbing ------------------------------------------------------

std::string default_out_dir() {
  const char* env = std::getenv("BRAESS_OUT_DIR");
  return env && *env ? env : ".";
}

std::filesystem::path prepare_out_dir(const std::string& dir) {
  std::filesystem::path p(dir);
  std::error_code ec;
  std::filesystem::create_directories(p, ec);
  if (ec) braess::fail(braess::Errc::InvalidArgument, "cannot create '" + dir + "': " + ec.message());
  return p;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream stream(path, std::ios::binary | std::ios::trunc);
  if (!stream) braess::fail(braess::Errc::InvalidArgument, "cannot write '" + path.string() + "'");
  stream << content;
}

std::vector<std::string> config_comments(std::uint64_t seed, const json& cfg) {
  return {"seed=" + std::to_string(seed), "config=" + cfg.dump()};
}

bool has_convergence_warning(const braess::RewireTrace& trace) {
  for (const std::string& w : trace.warnings)
    if (w.find("convergence") != std::string::npos) return true;
  return false;
}

// ---- rewire ---------------------------------------------------------------

struct RewireFlags {
  InputFlags in;
  std::string strategy = "proxy";
  std::string direction = "delete";
  int budget = 1;
  int delete_shorthand = 0;
  int update_period = 1;
  std::optional<int> candidate_cap;
  std::optional<double> target_sparsity;
  bool stop_on_criterion = false;
  bool forbid_disconnect = false;
  bool allow_disconnected_input = false;
  int threads = 1;
  double tolerance = 1e-10;
  int max_iterations = 5000;
  std::uint64_t seed = 0;
  std::string out = default_out_dir();
};

braess::Strategy parse_strategy(const std::string& name) {
  if (name == "proxy") return braess::Strategy::Proxy;
  if (name == "eldan") return braess::Strategy::Eldan;
  if (name == "exact") return braess::Strategy::ExactGreedy;
  braess::fail(braess::Errc::InvalidArgument,
               "unknown strategy '" + name + "' (want proxy|eldan|exact)");
}

braess::EdgeOp parse_direction(const std::string& name) {
  if (name == "add") return braess::EdgeOp::Add;
  if (name == "delete") return braess::EdgeOp::Delete;
  braess::fail(braess::Errc::InvalidArgument,
               "unknown direction '" + name + "' (want add|delete)");
}

json plan_config(const braess::RewirePlan& plan) {
  json cfg = {
      {"strategy", braess::strategy_name(plan.strategy)},
      {"direction", plan.direction == braess::EdgeOp::Add ? "add" : "delete"},
      {"budget", plan.budget},
      {"update_period", plan.update_period},
      {"seed", plan.seed},
      {"stop_on_criterion", plan.stop_on_criterion},
      {"forbid_disconnect", plan.forbid_disconnect},
      {"allow_disconnected_input", plan.allow_disconnected_input},
      {"threads", plan.threads},
      {"tolerance", plan.solver.tolerance},
      {"max_iterations", plan.solver.max_iterations},
  };
  if (plan.candidate_cap) cfg["candidate_cap"] = *plan.candidate_cap;
  return cfg;
}

int run_rewire(const RewireFlags& f) {
  braess::RewirePlan plan;
  plan.strategy = parse_strategy(f.strategy);
  plan.direction = parse_direction(f.direction);
  plan.budget = f.budget;
  if (f.delete_shorthand > 0) {
    plan.direction = braess::EdgeOp::Delete;
    plan.budget = f.delete_shorthand;
  }
  plan.update_period = f.update_period;
  plan.candidate_cap = f.candidate_cap;
  plan.seed = f.seed;
  plan.stop_on_criterion = f.stop_on_criterion;
  plan.forbid_disconnect = f.forbid_disconnect;
  plan.allow_disconnected_input = f.allow_disconnected_input;
  plan.threads = f.threads;
  plan.solver.tolerance = f.tolerance;
  plan.solver.max_iterations = f.max_iterations;

  const braess::Graph g = resolve_graph(f.in, f.seed);

  json cfg = plan_config(plan);
  cfg["subcommand"] = "rewire";
  cfg["input"] = input_config(f.in);
  if (f.target_sparsity) cfg["target_sparsity"] = *f.target_sparsity;

  auto [rewired, trace] = f.target_sparsity
                              ? braess::prune_to_sparsity(g, *f.target_sparsity, plan)
                              : braess::rewire(g, plan);

  const std::filesystem::path dir = prepare_out_dir(f.out);
  const std::vector<std::string> comments = config_comments(f.seed, cfg);
  std::string edge_list;
  for (const std::string& line : comments) edge_list += "# " + line + "\n";
  edge_list += braess::write_edge_list(rewired);
  write_file(dir / "rewired.el", edge_list);
  write_file(dir / "trace.csv", braess::trace_to_csv(trace, comments));

  json summary = json::parse(braess::trace_summary_json(trace));
  summary["config"] = cfg;
  write_file(dir / "summary.json", summary.dump(2) + "\n");

  std::cout << "rewire: " << trace.steps.size() << " steps, gap "
            << format_double(trace.initial_gap) << " -> " << format_double(trace.final_gap)
            << ", terminal " << braess::terminal_reason_name(trace.terminal) << "\n";
  for (const std::string& w : trace.warnings) std::cerr << "warning: " << w << "\n";
  return has_convergence_warning(trace) ? 3 : 0;
}

// ---- analyze --------------------------------------------------------------

struct AnalyzeFlags {
  InputFlags in;
  std::string format = "json";
  double tolerance = 1e-10;
  int max_iterations = 5000;
  std::uint64_t seed = 0;
  std::string out = default_out_dir();
};

int run_analyze(const AnalyzeFlags& f) {
  if (f.format != "json" && f.format != "csv")
    braess::fail(braess::Errc::InvalidArgument, "unknown format '" + f.format + "'");
  const braess::Graph g = resolve_graph(f.in, f.seed);
  const bool connected = braess::is_connected(g);

  braess::SpectrumEstimate est;
  if (g.num_nodes() <= 4096) {
    est = braess::exact_spectrum(g);
  } else {
    braess::SolverConfig cfg;
    cfg.tolerance = f.tolerance;
    cfg.max_iterations = f.max_iterations;
    est = braess::iterative_spectrum(g, cfg);
  }

  json cfg = {{"subcommand", "analyze"}, {"format", f.format}, {"seed", f.seed}};
  cfg["input"] = input_config(f.in);

  json report = {
      {"nodes", g.num_nodes()},
      {"edges", g.num_edges()},
      {"connected", connected},
      {"gap", est.gap},
      {"residual", est.residual},
  };
  if (g.num_nodes() <= 20 && connected) report["cheeger"] = braess::cheeger_constant(g);
  report["spectrum"] = json::parse(braess::spectrum_to_json(est));
  report["config"] = cfg;

  const std::filesystem::path dir = prepare_out_dir(f.out);
  std::string body;
  std::string name;
  if (f.format == "json") {
    name = "analysis.json";
    body = report.dump(2) + "\n";
  } else {
    name = "analysis.csv";
    for (const std::string& line : config_comments(f.seed, cfg)) body += "# " + line + "\n";
    body += "key,value\n";
    body += "nodes," + std::to_string(g.num_nodes()) + "\n";
    body += "edges," + std::to_string(g.num_edges()) + "\n";
    body += std::string("connected,") + (connected ? "1" : "0") + "\n";
    body += "gap," + format_double(est.gap) + "\n";
    body += "residual," + format_double(est.residual) + "\n";
    if (report.contains("cheeger"))
      body += "cheeger," + format_double(report["cheeger"].get<double>()) + "\n";
  }
  write_file(dir / name, body);
  std::cout << body;
  return est.converged ? 0 : 3;
}

// ---- smooth ---------------------------------------------------------------

struct SmoothFlags {
  InputFlags in;
  std::string labels = "config1";
  std::string labels_file;
  int orders = 10;
  int trials = 200;
  double alpha = 1e-3;
  int dim = 1;
  std::uint64_t seed = 0;
  std::string out = default_out_dir();
};

braess::LabelConfig resolve_labels(const SmoothFlags& f, int num_nodes) {
  if (!f.labels_file.empty()) {
    braess::LabelConfig cfg;
    cfg.name = std::filesystem::path(f.labels_file).stem().string();
    std::istringstream stream(read_file(f.labels_file));
    int v = 0;
    while (stream >> v) cfg.labels.push_back(v);
    if (static_cast<int>(cfg.labels.size()) != num_nodes)
      braess::fail(braess::Errc::InvalidArgument,
                   "labels file has " + std::to_string(cfg.labels.size()) + " entries, graph has " +
                       std::to_string(num_nodes) + " nodes");
    return cfg;
  }
  for (int which = 1; which <= 4; ++which)
    if (f.labels == "config" + std::to_string(which)) return braess::ring_label_config(which);
  braess::fail(braess::Errc::InvalidArgument,
               "unknown label config '" + f.labels + "' (want config1..config4 or --labels-file)");
}

int run_smooth(const SmoothFlags& f) {
  braess::SmoothingOptions opts;
  opts.max_order = f.orders;
  opts.trials = f.trials;
  opts.ridge_alpha = f.alpha;
  opts.feature_dim = f.dim;
  opts.seed = f.seed;

  // Bare figure1 runs all four variants; everything else is a single graph.
  std::vector<std::pair<std::string, braess::Graph>> runs;
  if (f.in.fixture == "figure1") {
    const braess::BraessFixtures fx = braess::braess_fixtures();
    runs = {{"gminus", fx.minus}, {"g", fx.base}, {"gplus", fx.plus}, {"gtilde", fx.tilde}};
    if (!f.in.add.empty() || !f.in.remove.empty())
      braess::fail(braess::Errc::InvalidArgument,
                   "pre-edits are not defined for the all-variant fixture");
  } else {
    runs.emplace_back("graph", resolve_graph(f.in, f.seed));
  }

  const std::filesystem::path dir = prepare_out_dir(f.out);
  for (const auto& [name, g] : runs) {
    const braess::LabelConfig labels = resolve_labels(f, g.num_nodes());
    const braess::SmoothingReport report = braess::smoothing_mse_curve(g, labels, opts);
    json cfg = {{"subcommand", "smooth"}, {"graph", name},   {"labels", labels.name},
                {"orders", f.orders},     {"trials", f.trials}, {"alpha", f.alpha},
                {"dim", f.dim},           {"seed", f.seed}};
    cfg["input"] = input_config(f.in);
    const std::string file = runs.size() == 1 && name == "graph" ? "smooth.csv"
                                                                 : "smooth_" + name + ".csv";
    write_file(dir / file, braess::smoothing_report_csv(report, config_comments(f.seed, cfg)));
    std::cout << "smooth " << name << ": wrote " << (dir / file).string() << "\n";
  }
  return 0;
}

// ---- bench ----------------------------------------------------------------

struct BenchFlags {
  std::string gen;
  std::string strategy;   // empty = all
  std::string direction;  // empty = both
  int budget = 10;
  int update_period = 1;
  std::optional<int> candidate_cap;
  int threads = 1;
  int exact_gap_limit = 4096;
  double tolerance = 1e-10;
  int max_iterations = 5000;
  std::uint64_t seed = 0;
  std::string out = default_out_dir();
};

int run_bench(const BenchFlags& f) {
  if (f.gen.empty())
    braess::fail(braess::Errc::InvalidArgument, "bench requires --gen");
  if (f.budget < 0) braess::fail(braess::Errc::InvalidArgument, "budget must be >= 0");
  const braess::Graph g = braess::generate(parse_gen(f.gen, f.seed));
  const bool exact_column = g.num_nodes() <= f.exact_gap_limit;

  std::vector<braess::Strategy> strategies;
  if (f.strategy.empty()) {
    strategies = {braess::Strategy::Proxy, braess::Strategy::Eldan, braess::Strategy::ExactGreedy};
  } else {
    strategies = {parse_strategy(f.strategy)};
  }
  std::vector<braess::EdgeOp> directions;
  if (f.direction.empty()) {
    directions = {braess::EdgeOp::Add, braess::EdgeOp::Delete};
  } else {
    directions = {parse_direction(f.direction)};
  }

  const std::filesystem::path dir = prepare_out_dir(f.out);
  bool convergence_trouble = false;
  for (braess::Strategy strategy : strategies) {
    for (braess::EdgeOp direction : directions) {
      braess::RewirePlan plan;
      plan.strategy = strategy;
      plan.direction = direction;
      plan.budget = f.budget;
      plan.update_period = f.update_period;
      plan.candidate_cap = f.candidate_cap;
      plan.seed = f.seed;
      plan.threads = f.threads;
      plan.solver.tolerance = f.tolerance;
      plan.solver.max_iterations = f.max_iterations;

      const std::string tag = std::string(braess::strategy_name(plan.strategy)) + "_" +
                              (direction == braess::EdgeOp::Add ? "add" : "delete");
      json cfg = plan_config(plan);
      cfg["subcommand"] = "bench";
      cfg["gen"] = f.gen;
      cfg["exact_gap_limit"] = f.exact_gap_limit;

      std::string body;
      for (const std::string& line : config_comments(f.seed, cfg)) body += "# " + line + "\n";
      const std::string header = exact_column
                                     ? "step,edge_u,edge_v,score,gap_after,exact_gap,edges_total"
                                     : "step,edge_u,edge_v,score,gap_after,edges_total";

      double seconds = 0.0;
      std::size_t steps = 0;
      double final_gap = 0.0;
      if (f.budget == 0) {
        body += header + "\n";
        final_gap = braess::iterative_spectrum(g, plan.solver).gap;
      } else {
        const auto t0 = std::chrono::steady_clock::now();
        auto [rewired, trace] = braess::rewire(g, plan);
        const auto t1 = std::chrono::steady_clock::now();
        seconds = std::chrono::duration<double>(t1 - t0).count();
        convergence_trouble = convergence_trouble || has_convergence_warning(trace);
        steps = trace.steps.size();
        final_gap = trace.final_gap;
        for (const std::string& w : trace.warnings)
          std::cerr << "warning (" << tag << "): " << w << "\n";

        body += "# initial_gap=" + format_double(trace.initial_gap) + "\n";
        body += header + "\n";
        braess::Graph replay = g;  // exact trajectory recomputed edge by edge
        for (const braess::TraceStep& s : trace.steps) {
          if (direction == braess::EdgeOp::Add) {
            replay.add_edge(s.edge.u, s.edge.v);
          } else {
            replay.remove_edge(s.edge.u, s.edge.v);
          }
          body += std::to_string(s.step) + "," + std::to_string(s.edge.u) + "," +
                  std::to_string(s.edge.v) + "," + format_double(s.score) + "," +
                  format_double(s.gap_after);
          if (exact_column) body += "," + format_double(braess::exact_spectrum(replay).gap);
          body += "," + std::to_string(s.edges_total) + "\n";
        }
      }
      write_file(dir / ("bench_" + tag + ".csv"), body);
      char line[160];
      std::snprintf(line, sizeof line, "bench %s: steps=%zu final_gap=%.6f seconds=%.3f\n",
                    tag.c_str(), steps, final_gap, seconds);
      std::cout << line;
    }
  }
  return convergence_trouble ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral-gap graph rewiring, analysis, and smoothing experiments"};
  app.require_subcommand(1);

  RewireFlags rw;
  CLI::App* rewire = app.add_subcommand("rewire", "Greedy edge rewiring toward a larger gap");
  add_input_flags(rewire, rw.in);
  rewire->add_option("--strategy", rw.strategy, "proxy | eldan | exact")->capture_default_str();
  auto* rw_dir = rewire->add_option("--direction", rw.direction, "add | delete")->capture_default_str();
  auto* rw_budget = rewire->add_option("--budget", rw.budget, "Edge flips to apply")->capture_default_str();
  auto* rw_del = rewire->add_option("--delete", rw.delete_shorthand,
                                    "Shorthand: --direction delete --budget N");
  auto* rw_sparsity = rewire->add_option("--target-sparsity", rw.target_sparsity,
                                         "Delete round(fraction*|E|) edges instead of --budget");
  rw_del->excludes(rw_dir)->excludes(rw_budget)->excludes(rw_sparsity);
  rw_sparsity->excludes(rw_budget);
  rewire->add_option("--update-period", rw.update_period, "Edge flips per eigenpair refresh")
      ->capture_default_str();
  rewire->add_option("--candidate-cap", rw.candidate_cap,
                     "Max sampled non-edges per scoring pass (additions)");
  rewire->add_flag("--stop-on-criterion", rw.stop_on_criterion,
                   "Stop when the certificate goes non-positive (eldan only)");
  rewire->add_flag("--forbid-disconnect", rw.forbid_disconnect,
                   "Skip deletions that would disconnect the graph");
  rewire->add_flag("--allow-disconnected-input", rw.allow_disconnected_input,
                   "Accept a disconnected input graph");
  rewire->add_option("--threads", rw.threads, "Scoring worker threads")->capture_default_str();
  rewire->add_option("--tol", rw.tolerance, "Solver residual tolerance")->capture_default_str();
  rewire->add_option("--max-iter", rw.max_iterations, "Solver iteration cap")->capture_default_str();
  rewire->add_option("--seed", rw.seed, "Seed for generators and sampling")->capture_default_str();
  rewire->add_option("--out", rw.out, "Output directory (default $BRAESS_OUT_DIR or .)");

  AnalyzeFlags an;
  CLI::App* analyze = app.add_subcommand("analyze", "Gap, residual, and small-graph Cheeger constant");
  add_input_flags(analyze, an.in);
  analyze->add_option("--format", an.format, "json | csv")->capture_default_str();
  analyze->add_option("--tol", an.tolerance, "Solver residual tolerance (large graphs)")
      ->capture_default_str();
  analyze->add_option("--max-iter", an.max_iterations, "Solver iteration cap (large graphs)")
      ->capture_default_str();
  analyze->add_option("--seed", an.seed, "Seed for generators")->capture_default_str();
  analyze->add_option("--out", an.out, "Output directory (default $BRAESS_OUT_DIR or .)");

  SmoothFlags sm;
  CLI::App* smooth = app.add_subcommand("smooth", "Feature-smoothing MSE curves");
  add_input_flags(smooth, sm.in);
  smooth->get_option("--fixture")
      ->description("Built-in graph: figure1 (all four variants) or figure1:<variant>");
  auto* sm_labels = smooth->add_option("--labels", sm.labels, "config1..config4 (8-node rings)")
                        ->capture_default_str();
  smooth->add_option("--labels-file", sm.labels_file, "File of whitespace-separated +1/-1 labels")
      ->excludes(sm_labels);
  smooth->add_option("--orders", sm.orders, "Max smoothing order K")->capture_default_str();
  smooth->add_option("--trials", sm.trials, "Resampling trials")->capture_default_str();
  smooth->add_option("--alpha", sm.alpha, "Ridge strength")->capture_default_str();
  smooth->add_option("--dim", sm.dim, "Feature dimension")->capture_default_str();
  smooth->add_option("--seed", sm.seed, "Base seed for features and splits")->capture_default_str();
  smooth->add_option("--out", sm.out, "Output directory (default $BRAESS_OUT_DIR or .)");

  BenchFlags be;
  CLI::App* bench = app.add_subcommand("bench", "Strategy trajectories with exact-gap audit");
  bench->add_option("--gen", be.gen, "Generator spec: ring:N | er:N:M | path:N | complete:N")
      ->required();
  bench->add_option("--strategy", be.strategy, "Restrict to proxy | eldan | exact (default all)");
  bench->add_option("--direction", be.direction, "Restrict to add | delete (default both)");
  bench->add_option("--budget", be.budget, "Edge flips per run")->capture_default_str();
  bench->add_option("--update-period", be.update_period, "Edge flips per eigenpair refresh")
      ->capture_default_str();
  bench->add_option("--candidate-cap", be.candidate_cap,
                    "Max sampled non-edges per scoring pass (additions)");
  bench->add_option("--threads", be.threads, "Scoring worker threads")->capture_default_str();
  bench->add_option("--exact-gap-limit", be.exact_gap_limit,
                    "Emit the exact-gap column only when n <= this")->capture_default_str();
  bench->add_option("--tol", be.tolerance, "Solver residual tolerance")->capture_default_str();
  bench->add_option("--max-iter", be.max_iterations, "Solver iteration cap")->capture_default_str();
  bench->add_option("--seed", be.seed, "Seed for generators and sampling")->capture_default_str();
  bench->add_option("--out", be.out, "Output directory (default $BRAESS_OUT_DIR or .)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (rewire->parsed()) return run_rewire(rw);
    if (analyze->parsed()) return run_analyze(an);
    if (smooth->parsed()) return run_smooth(sm);
    if (bench->parsed()) return run_bench(be);
  } catch (const braess::Error& e) {
    std::cerr << "error [" << braess::errc_name(e.code()) << "]: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;  // unreachable: require_subcommand(1)
}
