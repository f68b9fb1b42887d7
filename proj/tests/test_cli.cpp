#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

const char* binary() {
  const char* bin = std::getenv("BRAESS_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "BRAESS_BIN must point at the CLI binary");
  return bin;
}

fs::path fresh_dir() {
  std::string tmpl = (fs::temp_directory_path() / "braess_cli_XXXXXX").string();
  char* made = mkdtemp(tmpl.data());
  REQUIRE(made != nullptr);
  return fs::path(made);
}

std::string slurp(const fs::path& path) {
  std::ifstream stream(path, std::ios::binary);
  REQUIRE_MESSAGE(bool(stream), "missing " << path.string());
  std::ostringstream out;
  out << stream.rdbuf();
  return out.str();
}

// Runs the binary with `args`, cwd = dir; stdout/stderr captured to files so
// the exit status arrives undisturbed through std::system.
CliRun run(const std::string& args, const fs::path& dir) {
  const std::string cmd = "cd '" + dir.string() + "' && '" + binary() + "' " + args +
                          " >stdout.txt 2>stderr.txt";
  const int raw = std::system(cmd.c_str());
  REQUIRE(raw != -1);
  CliRun result;
  result.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  result.out = slurp(dir / "stdout.txt");
  result.err = slurp(dir / "stderr.txt");
  return result;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::istringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

// A fixed 8-node test graph (the ring plus one chord), written by hand so the
// CLI never generates it for us.
const char* kChordedRing =
    "0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n6 7\n0 7\n0 3\n";

}  // namespace

TEST_CASE("analyze reports the showcase gaps") {
  const fs::path dir = fresh_dir();
  const CliRun r = run("analyze --fixture figure1:g --out .", dir);
  CHECK(r.code == 0);

  const nlohmann::json report = nlohmann::json::parse(slurp(dir / "analysis.json"));
  CHECK(report.at("nodes").get<int>() == 8);
  CHECK(report.at("edges").get<int>() == 9);
  CHECK(report.at("connected").get<bool>());
  CHECK(report.at("gap").get<double>() == doctest::Approx(0.2829).epsilon(5e-4));
  CHECK(report.at("cheeger").get<double>() > 0.0);
  CHECK(report.at("config").at("seed").get<int>() == 0);

  const fs::path ring_dir = fresh_dir();
  const CliRun ring = run("analyze --gen ring:4 --out .", ring_dir);
  CHECK(ring.code == 0);
  const nlohmann::json ring_report = nlohmann::json::parse(slurp(ring_dir / "analysis.json"));
  CHECK(ring_report.at("gap").get<double>() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("analyze accepts disconnected graphs and says so") {
  const fs::path dir = fresh_dir();
  {
    std::ofstream f(dir / "disc.el");
    f << "0 1\n2 3\n";
  }
  const CliRun r = run("analyze --input disc.el --out .", dir);
  CHECK(r.code == 0);
  const nlohmann::json report = nlohmann::json::parse(slurp(dir / "analysis.json"));
  CHECK_FALSE(report.at("connected").get<bool>());
  CHECK(report.at("gap").get<double>() == 0.0);
}

TEST_CASE("analyze emits a csv variant") {
  const fs::path dir = fresh_dir();
  const CliRun r = run("analyze --fixture figure1:gminus --format csv --out .", dir);
  CHECK(r.code == 0);
  const auto rows = csv_rows(slurp(dir / "analysis.csv"));
  REQUIRE(rows.size() >= 5);
  CHECK(rows[0] == std::vector<std::string>{"key", "value"});
  bool saw_gap = false;
  for (const auto& row : rows) {
    if (row.size() == 2 && row[0] == "gap") {
      saw_gap = true;
      CHECK(std::stod(row[1]) == doctest::Approx(0.2929).epsilon(5e-4));
    }
  }
  CHECK(saw_gap);
}

TEST_CASE("rewire writes the full artifact set") {
  const fs::path dir = fresh_dir();
  const CliRun r =
      run("rewire --gen ring:8 --add 0,3 --strategy proxy --delete 1 --out .", dir);
  CHECK(r.code == 0);
  CHECK(r.out.find("terminal BudgetExhausted") != std::string::npos);

  // One greedy step lands on the first-order argmax (the ring edge between
  // the two largest eigenvector entries), not on the chord.
  const auto rows = csv_rows(slurp(dir / "trace.csv"));
  REQUIRE(rows.size() == 2);  // header + one step
  CHECK(rows[1][0] == "1");
  CHECK(rows[1][1] == "5");
  CHECK(rows[1][2] == "6");
  CHECK(std::stod(rows[1][3]) == doctest::Approx(0.131185).epsilon(1e-4));

  const nlohmann::json summary = nlohmann::json::parse(slurp(dir / "summary.json"));
  CHECK(summary.at("initial_gap").get<double>() == doctest::Approx(0.282871).epsilon(1e-5));
  CHECK(summary.at("final_gap").get<double>() == doctest::Approx(0.204666).epsilon(1e-5));
  CHECK(summary.at("terminal_reason").get<std::string>() == "BudgetExhausted");
  CHECK(summary.at("steps").get<int>() == 1);
  CHECK(summary.at("config").at("strategy").get<std::string>() == "proxy");

  // The rewired edge list has 8 edges and no 5-6 edge left.
  int edges = 0;
  bool has_56 = false;
  std::istringstream el(slurp(dir / "rewired.el"));
  std::string line;
  while (std::getline(el, line)) {
    if (line.empty() || line[0] == '#') continue;
    ++edges;
    if (line == "5 6") has_56 = true;
  }
  CHECK(edges == 8);
  CHECK_FALSE(has_56);
}

TEST_CASE("validation failures exit 2 and leave no partial outputs") {
  const fs::path dir = fresh_dir();

  const CliRun missing = run("rewire --input nope.el --out outdir", dir);
  CHECK(missing.code == 2);
  CHECK_FALSE(fs::exists(dir / "outdir"));
  CHECK(missing.err.find("error") != std::string::npos);

  const CliRun bogus = run("rewire --gen ring:8 --strategy bogus --out outdir", dir);
  CHECK(bogus.code == 2);
  CHECK_FALSE(fs::exists(dir / "outdir"));

  const CliRun two_sources = run("rewire --gen ring:8 --input nope.el --out outdir", dir);
  CHECK(two_sources.code == 2);
  CHECK_FALSE(fs::exists(dir / "outdir"));

  const CliRun short_gen = run("analyze --gen er:30 --out outdir", dir);
  CHECK(short_gen.code == 2);
  CHECK_FALSE(fs::exists(dir / "outdir"));

  const CliRun no_sub = run("", dir);
  CHECK(no_sub.code == 2);
}

TEST_CASE("solver trouble surfaces as exit 3 with flagged outputs") {
  const fs::path dir = fresh_dir();
  const CliRun r = run(
      "rewire --gen ring:12 --direction delete --budget 2 --tol 0 --max-iter 3 --out .", dir);
  CHECK(r.code == 3);
  CHECK(r.err.find("convergence") != std::string::npos);
  CHECK(fs::exists(dir / "rewired.el"));
  CHECK(fs::exists(dir / "trace.csv"));
  const nlohmann::json summary = nlohmann::json::parse(slurp(dir / "summary.json"));
  REQUIRE(summary.at("warnings").size() > 0);
  CHECK(summary.at("warnings")[0].get<std::string>().find("convergence") != std::string::npos);
}

TEST_CASE("reruns are byte-identical and never touch the input file") {
  const fs::path dir = fresh_dir();
  {
    std::ofstream f(dir / "g.el", std::ios::binary);
    f << kChordedRing;
  }
  const std::string before = slurp(dir / "g.el");

  const std::string args =
      "rewire --input g.el --strategy eldan --direction delete --budget 2 --seed 5 --out ";
  const CliRun first = run(args + "one", dir);
  const CliRun second = run(args + "two", dir);
  CHECK(first.code == 0);
  CHECK(second.code == 0);
  for (const char* name : {"rewired.el", "trace.csv", "summary.json"}) {
    CHECK(slurp(dir / "one" / name) == slurp(dir / "two" / name));
  }
  CHECK(slurp(dir / "g.el") == before);
}

TEST_CASE("smooth emits one csv per fixture variant") {
  const fs::path dir = fresh_dir();
  const CliRun r = run("smooth --fixture figure1 --orders 3 --trials 1 --seed 1 --out .", dir);
  CHECK(r.code == 0);
  for (const char* name :
       {"smooth_gminus.csv", "smooth_g.csv", "smooth_gplus.csv", "smooth_gtilde.csv"}) {
    CAPTURE(name);
    REQUIRE(fs::exists(dir / name));
    const auto rows = csv_rows(slurp(dir / name));
    REQUIRE(rows.size() == 5);  // header + orders 0..3
    CHECK(rows[0][0] == "order");
    // One trial: the std column is exactly zero.
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::stod(rows[i][2]) == 0.0);
  }

  // A single named variant gets the bare file name.
  const fs::path single = fresh_dir();
  const CliRun one =
      run("smooth --fixture figure1:g --labels config2 --orders 2 --trials 2 --out .", single);
  CHECK(one.code == 0);
  CHECK(fs::exists(single / "smooth.csv"));

  // Degenerate labels surface as a validation error.
  const fs::path bad = fresh_dir();
  {
    std::ofstream f(bad / "labels.txt");
    f << "1 -1 -1 -1 -1 -1 -1 -1\n";
    std::ofstream g(bad / "g.el", std::ios::binary);
    g << kChordedRing;
  }
  const CliRun degen =
      run("smooth --input g.el --labels-file labels.txt --orders 1 --trials 1 --out sub", bad);
  CHECK(degen.code == 2);
}

TEST_CASE("bench with budget zero emits header-only trajectories") {
  const fs::path dir = fresh_dir();
  const CliRun r = run("bench --gen er:12:20 --budget 0 --out .", dir);
  CHECK(r.code == 0);
  int files = 0;
  for (const char* tag : {"proxy_add", "proxy_delete", "eldan_add", "eldan_delete",
                          "exactgreedy_add", "exactgreedy_delete"}) {
    const fs::path file = dir / (std::string("bench_") + tag + ".csv");
    CAPTURE(tag);
    REQUIRE(fs::exists(file));
    ++files;
    const auto rows = csv_rows(slurp(file));
    REQUIRE(rows.size() == 1);  // header only
    CHECK(rows[0].back() == "edges_total");
    CHECK(rows[0][rows[0].size() - 2] == "exact_gap");  // small graph: audited column
  }
  CHECK(files == 6);
}

TEST_CASE("bench trajectories carry a faithful exact-gap audit") {
  const fs::path dir = fresh_dir();
  const CliRun r = run(
      "bench --gen er:12:20 --seed 3 --budget 2 --strategy exact --direction add --out .", dir);
  CHECK(r.code == 0);
  const auto rows = csv_rows(slurp(dir / "bench_exactgreedy_add.csv"));
  REQUIRE(rows.size() == 3);  // header + two steps
  for (std::size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].size() == 7);
    const double gap_after = std::stod(rows[i][4]);
    const double exact_gap = std::stod(rows[i][5]);
    // The trace's refreshed iterative gap and the dense replay agree.
    CHECK(gap_after == doctest::Approx(exact_gap).epsilon(1e-7));
  }
  CHECK(r.out.find("bench exactgreedy_add:") != std::string::npos);
}
