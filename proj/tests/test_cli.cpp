#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "raa/cli.hpp"
#include "raa/geo.hpp"
#include "raa/metrics.hpp"

using namespace raa;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("raa_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "raa");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> rows(const fs::path& p) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(slurp(p));
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    out.push_back(cells);
  }
  return out;
}

void synth(const fs::path& dir, const std::string& noise, int straight, int curve) {
  REQUIRE(cli({"synth", "--out-dir", dir.string(), "--seed", "5", "--straight",
               std::to_string(straight), "--curve", std::to_string(curve), "--synth-noise",
               noise}) == 0);
}

}  // namespace

TEST_CASE("evaluating ground truth against itself is perfect") {
  const fs::path dir = scratch("evaluate");
  synth(dir, "taxonomy", 4, 2);
  REQUIRE(cli({"evaluate", "--segments", (dir / "segments.csv").string(), "--truth",
               (dir / "truth.csv").string(), "--pred", (dir / "truth.csv").string(), "--out-dir",
               dir.string()}) == 0);
  const auto r = rows(dir / "eval.csv");
  REQUIRE(r.size() == 3);
  for (const auto& row : r) {
    CHECK(std::stod(row[2]) == 0.0);
    CHECK(std::stod(row[3]) == 1.0);
  }
  CHECK(r[0][1] == "straight");
  CHECK(r[1][1] == "curve");
  CHECK(r[2][1] == "all");
}

TEST_CASE("rectify then evaluate on exact planted windows gives zero deviation") {
  const fs::path dir = scratch("planted");
  synth(dir, "none", 30, 10);
  REQUIRE(cli({"rectify", "--segments", (dir / "segments.csv").string(), "--collected",
               (dir / "collected.csv").string(), "--out-dir", dir.string(), "--method",
               "raa"}) == 0);
  const auto pred = load_point_file(dir / "rectified.csv");
  const auto truth = load_point_file(dir / "truth.csv");
  REQUIRE(pred.size() == truth.size());
  std::size_t exact = 0;
  for (const auto& [id, t] : truth) {
    const LocalFrame frame = make_frame(t.front());
    if (acd({frame.to_local(pred.at(id))}, {frame.to_local(t)}) < 1e-6) ++exact;
  }
  CHECK(static_cast<double>(exact) >= 0.95 * static_cast<double>(truth.size()));
  REQUIRE(cli({"evaluate", "--segments", (dir / "segments.csv").string(), "--truth",
               (dir / "truth.csv").string(), "--pred", (dir / "rectified.csv").string(),
               "--out-dir", dir.string(), "--method", "raa"}) == 0);
  const auto eval = rows(dir / "eval.csv");
  REQUIRE(eval.size() == 3);
  CHECK(eval[2][0] == "raa");
  CHECK(std::stod(eval[2][2]) < 1e-6);
}

TEST_CASE("rectify recovers most planted windows and misses by at most one step") {
  const fs::path dir = scratch("rectify");
  synth(dir, "taxonomy", 16, 4);
  REQUIRE(cli({"rectify", "--segments", (dir / "segments.csv").string(), "--collected",
               (dir / "collected.csv").string(), "--out-dir", dir.string(), "--threads", "2",
               "--th", "0"}) == 0);
  const auto pred = load_point_file(dir / "rectified.csv");
  const auto truth = load_point_file(dir / "truth.csv");
  REQUIRE(pred.size() == truth.size());
  std::size_t exact = 0;
  for (const auto& [id, t] : truth) {
    const LocalFrame frame = make_frame(t.front());
    const double d = acd({frame.to_local(pred.at(id))}, {frame.to_local(t)});
    if (d < 1e-6) ++exact;
    CHECK(d <= 6.0 + 1e-6);
  }
  CHECK(static_cast<double>(exact) >= 0.9 * static_cast<double>(truth.size()));
  CHECK(rows(dir / "losses.csv").size() == truth.size());

  REQUIRE(cli({"evaluate", "--segments", (dir / "segments.csv").string(), "--truth",
               (dir / "truth.csv").string(), "--pred", (dir / "rectified.csv").string(),
               "--out-dir", dir.string()}) == 0);
  const auto eval = rows(dir / "eval.csv");
  REQUIRE(eval.size() == 3);
  CHECK(std::stod(eval[2][3]) >= 0.9);
}

TEST_CASE("bench sweeps five lambda values per class") {
  BenchOptions b;
  b.n_straight = 3;
  b.n_curve = 2;
  b.run.seed = 3;
  const BenchResult r = run_bench(b);
  std::size_t sweep = 0;
  std::vector<double> seen;
  for (const BenchRow& row : r.rows) {
    if (row.section != "lambda_sweep") continue;
    ++sweep;
    if (row.segment_class == "all") seen.push_back(*row.lambda);
  }
  CHECK(sweep == 15);
  CHECK(seen == std::vector<double>{1, 10, 100, 1000, 10000});
  CHECK(r.rows.size() == 15 + 2 * 5 * 3);
  CHECK(r.robustness.size() == 2 * 3 * 5);
}

TEST_CASE("bench output is byte identical across runs and thread counts") {
  const fs::path a = scratch("bench_a");
  const fs::path b = scratch("bench_b");
  const std::vector<std::string> common = {"--seed", "8", "--straight", "3", "--curve", "1"};
  auto args_a = std::vector<std::string>{"bench", "--out-dir", a.string(), "--threads", "1"};
  auto args_b = std::vector<std::string>{"bench", "--out-dir", b.string(), "--threads", "3"};
  args_a.insert(args_a.end(), common.begin(), common.end());
  args_b.insert(args_b.end(), common.begin(), common.end());
  REQUIRE(cli(args_a) == 0);
  REQUIRE(cli(args_b) == 0);
  CHECK(slurp(a / "bench.csv") == slurp(b / "bench.csv"));
  CHECK(slurp(a / "robustness.csv") == slurp(b / "robustness.csv"));
  CHECK(slurp(a / "bench.csv").rfind("# raa config=", 0) == 0);
}

TEST_CASE("sample and plot write their files") {
  const fs::path dir = scratch("sample");
  synth(dir, "none", 2, 1);
  REQUIRE(cli({"sample", "--segments", (dir / "segments.csv").string(), "--out-dir",
               dir.string()}) == 0);
  CHECK_FALSE(rows(dir / "candidates.csv").empty());
  REQUIRE(cli({"plot", "--segments", (dir / "segments.csv").string(), "--collected",
               (dir / "collected.csv").string(), "--truth", (dir / "truth.csv").string(),
               "--out-dir", dir.string(), "--method", "ed"}) == 0);
  std::size_t svgs = 0;
  for (const auto& e : fs::directory_iterator(dir / "plots")) {
    if (e.path().extension() == ".svg") ++svgs;
  }
  CHECK(svgs == 3);
}

TEST_CASE("noise subcommand is reproducible") {
  const fs::path dir = scratch("noise");
  synth(dir, "none", 2, 1);
  for (const char* out : {"n1", "n2"}) {
    REQUIRE(cli({"noise", "--segments", (dir / "segments.csv").string(), "--collected",
                 (dir / "collected.csv").string(), "--out-dir", (dir / out).string(),
                 "--noise-kind", "random", "--seed", "4"}) == 0);
  }
  CHECK(slurp(dir / "n1" / "collected.csv") == slurp(dir / "n2" / "collected.csv"));
  CHECK(slurp(dir / "n1" / "collected.csv") != slurp(dir / "collected.csv"));
}

TEST_CASE("bad arguments return a failure status") {
  CHECK(cli({"rectify", "--segments", "/nonexistent/segments.csv", "--collected", "x"}) == 1);
  CHECK(cli({"bench", "--synth-noise", "gaussian", "--straight", "1", "--curve", "0"}) == 1);
  CHECK(cli({"frobnicate"}) != 0);
}
