#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "microevo/io.hpp"

using namespace microevo;
namespace fs = std::filesystem;

namespace {

const fs::path kRoot = fs::temp_directory_path() / "microevo_test_commands";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int cli(const std::string& args, const fs::path& stdout_to = {}) {
  std::string cmd = std::string(MICROEVO_CLI) + " " + args;
  cmd += stdout_to.empty() ? " > /dev/null" : " > '" + stdout_to.string() + "'";
  cmd += " 2> /dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') out.push_back(line);
  }
  return out;
}

fs::path write_config(const fs::path& dir, const std::string& extra) {
  fs::create_directories(dir);
  const auto path = dir / "exp.ini";
  std::ofstream(path) << "[experiment]\nmaster_seed = 5\n"
                      << "[evolution]\npop_size = 4\ngenerations = 5\nn_runs = 2\n"
                      << "[sim]\nmax_sim_time = 4\n"
                      << "[bootstrap]\nn_initial_random = 2\ninner_pop = 4\ninner_generations = 2\n"
                      << "n_steps = 2\nn_probe_small = 6\nn_probe_large = 6\n"
                      << extra;
  return path;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream s(line);
  std::string cell;
  while (std::getline(s, cell, ',')) out.push_back(cell);
  return out;
}

}  // namespace

TEST_CASE("scenario-gen") {
  const auto dir = kRoot / "scn";
  fs::remove_all(dir);
  REQUIRE(cli("scenario-gen --seed 3 --out " + (dir / "t").string()) == 0);
  int n = 0;
  for (const auto& e : fs::directory_iterator(dir / "t")) n += e.path().extension() == ".scn";
  CHECK(n == 5);
  CHECK(resolve_scenarios((dir / "t").string(), 0) == resolve_scenarios("training", 3));

  REQUIRE(cli("scenario-gen --seed 3 --scenarios random:50 --out " + (dir / "r").string()) == 0);
  REQUIRE(cli("scenario-gen --seed 3 --scenarios random:50 --out " + (dir / "r2").string()) == 0);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir / "r")) files.push_back(e.path());
  CHECK(files.size() == 50);
  for (const auto& f : files) CHECK(slurp(f) == slurp(dir / "r2" / f.filename()));

  CHECK(cli("scenario-gen --scenarios bogus --out " + (dir / "x").string()) != 0);
}

TEST_CASE("evolve, bootstrap and eval") {
  const auto dir = kRoot / "pipeline";
  fs::remove_all(dir);
  const auto cfg = write_config(dir, "");

  REQUIRE(cli("bootstrap --config " + cfg.string() + " --out " + (dir / "boot").string()) == 0);
  for (const char* f : {"BO1.chr", "BO2.chr", "opponent.chr", "candidates.csv", "probe_BO1.csv",
                        "probe_BO2.csv", "probe_large_balanced.csv", "config.ini", "layout.txt"}) {
    CHECK_MESSAGE(fs::exists(dir / "boot" / f), f);
  }
  CHECK(slurp(dir / "boot" / "opponent.chr") == slurp(dir / "boot" / "BO2.chr"));
  CHECK(data_lines(slurp(dir / "boot" / "candidates.csv")).size() == 3);
  const auto probe = data_lines(slurp(dir / "boot" / "probe_BO1.csv"));
  REQUIRE(probe.size() == 7);
  std::vector<FitnessVector> pts;
  std::vector<bool> flagged;
  for (std::size_t i = 1; i < probe.size(); ++i) {
    const auto c = split_csv(probe[i]);
    pts.push_back({parse_real(c[1]), parse_real(c[2])});
    flagged.push_back(c[3] == "1");
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool dominated = false;
    for (const auto& q : pts) dominated |= dominates(q, pts[i]);
    CHECK(flagged[i] == !dominated);
  }

  const std::string opp = (dir / "boot" / "opponent.chr").string();
  const std::string evolve = "evolve --config " + cfg.string() + " --opponent " + opp;
  REQUIRE(cli(evolve + " --out " + (dir / "e1").string()) == 0);
  REQUIRE(cli(evolve + " --out " + (dir / "e2").string()) == 0);
  CHECK(slurp(dir / "e1" / "fronts.csv") == slurp(dir / "e2" / "fronts.csv"));
  CHECK(slurp(dir / "e1" / "union.csv") == slurp(dir / "e2" / "union.csv"));

  std::ifstream fronts(dir / "e1" / "fronts.csv");
  const auto rows = read_front_csv(fronts);
  std::vector<std::pair<int, int>> sections;
  for (const auto& r : rows) {
    if (sections.empty() || sections.back() != std::pair{r.run, r.generation}) {
      sections.push_back({r.run, r.generation});
    }
    CHECK(r.rank == 1);
  }
  CHECK(sections.size() == 10);

  std::vector<FitnessVector> finals;
  for (const auto& line : data_lines(slurp(dir / "e1" / "union.csv"))) {
    const auto c = split_csv(line);
    if (c[0] == "final") finals.push_back({parse_real(c[3]), parse_real(c[4])});
  }
  REQUIRE_FALSE(finals.empty());
  for (const auto& a : finals)
    for (const auto& b : finals) CHECK_FALSE(dominates(a, b));

  fs::path member;
  for (const auto& e : fs::directory_iterator(dir / "e1" / "chromosomes")) member = e.path();
  REQUIRE_FALSE(member.empty());
  const auto report = dir / "report.csv";
  REQUIRE(cli("eval --config " + cfg.string() + " --chromosome " + member.string() +
                  " --opponent " + opp + " --scenarios random:50 --replay --out " +
                  (dir / "replay").string(),
              report) == 0);
  const auto lines = data_lines(slurp(report));
  REQUIRE(lines.size() == 52);
  CHECK(lines.front() == "scenario,label,f1,f2");
  CHECK(lines.back().rfind("mean,,", 0) == 0);
  int replays = 0;
  for (const auto& e : fs::directory_iterator(dir / "replay")) replays += e.path().extension() == ".jsonl";
  CHECK(replays == 50);
}

TEST_CASE("eval of a fleeing controller") {
  const auto dir = kRoot / "flee";
  fs::remove_all(dir);
  fs::create_directories(dir);
  // Every unit is pushed away from every enemy at full strength.
  BehaviorParams p;
  for (auto& tb : p.per_type) {
    for (auto& other : tb.fields[static_cast<int>(Relation::Enemy)]) {
      other[static_cast<int>(FieldVariable::Distance)][static_cast<int>(Polarity::Repel)] = {-100.0, 0.0};
    }
    tb.im.decay = 1.0;
  }
  save_chromosome(dir / "flee.chr", encode(p), {});
  const auto report = dir / "report.csv";
  REQUIRE(cli("eval --chromosome " + (dir / "flee.chr").string() + " --opponent " +
                  (dir / "flee.chr").string() + " --scenarios training",
              report) == 0);
  const auto cells = split_csv(data_lines(slurp(report)).back());
  // Overlapping spawns (cloud, cubes) cost some opening volleys before the
  // sides separate.
  CHECK(parse_real(cells[3]) >= 0.75);
  CHECK(parse_real(cells[2]) <= 0.25);
}

TEST_CASE("invalid inputs exit nonzero") {
  const auto dir = kRoot / "bad";
  fs::remove_all(dir);
  const auto cfg = write_config(dir, "[evolution]\nbogus = 1\n");
  CHECK(cli("bootstrap --config " + cfg.string()) != 0);
  CHECK(cli("evolve --config /nonexistent.ini") != 0);
  const auto ok = write_config(dir / "ok", "");
  CHECK(cli("evolve --config " + ok.string() + " --out " + (dir / "o").string()) != 0);  // no opponent
  CHECK(cli("eval --chromosome /nonexistent.chr --opponent /nonexistent.chr") != 0);
}
