#include "microevo/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <omp.h>

#include "microevo/bootstrap.hpp"
#include "microevo/io.hpp"

namespace microevo {

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kRunStream = 1000;
constexpr std::uint64_t kBootstrapStream = 2000;

ExperimentConfig resolve_config(const CommandOptions& opt) {
  ExperimentConfig cfg = opt.config.empty() ? ExperimentConfig{} : load_config(opt.config);
  if (opt.seed) cfg.master_seed = *opt.seed;
  if (opt.scenarios) cfg.scenarios = *opt.scenarios;
  if (opt.out_dir) cfg.out_dir = opt.out_dir->string();
  if (opt.opponent) cfg.opponent = opt.opponent->string();
  cfg.evolution.master_seed = cfg.master_seed;
  cfg.validate();
  return cfg;
}

fs::path prepare_out(const ExperimentConfig& cfg) {
  const fs::path out = cfg.out_dir;
  fs::create_directories(out);
  return out;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void write_common(const fs::path& out, const ExperimentConfig& cfg) {
  auto c = open_out(out / "config.ini");
  c << provenance_line({cfg.hash(), cfg.master_seed}) << "\n" << cfg.to_text();
  auto l = open_out(out / "layout.txt");
  l << provenance_line({cfg.hash(), cfg.master_seed}) << "\n" << default_layout().describe();
}

struct Tagged {
  int run;
  int index;
  FitnessVector f;
};

void write_union(std::ostream& out, std::string_view set, const std::vector<Tagged>& all) {
  std::vector<FitnessVector> pts;
  pts.reserve(all.size());
  for (const auto& t : all) pts.push_back(t.f);
  for (std::size_t i : nondominated_indices(pts)) {
    out << set << "," << all[i].run << "," << all[i].index << "," << format_real(all[i].f.f1)
        << "," << format_real(all[i].f.f2) << "\n";
  }
}

void write_probe_csv(const fs::path& path, const ProbeResult& probe, const Provenance& p) {
  auto out = open_out(path);
  out << provenance_line(p) << "\nprobe_index,f1,f2,nondominated\n";
  std::vector<bool> on_front(probe.points.size(), false);
  for (std::size_t i : probe.front) on_front[i] = true;
  for (std::size_t i = 0; i < probe.points.size(); ++i) {
    out << i << "," << format_real(probe.points[i].f1) << "," << format_real(probe.points[i].f2)
        << "," << (on_front[i] ? 1 : 0) << "\n";
  }
}

}  // namespace

void configure_workers() {
  if (const char* env = std::getenv("MICROEVO_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) omp_set_num_threads(n);
  }
}

void cmd_evolve(const CommandOptions& opt, std::ostream& log) {
  const ExperimentConfig cfg = resolve_config(opt);
  if (cfg.opponent.empty()) throw ParseError("evolve: no opponent chromosome configured");
  const Chromosome opponent = load_chromosome(cfg.opponent);
  const fs::path out = prepare_out(cfg);
  write_common(out, cfg);
  const Provenance prov{cfg.hash(), cfg.master_seed};
  fs::create_directories(out / "chromosomes");

  auto fronts = open_out(out / "fronts.csv");
  write_front_csv_header(fronts, prov);
  std::vector<Tagged> initial;
  std::vector<Tagged> final;
  // One suite for every run so that fronts of different runs are comparable.
  const auto suite = resolve_scenarios(cfg.scenarios, cfg.master_seed);
  for (int run = 0; run < cfg.evolution.n_runs; ++run) {
    const std::uint64_t run_seed =
        derive_seed({cfg.master_seed, kRunStream, static_cast<std::uint64_t>(run)});
    const auto result = evolve(cfg.evolution, run_seed, opponent, suite, cfg.sim);
    for (const auto& record : result.archive) write_front_rows(fronts, run, record);

    const auto& first = result.archive.front().front;
    const auto& last = result.archive.back().front;
    for (std::size_t i = 0; i < first.size(); ++i) {
      initial.push_back({run, static_cast<int>(i), first[i].fitness});
    }
    for (std::size_t i = 0; i < last.size(); ++i) {
      final.push_back({run, static_cast<int>(i), last[i].fitness});
      save_chromosome(out / "chromosomes" / ("run" + std::to_string(run) + "_" +
                                             std::to_string(i) + ".chr"),
                      last[i].chromosome, prov);
    }
    log << "run " << run << ": final front " << last.size() << " members\n";
  }

  auto u = open_out(out / "union.csv");
  u << provenance_line(prov) << "\nset,run,individual_index,f1,f2\n";
  write_union(u, "initial", initial);
  write_union(u, "final", final);
}

void cmd_bootstrap(const CommandOptions& opt, std::ostream& log) {
  const ExperimentConfig cfg = resolve_config(opt);
  const fs::path out = prepare_out(cfg);
  write_common(out, cfg);
  const Provenance prov{cfg.hash(), cfg.master_seed};
  const std::uint64_t seed = derive_seed({cfg.master_seed, kBootstrapStream});
  const auto suite = resolve_scenarios(cfg.scenarios, seed);

  const auto result = bootstrap_opponent(cfg.bootstrap, cfg.evolution, seed, suite, cfg.sim);
  {
    auto c = open_out(out / "candidates.csv");
    c << provenance_line(prov) << "\ncandidate,damage\n";
    for (const auto& s : result.steps.front().candidate_scores) {
      c << s.candidate << "," << format_real(s.damage) << "\n";
    }
  }
  // Every opponent faces the same probe chromosomes so their fronts compare directly.
  const std::uint64_t probe_seed = derive_seed({seed, 1});
  for (std::size_t i = 0; i < result.steps.size(); ++i) {
    const std::string label = "BO" + std::to_string(i + 1);
    save_chromosome(out / (label + ".chr"), result.steps[i].opponent, prov);
    const auto probe = probe_front(result.steps[i].opponent, cfg.bootstrap.n_probe_small,
                                   probe_seed, suite, cfg.sim);
    write_probe_csv(out / ("probe_" + label + ".csv"), probe, prov);
    log << label << ": probe front " << probe.front.size() << " of " << probe.points.size()
        << ", area " << format_real(front_area(probe.front_points())) << "\n";
  }
  save_chromosome(out / "opponent.chr", result.opponent(), prov);
  log << "chosen opponent: BO" << result.chosen + 1 << "\n";

  // Larger probe against the chosen opponent and, for comparison, the most
  // fleeing member of the front that produced it.
  const auto& chosen = result.steps[result.chosen];
  const std::uint64_t large_seed = derive_seed({seed, 2});
  write_probe_csv(out / "probe_large_balanced.csv",
                  probe_front(chosen.opponent, cfg.bootstrap.n_probe_large, large_seed, suite, cfg.sim),
                  prov);
  if (!chosen.front.empty()) {
    const auto fleer = std::max_element(
        chosen.front.begin(), chosen.front.end(), [](const Individual& a, const Individual& b) {
          return a.fitness.f2 != b.fitness.f2 ? a.fitness.f2 < b.fitness.f2
                                              : a.fitness.f1 > b.fitness.f1;
        });
    save_chromosome(out / "fleer.chr", fleer->chromosome, prov);
    write_probe_csv(out / "probe_large_fleer.csv",
                    probe_front(fleer->chromosome, cfg.bootstrap.n_probe_large, large_seed, suite,
                                cfg.sim),
                    prov);
  }
}

void cmd_eval(const CommandOptions& opt, std::ostream& report) {
  ExperimentConfig cfg = opt.config.empty() ? ExperimentConfig{} : load_config(opt.config);
  if (opt.seed) cfg.master_seed = *opt.seed;
  if (opt.scenarios) cfg.scenarios = *opt.scenarios;
  if (opt.out_dir) cfg.out_dir = opt.out_dir->string();
  if (!opt.opponent && cfg.opponent.empty()) throw ParseError("eval: no opponent given");
  const fs::path opponent_path = opt.opponent ? *opt.opponent : fs::path(cfg.opponent);
  const Chromosome ch = load_chromosome(opt.chromosome);
  const Chromosome opp = load_chromosome(opponent_path);
  const auto suite = resolve_scenarios(cfg.scenarios, cfg.master_seed);
  const BehaviorParams own = decode(ch);
  const BehaviorParams other = decode(opp);

  std::ostringstream args;
  args << opt.config.string() << "|" << cfg.to_text() << "|" << opt.chromosome.string() << "|"
       << opponent_path.string();
  const Provenance prov{fnv1a(args.str()), cfg.master_seed};
  if (opt.replay) fs::create_directories(cfg.out_dir);

  std::vector<FitnessVector> rows(suite.size());
  for (std::size_t k = 0; k < suite.size(); ++k) {
    TickObserver observer;
    std::ofstream replay;
    if (opt.replay) {
      replay = open_out(fs::path(cfg.out_dir) / ("replay_" + std::to_string(k) + ".jsonl"));
      observer = [&](const TickFrame& f) { write_replay_record(replay, f); };
    }
    rows[k] = compute_objectives(run_skirmish(suite[k], own, other, cfg.sim, observer),
                                 Side::Player1);
  }

  report << provenance_line(prov) << "\nscenario,label,f1,f2\n";
  FitnessVector mean;
  for (std::size_t k = 0; k < suite.size(); ++k) {
    report << k << "," << suite[k].label << "," << format_real(rows[k].f1) << ","
           << format_real(rows[k].f2) << "\n";
    mean.f1 += rows[k].f1;
    mean.f2 += rows[k].f2;
  }
  const double n = static_cast<double>(suite.size());
  report << "mean,," << format_real(mean.f1 / n) << "," << format_real(mean.f2 / n) << "\n";
}

void cmd_scenario_gen(const CommandOptions& opt, std::ostream& log) {
  const std::string selector = opt.scenarios.value_or("training");
  if (selector != "training" && selector.rfind("random:", 0) != 0) {
    throw ParseError("scenario-gen: --scenarios must be training or random:N");
  }
  const std::uint64_t seed = opt.seed.value_or(1);
  const fs::path out = opt.out_dir.value_or("scenarios");
  const auto suite = resolve_scenarios(selector, seed);
  fs::create_directories(out);
  const Provenance prov{fnv1a(selector), seed};
  for (std::size_t k = 0; k < suite.size(); ++k) {
    char prefix[16];
    std::snprintf(prefix, sizeof prefix, "%03zu_", k);
    save_scenario(out / (prefix + suite[k].label + ".scn"), suite[k], prov);
  }
  log << "wrote " << suite.size() << " scenarios to " << out.string() << "\n";
}

}  // namespace microevo
