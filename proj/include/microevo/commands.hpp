#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace microevo {

// Options shared by the subcommands; unset optionals fall back to the config.
struct CommandOptions {
  std::filesystem::path config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> scenarios;
  std::optional<std::filesystem::path> out_dir;
  std::optional<std::filesystem::path> opponent;
  std::filesystem::path chromosome;  // eval only
  bool replay = false;               // eval only
};

/// n_runs independent evolutions. Writes to the output directory:
///   config.ini, layout.txt, fronts.csv (F1 per run and generation),
///   union.csv (non-dominated union of F1 over runs, initial and final),
///   chromosomes/run<R>_<I>.chr for each final F1 member.
void cmd_evolve(const CommandOptions& opt, std::ostream& log);

/// Opponent bootstrap. Writes BO<i>.chr, opponent.chr (the chosen step),
/// candidates.csv, probe_BO<i>.csv and probe_large_<label>.csv.
void cmd_bootstrap(const CommandOptions& opt, std::ostream& log);

/// Per-scenario and mean fitness as CSV on `report`; with `replay`, one
/// replay_<k>.jsonl per scenario under the output directory.
void cmd_eval(const CommandOptions& opt, std::ostream& report);

// Writes <index>_<label>.scn files.
void cmd_scenario_gen(const CommandOptions& opt, std::ostream& log);

// Applies MICROEVO_WORKERS to the OpenMP thread count when set.
void configure_workers();

}  // namespace microevo
