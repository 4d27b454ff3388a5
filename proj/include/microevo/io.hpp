#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "microevo/bootstrap.hpp"
#include "microevo/moea.hpp"
#include "microevo/scenario.hpp"
#include "microevo/sim.hpp"

namespace microevo {

inline constexpr std::string_view kToolName = "microevo";
inline constexpr std::string_view kToolVersion = "0.1.0";

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shortest decimal that parses back to the same double.
std::string format_real(double v);
double parse_real(std::string_view s);

struct ExperimentConfig {
  EvolutionConfig evolution;
  SimConfig sim;
  BootstrapConfig bootstrap;
  std::string scenarios = "training";  // training | random:N | FILE
  std::string opponent;                // chromosome file for evolve
  std::string out_dir = "out";
  std::uint64_t master_seed = 1;

  void validate() const;
  // Canonical text; parse_config(to_text()) reproduces the config.
  std::string to_text() const;
  std::uint64_t hash() const;
};

/// INI-style: `[section]` headers and `key = value` lines, `#` comments.
/// Sections: experiment, evolution, sim, bootstrap. Unknown sections or keys
/// and malformed values throw ParseError.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

struct Provenance {
  std::uint64_t config_hash = 0;
  std::uint64_t master_seed = 0;
};

// "# tool=microevo version=... config_hash=... master_seed=..."
std::string provenance_line(const Provenance& p);

std::string fnv1a_hex(std::uint64_t h);
std::uint64_t fnv1a(std::string_view data);

// One line of space-separated genes after `#` comment lines.
void write_chromosome(std::ostream& out, const Chromosome& ch, const Provenance& p);
Chromosome read_chromosome(std::istream& in);
void save_chromosome(const std::filesystem::path& path, const Chromosome& ch,
                     const Provenance& p);
Chromosome load_chromosome(const std::filesystem::path& path,
                           std::size_t expected_length = default_layout().size());

// `side type x y z` per line, `# label: ...` header.
void write_scenario(std::ostream& out, const Scenario& s, const Provenance& p);
Scenario read_scenario(std::istream& in);
void save_scenario(const std::filesystem::path& path, const Scenario& s, const Provenance& p);
Scenario load_scenario(const std::filesystem::path& path);

struct FrontRow {
  int run;
  int generation;
  int individual_index;
  FitnessVector fitness;
  int rank;
  double crowding;
};

inline constexpr std::string_view kFrontCsvHeader =
    "run,generation,individual_index,f1,f2,rank,crowding";

void write_front_csv_header(std::ostream& out, const Provenance& p);
void write_front_rows(std::ostream& out, int run, const GenerationRecord& record);
// Skips comment lines; throws ParseError on malformed rows.
std::vector<FrontRow> read_front_csv(std::istream& in);

// One JSON object per line: {"tick", "time", "units": [...], "attacks": [...]}.
// Dead units are omitted.
void write_replay_record(std::ostream& out, const TickFrame& frame);

// Resolves "training", "random:N" or a scenario file path.
std::vector<Scenario> resolve_scenarios(std::string_view selector, std::uint64_t seed);

}  // namespace microevo
