#include "microevo/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

namespace microevo {

std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_real(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ParseError("not a real number: '" + std::string(s) + "'");
  }
  return v;
}

namespace {

template <typename Int>
Int parse_int(std::string_view s) {
  Int v{};
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ParseError("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool is_blank_or_comment(std::string_view line) {
  line = trim(line);
  return line.empty() || line.front() == '#';
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t b = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > b) out.push_back(s.substr(b, i - b));
  }
  return out;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t b = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(b, i - b));
      b = i + 1;
    }
  }
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

using Setter = std::function<void(ExperimentConfig&, std::string_view)>;

const std::map<std::string, Setter>& config_keys() {
  static const std::map<std::string, Setter> keys = {
      {"experiment.scenarios", [](auto& c, auto v) { c.scenarios = std::string(v); }},
      {"experiment.opponent", [](auto& c, auto v) { c.opponent = std::string(v); }},
      {"experiment.out_dir", [](auto& c, auto v) { c.out_dir = std::string(v); }},
      {"experiment.master_seed",
       [](auto& c, auto v) { c.master_seed = parse_int<std::uint64_t>(v); }},
      {"evolution.pop_size", [](auto& c, auto v) { c.evolution.pop_size = parse_int<int>(v); }},
      {"evolution.generations", [](auto& c, auto v) { c.evolution.generations = parse_int<int>(v); }},
      {"evolution.p_crossover", [](auto& c, auto v) { c.evolution.p_crossover = parse_real(v); }},
      {"evolution.p_mutation", [](auto& c, auto v) { c.evolution.p_mutation = parse_real(v); }},
      {"evolution.eta_c", [](auto& c, auto v) { c.evolution.eta_c = parse_real(v); }},
      {"evolution.eta_m", [](auto& c, auto v) { c.evolution.eta_m = parse_real(v); }},
      {"evolution.n_runs", [](auto& c, auto v) { c.evolution.n_runs = parse_int<int>(v); }},
      {"sim.dt", [](auto& c, auto v) { c.sim.dt = parse_real(v); }},
      {"sim.max_sim_time", [](auto& c, auto v) { c.sim.max_sim_time = parse_real(v); }},
      {"bootstrap.n_initial_random",
       [](auto& c, auto v) { c.bootstrap.n_initial_random = parse_int<int>(v); }},
      {"bootstrap.inner_pop", [](auto& c, auto v) { c.bootstrap.inner_pop = parse_int<int>(v); }},
      {"bootstrap.inner_generations",
       [](auto& c, auto v) { c.bootstrap.inner_generations = parse_int<int>(v); }},
      {"bootstrap.n_steps", [](auto& c, auto v) { c.bootstrap.n_steps = parse_int<int>(v); }},
      {"bootstrap.n_probe_small",
       [](auto& c, auto v) { c.bootstrap.n_probe_small = parse_int<int>(v); }},
      {"bootstrap.n_probe_large",
       [](auto& c, auto v) { c.bootstrap.n_probe_large = parse_int<int>(v); }},
  };
  return keys;
}

}  // namespace

void ExperimentConfig::validate() const {
  evolution.validate();
  bootstrap.validate();
  if (!(sim.dt > 0.0) || !(sim.max_sim_time > 0.0)) {
    throw std::invalid_argument("sim: dt and max_sim_time must be positive");
  }
  if (scenarios.empty()) throw std::invalid_argument("experiment: scenarios must not be empty");
  if (out_dir.empty()) throw std::invalid_argument("experiment: out_dir must not be empty");
}

std::string ExperimentConfig::to_text() const {
  std::ostringstream out;
  out << "[experiment]\n"
      << "scenarios = " << scenarios << "\n"
      << "opponent = " << opponent << "\n"
      << "out_dir = " << out_dir << "\n"
      << "master_seed = " << master_seed << "\n\n"
      << "[evolution]\n"
      << "pop_size = " << evolution.pop_size << "\n"
      << "generations = " << evolution.generations << "\n"
      << "p_crossover = " << format_real(evolution.p_crossover) << "\n"
      << "p_mutation = " << format_real(evolution.p_mutation) << "\n"
      << "eta_c = " << format_real(evolution.eta_c) << "\n"
      << "eta_m = " << format_real(evolution.eta_m) << "\n"
      << "n_runs = " << evolution.n_runs << "\n\n"
      << "[sim]\n"
      << "dt = " << format_real(sim.dt) << "\n"
      << "max_sim_time = " << format_real(sim.max_sim_time) << "\n\n"
      << "[bootstrap]\n"
      << "n_initial_random = " << bootstrap.n_initial_random << "\n"
      << "inner_pop = " << bootstrap.inner_pop << "\n"
      << "inner_generations = " << bootstrap.inner_generations << "\n"
      << "n_steps = " << bootstrap.n_steps << "\n"
      << "n_probe_small = " << bootstrap.n_probe_small << "\n"
      << "n_probe_large = " << bootstrap.n_probe_large << "\n";
  return out.str();
}

// Where results are written is not part of the experiment.
std::uint64_t ExperimentConfig::hash() const {
  ExperimentConfig c = *this;
  c.out_dir.clear();
  return fnv1a(c.to_text());
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  std::string section;
  int line_no = 0;
  for (auto raw : split(text, '\n')) {
    ++line_no;
    const auto line = trim(raw);
    if (is_blank_or_comment(line)) continue;
    const std::string where = "config line " + std::to_string(line_no) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(where + "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section != "experiment" && section != "evolution" && section != "sim" &&
          section != "bootstrap") {
        throw ParseError(where + "unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(where + "expected key = value");
    if (section.empty()) throw ParseError(where + "key outside of a section");
    const std::string key = section + "." + std::string(trim(line.substr(0, eq)));
    const auto it = config_keys().find(key);
    if (it == config_keys().end()) throw ParseError(where + "unknown key " + key);
    try {
      it->second(cfg, trim(line.substr(eq + 1)));
    } catch (const ParseError& e) {
      throw ParseError(where + key + ": " + e.what());
    }
  }
  cfg.evolution.master_seed = cfg.master_seed;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid config: ") + e.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fnv1a_hex(std::uint64_t h) {
  char buf[17];
  const auto res = std::to_chars(buf, buf + sizeof buf, h, 16);
  std::string s(buf, res.ptr);
  return std::string(16 - s.size(), '0') + s;
}

std::string provenance_line(const Provenance& p) {
  return "# tool=" + std::string(kToolName) + " version=" + std::string(kToolVersion) +
         " config_hash=" + fnv1a_hex(p.config_hash) + " master_seed=" +
         std::to_string(p.master_seed);
}

void write_chromosome(std::ostream& out, const Chromosome& ch, const Provenance& p) {
  out << provenance_line(p) << "\n";
  out << "# genome layout version " << GenomeLayout::kVersion << ", " << ch.genes.size()
      << " genes\n";
  for (std::size_t i = 0; i < ch.genes.size(); ++i) {
    out << (i ? " " : "") << format_real(ch.genes[i]);
  }
  out << "\n";
}

Chromosome read_chromosome(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    if (is_blank_or_comment(line)) continue;
    Chromosome ch;
    for (auto tok : split_ws(line)) {
      const double g = parse_real(tok);
      if (!(g >= 0.0 && g <= 1.0)) throw ParseError("gene outside [0, 1]: " + std::string(tok));
      ch.genes.push_back(g);
    }
    return ch;
  }
  throw ParseError("chromosome file has no gene line");
}

void save_chromosome(const std::filesystem::path& path, const Chromosome& ch,
                     const Provenance& p) {
  auto out = open_out(path);
  write_chromosome(out, ch, p);
}

Chromosome load_chromosome(const std::filesystem::path& path, std::size_t expected_length) {
  auto in = open_in(path);
  Chromosome ch;
  try {
    ch = read_chromosome(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  if (ch.genes.size() != expected_length) {
    throw ParseError(path.string() + ": expected " + std::to_string(expected_length) +
                     " genes, found " + std::to_string(ch.genes.size()));
  }
  return ch;
}

void write_scenario(std::ostream& out, const Scenario& s, const Provenance& p) {
  out << provenance_line(p) << "\n";
  out << "# label: " << s.label << "\n";
  out << "# side type x y z\n";
  for (const auto& pl : s.placements) {
    out << to_string(pl.side) << " " << to_string(pl.type) << " " << format_real(pl.pos.x) << " "
        << format_real(pl.pos.y) << " " << format_real(pl.pos.z) << "\n";
  }
}

Scenario read_scenario(std::istream& in) {
  Scenario s;
  std::string line;
  int line_no = 0;
  constexpr std::string_view kLabel = "# label:";
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.substr(0, kLabel.size()) == kLabel) {
      s.label = std::string(trim(t.substr(kLabel.size())));
      continue;
    }
    if (is_blank_or_comment(t)) continue;
    const auto tok = split_ws(t);
    if (tok.size() != 5) {
      throw ParseError("scenario line " + std::to_string(line_no) + ": expected side type x y z");
    }
    try {
      const Vec3 pos{parse_real(tok[2]), parse_real(tok[3]), parse_real(tok[4])};
      if (!(pos.y >= kAltitudeMin && pos.y <= kAltitudeMax)) {
        throw ParseError("altitude outside [0, 1000]");
      }
      s.placements.push_back({parse_side(tok[0]), parse_unit_type(tok[1]), pos});
    } catch (const std::exception& e) {
      throw ParseError("scenario line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (s.count(Side::Player1) == 0 || s.count(Side::Player2) == 0) {
    throw ParseError("scenario needs units on both sides");
  }
  return s;
}

void save_scenario(const std::filesystem::path& path, const Scenario& s, const Provenance& p) {
  auto out = open_out(path);
  write_scenario(out, s, p);
}

Scenario load_scenario(const std::filesystem::path& path) {
  auto in = open_in(path);
  try {
    return read_scenario(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_front_csv_header(std::ostream& out, const Provenance& p) {
  out << provenance_line(p) << "\n" << kFrontCsvHeader << "\n";
}

void write_front_rows(std::ostream& out, int run, const GenerationRecord& record) {
  for (std::size_t i = 0; i < record.front.size(); ++i) {
    const auto& ind = record.front[i];
    out << run << "," << record.generation << "," << i << "," << format_real(ind.fitness.f1) << ","
        << format_real(ind.fitness.f2) << "," << ind.rank << "," << format_real(ind.crowding)
        << "\n";
  }
}

std::vector<FrontRow> read_front_csv(std::istream& in) {
  std::vector<FrontRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    const auto t = trim(line);
    if (is_blank_or_comment(t) || t == kFrontCsvHeader) continue;
    const auto f = split(t, ',');
    if (f.size() != 7) throw ParseError("front csv: expected 7 columns in '" + line + "'");
    rows.push_back({parse_int<int>(f[0]), parse_int<int>(f[1]), parse_int<int>(f[2]),
                    {parse_real(f[3]), parse_real(f[4])}, parse_int<int>(f[5]),
                    parse_real(f[6])});
  }
  return rows;
}

void write_replay_record(std::ostream& out, const TickFrame& frame) {
  using nlohmann::json;
  json units = json::array();
  for (const auto& u : frame.units) {
    if (!u.alive) continue;
    units.push_back({{"id", u.id},
                     {"side", to_string(u.side)},
                     {"type", to_string(u.type)},
                     {"pos", {u.pos.x, u.pos.y, u.pos.z}},
                     {"heading", u.heading},
                     {"speed", u.speed},
                     {"altitude", u.altitude},
                     {"hp", u.hit_points},
                     {"cooldown", u.cooldown_remaining}});
  }
  json attacks = json::array();
  for (const auto& a : frame.attacks) {
    attacks.push_back({{"attacker", a.attacker_id}, {"target", a.target_id}, {"damage", a.damage}});
  }
  const json record{{"tick", frame.tick}, {"time", frame.time}, {"units", std::move(units)},
                    {"attacks", std::move(attacks)}};
  out << record.dump() << "\n";
}

std::vector<Scenario> resolve_scenarios(std::string_view selector, std::uint64_t seed) {
  if (selector == "training") {
    Rng rng(derive_seed({seed, 300}));
    return training_suite(rng);
  }
  constexpr std::string_view kRandom = "random:";
  if (selector.substr(0, kRandom.size()) == kRandom) {
    const int n = parse_int<int>(selector.substr(kRandom.size()));
    if (n < 1) throw ParseError("random:N needs N >= 1");
    Rng rng(derive_seed({seed, 301}));
    return random_test_scenarios(n, rng);
  }
  const std::filesystem::path path{std::string(selector)};
  if (std::filesystem::is_directory(path)) {
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(path)) {
      if (e.is_regular_file() && e.path().extension() == ".scn") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw ParseError("no .scn files in " + path.string());
    std::vector<Scenario> out;
    for (const auto& f : files) out.push_back(load_scenario(f));
    return out;
  }
  return {load_scenario(path)};
}

}  // namespace microevo
