// microevo: evolve, bootstrap, evaluate and generate skirmish scenarios.
//
//   microevo scenario-gen --scenarios training --seed 7 --out scn/
//   microevo bootstrap --config exp.ini
//   microevo evolve --config exp.ini --opponent out/opponent.chr
//   microevo eval --chromosome a.chr --opponent b.chr --scenarios random:50 --replay

#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "microevo/commands.hpp"
#include "microevo/io.hpp"

int main(int argc, char** argv) {
  using namespace microevo;
  CLI::App app{"Evolve potential-field micro for mixed RTS squads"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  CommandOptions opt;
  std::uint64_t seed = 0;
  std::string scenarios;
  std::string out_dir;
  std::string opponent;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "Master seed (overrides the config)");
    cmd->add_option("--scenarios", scenarios, "training | random:N | FILE | DIR");
    cmd->add_option("--out", out_dir, "Output directory");
  };

  auto* evolve = app.add_subcommand("evolve", "Run NSGA-II against an opponent");
  evolve->add_option("--config", opt.config, "Experiment config")->required()->check(CLI::ExistingFile);
  evolve->add_option("--opponent", opponent, "Opponent chromosome (overrides the config)");
  add_common(evolve);

  auto* boot = app.add_subcommand("bootstrap", "Build a baseline opponent");
  boot->add_option("--config", opt.config, "Experiment config")->required()->check(CLI::ExistingFile);
  add_common(boot);

  auto* eval = app.add_subcommand("eval", "Evaluate a chromosome against an opponent");
  eval->add_option("--config", opt.config, "Experiment config (sim settings)")->check(CLI::ExistingFile);
  eval->add_option("--chromosome", opt.chromosome, "Chromosome to evaluate")->required();
  eval->add_option("--opponent", opponent, "Opponent chromosome");
  eval->add_flag("--replay", opt.replay, "Write one JSONL replay per scenario to --out");
  add_common(eval);

  auto* gen = app.add_subcommand("scenario-gen", "Write scenario files");
  add_common(gen);

  CLI11_PARSE(app, argc, argv);

  auto given = [](CLI::App* cmd, const char* name) { return cmd->count(name) > 0; };
  CLI::App* cmd = app.get_subcommands().front();
  if (given(cmd, "--seed")) opt.seed = seed;
  if (given(cmd, "--scenarios")) opt.scenarios = scenarios;
  if (given(cmd, "--out")) opt.out_dir = out_dir;
  if (cmd->get_option_no_throw("--opponent") && given(cmd, "--opponent")) opt.opponent = opponent;

  configure_workers();
  try {
    if (cmd == evolve) cmd_evolve(opt, std::cerr);
    else if (cmd == boot) cmd_bootstrap(opt, std::cerr);
    else if (cmd == eval) cmd_eval(opt, std::cout);
    else cmd_scenario_gen(opt, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "microevo " << cmd->get_name() << ": " << e.what() << "\n";
    return 1;
  }
  return 0;
}
