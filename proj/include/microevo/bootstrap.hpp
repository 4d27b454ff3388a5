#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "microevo/moea.hpp"

namespace microevo {

struct BootstrapConfig {
  int n_initial_random = 30;
  int inner_pop = 20;
  int inner_generations = 30;
  int n_steps = 5;
  int n_probe_small = 1000;
  int n_probe_large = 3750;

  void validate() const;
};

// Mean of (1 - f2) over a front: how hard the opponent hit the evolved side.
double damage_score(std::span<const Individual> front);

struct CandidateScore {
  std::size_t candidate;
  double damage;
};

/// Runs a (inner_pop, inner_generations) NSGA-II against each candidate and
/// picks the one whose final front suffered the most damage. Ties go to the
/// lower index. `scores` receives every candidate's damage when non-null.
std::size_t most_damaging_opponent(std::span<const Chromosome> candidates,
                                   const BootstrapConfig& cfg, const EvolutionConfig& evo,
                                   std::uint64_t seed, std::span<const Scenario> suite,
                                   const SimConfig& sim,
                                   std::vector<CandidateScore>* scores = nullptr);

// Member closest to (0.5, 0.5), ties to the lower index.
std::size_t select_balanced(std::span<const Individual> front);
std::size_t select_balanced(std::span<const FitnessVector> front);

struct BootstrapStep {
  Chromosome opponent;
  std::vector<Individual> front;  // final F1 of the run that produced it (empty for step 1)
  std::vector<CandidateScore> candidate_scores;  // step 1 only
};

struct BootstrapResult {
  std::vector<BootstrapStep> steps;  // BO1 .. BOn
  std::size_t chosen = 0;            // index of the returned opponent (BO4 when n_steps >= 4)

  const Chromosome& opponent() const { return steps[chosen].opponent; }
};

/// Step 1 picks the most damaging of n_initial_random random chromosomes;
/// every later step evolves against the current opponent and takes the
/// balanced member of the final front as the next one.
BootstrapResult bootstrap_opponent(const BootstrapConfig& cfg, const EvolutionConfig& evo,
                                   std::uint64_t seed, std::span<const Scenario> suite,
                                   const SimConfig& sim);

struct ProbeResult {
  std::vector<FitnessVector> points;     // every probe, in draw order
  std::vector<std::size_t> front;        // non-dominated subset of points
  std::vector<FitnessVector> front_points() const;
};

// Evaluates n random chromosomes against `opponent`.
ProbeResult probe_front(const Chromosome& opponent, int n, std::uint64_t seed,
                        std::span<const Scenario> suite, const SimConfig& sim);

// Area under the front: points sorted by f1, closed with (0, f2 of the
// leftmost point) and (f1 of the rightmost point, 0), integrated by trapezoids.
double front_area(std::span<const FitnessVector> front);

}  // namespace microevo
