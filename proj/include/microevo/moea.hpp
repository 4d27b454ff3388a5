#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "microevo/genome.hpp"
#include "microevo/rng.hpp"
#include "microevo/scenario.hpp"
#include "microevo/sim.hpp"

namespace microevo {

struct Individual {
  Chromosome chromosome;
  FitnessVector fitness;
  int rank = 0;  // 1 = first front; 0 until sorted
  double crowding = 0.0;
};

struct EvolutionConfig {
  int pop_size = 50;
  int generations = 75;
  double p_crossover = 0.9;
  double p_mutation = 0.05;  // per gene
  double eta_c = 20.0;
  double eta_m = 20.0;
  int n_runs = 10;
  std::uint64_t master_seed = 1;

  // Throws std::invalid_argument when out of range (odd pop_size etc).
  void validate() const;
};

// Maximization: a >= b everywhere and a > b somewhere.
bool dominates(const FitnessVector& a, const FitnessVector& b);

using Front = std::vector<std::size_t>;

// Deb's fast non-dominated sort. Returns fronts as indices into `pop` and
// writes each member's rank.
std::vector<Front> fast_nondominated_sort(std::span<Individual> pop);
std::vector<Front> fast_nondominated_sort(std::span<const FitnessVector> points);

// Writes crowding distance for the members of one front.
void crowding_distance(std::span<Individual> pop, const Front& front);

// Indices of the non-dominated points, in input order.
std::vector<std::size_t> nondominated_indices(std::span<const FitnessVector> points);

// Both SBX children before clamping; beta drawn per gene.
std::pair<double, double> sbx_genes(double p1, double p2, double eta_c, Rng& rng);

std::pair<Chromosome, Chromosome> sbx_crossover(const Chromosome& p1, const Chromosome& p2,
                                                double eta_c, double p_crossover, Rng& rng);

Chromosome polynomial_mutation(Chromosome c, double eta_m, double p_mutation, Rng& rng);

// Crowded-comparison binary tournament, drawing two with replacement.
const Individual& binary_tournament(std::span<const Individual> pop, Rng& rng);

/// Mean fitness of `ch` (player1) against `opponent` (player2) over `suite`.
/// A failing simulation makes the whole evaluation (0, 0).
FitnessVector evaluate(const Chromosome& ch, const Chromosome& opponent,
                       std::span<const Scenario> suite, const SimConfig& cfg);

// Batch evaluation of many chromosomes against one opponent. The parallel
// version splits the batch over OpenMP threads; the serial one is the
// reference it is tested against.
std::vector<FitnessVector> evaluate_batch(std::span<const Chromosome> batch,
                                          const Chromosome& opponent,
                                          std::span<const Scenario> suite,
                                          const SimConfig& cfg);
std::vector<FitnessVector> evaluate_batch_serial(std::span<const Chromosome> batch,
                                                 const Chromosome& opponent,
                                                 std::span<const Scenario> suite,
                                                 const SimConfig& cfg);

struct GenerationRecord {
  int generation;  // 1 = evaluated initial population
  std::vector<Individual> front;  // F1 of the surviving population
};

struct EvolutionResult {
  std::vector<Individual> population;
  std::vector<GenerationRecord> archive;
};

/// NSGA-II (mu + lambda, mu = lambda = pop_size). Randomness comes from
/// streams derived from (seed, generation, slot), so the result does not
/// depend on the worker count. `generations` counts evaluated populations
/// including the initial one (pop 50 x 75 generations = 3750 evaluations),
/// so there are max(generations - 1, 0) variation rounds and one archive
/// entry per evaluated population.
EvolutionResult evolve(const EvolutionConfig& cfg, std::uint64_t seed,
                       const Chromosome& opponent, std::span<const Scenario> suite,
                       const SimConfig& sim);

// Stable elitist truncation of a sorted union to `target` survivors.
std::vector<std::size_t> select_survivors(std::span<Individual> merged, std::size_t target);

}  // namespace microevo
