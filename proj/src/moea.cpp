#include "microevo/moea.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace microevo {

void EvolutionConfig::validate() const {
  if (pop_size < 2 || pop_size % 2 != 0) {
    throw std::invalid_argument("evolution: pop_size must be even and >= 2");
  }
  if (generations < 0) throw std::invalid_argument("evolution: generations must be >= 0");
  if (n_runs < 1) throw std::invalid_argument("evolution: n_runs must be >= 1");
  if (!(p_crossover >= 0.0 && p_crossover <= 1.0) || !(p_mutation >= 0.0 && p_mutation <= 1.0)) {
    throw std::invalid_argument("evolution: probabilities must lie in [0, 1]");
  }
  if (!(eta_c >= 0.0) || !(eta_m >= 0.0)) {
    throw std::invalid_argument("evolution: distribution indexes must be >= 0");
  }
}

bool dominates(const FitnessVector& a, const FitnessVector& b) {
  return a.f1 >= b.f1 && a.f2 >= b.f2 && (a.f1 > b.f1 || a.f2 > b.f2);
}

std::vector<Front> fast_nondominated_sort(std::span<const FitnessVector> points) {
  const std::size_t n = points.size();
  std::vector<std::vector<std::size_t>> dominated(n);
  std::vector<int> dominators(n, 0);
  std::vector<Front> fronts;
  Front current;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      if (dominates(points[p], points[q])) {
        dominated[p].push_back(q);
        ++dominators[q];
      } else if (dominates(points[q], points[p])) {
        dominated[q].push_back(p);
        ++dominators[p];
      }
    }
  }
  for (std::size_t p = 0; p < n; ++p) {
    if (dominators[p] == 0) current.push_back(p);
  }
  while (!current.empty()) {
    Front next;
    for (std::size_t p : current) {
      for (std::size_t q : dominated[p]) {
        if (--dominators[q] == 0) next.push_back(q);
      }
    }
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(current));
    current = std::move(next);
  }
  return fronts;
}

std::vector<Front> fast_nondominated_sort(std::span<Individual> pop) {
  std::vector<FitnessVector> points(pop.size());
  std::transform(pop.begin(), pop.end(), points.begin(), [](const Individual& i) { return i.fitness; });
  auto fronts = fast_nondominated_sort(points);
  for (std::size_t f = 0; f < fronts.size(); ++f) {
    for (std::size_t i : fronts[f]) pop[i].rank = static_cast<int>(f) + 1;
  }
  return fronts;
}

void crowding_distance(std::span<Individual> pop, const Front& front) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  for (std::size_t i : front) pop[i].crowding = 0.0;
  if (front.size() <= 2) {
    for (std::size_t i : front) pop[i].crowding = inf;
    return;
  }
  Front order = front;
  for (double FitnessVector::*objective : {&FitnessVector::f1, &FitnessVector::f2}) {
    auto value = [&](std::size_t i) { return pop[i].fitness.*objective; };
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return value(a) < value(b); });
    pop[order.front()].crowding = inf;
    pop[order.back()].crowding = inf;
    const double span = value(order.back()) - value(order.front());
    if (span <= 0.0) continue;
    for (std::size_t k = 1; k + 1 < order.size(); ++k) {
      pop[order[k]].crowding += (value(order[k + 1]) - value(order[k - 1])) / span;
    }
  }
}

std::vector<std::size_t> nondominated_indices(std::span<const FitnessVector> points) {
  if (points.empty()) return {};
  auto fronts = fast_nondominated_sort(points);
  std::sort(fronts[0].begin(), fronts[0].end());
  return fronts[0];
}

std::pair<double, double> sbx_genes(double p1, double p2, double eta_c, Rng& rng) {
  const double u = uniform01(rng);
  const double beta = u <= 0.5 ? std::pow(2.0 * u, 1.0 / (eta_c + 1.0))
                               : std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (eta_c + 1.0));
  const double mean = 0.5 * (p1 + p2);
  const double half_spread = 0.5 * beta * (p2 - p1);
  return {mean - half_spread, mean + half_spread};
}

std::pair<Chromosome, Chromosome> sbx_crossover(const Chromosome& p1, const Chromosome& p2,
                                                double eta_c, double p_crossover, Rng& rng) {
  if (p1.genes.size() != p2.genes.size()) {
    throw std::invalid_argument("sbx_crossover: parents differ in length");
  }
  std::pair<Chromosome, Chromosome> kids{p1, p2};
  if (uniform01(rng) >= p_crossover) return kids;
  for (std::size_t i = 0; i < p1.genes.size(); ++i) {
    auto [a, b] = sbx_genes(p1.genes[i], p2.genes[i], eta_c, rng);
    kids.first.genes[i] = std::clamp(a, 0.0, 1.0);
    kids.second.genes[i] = std::clamp(b, 0.0, 1.0);
  }
  return kids;
}

Chromosome polynomial_mutation(Chromosome c, double eta_m, double p_mutation, Rng& rng) {
  const double power = 1.0 / (eta_m + 1.0);
  for (auto& g : c.genes) {
    if (uniform01(rng) >= p_mutation) continue;
    const double u = uniform01(rng);
    const double delta = u < 0.5 ? std::pow(2.0 * u, power) - 1.0
                                 : 1.0 - std::pow(2.0 * (1.0 - u), power);
    g = std::clamp(g + delta, 0.0, 1.0);
  }
  return c;
}

const Individual& binary_tournament(std::span<const Individual> pop, Rng& rng) {
  const int last = static_cast<int>(pop.size()) - 1;
  const Individual& a = pop[uniform_int(rng, 0, last)];
  const Individual& b = pop[uniform_int(rng, 0, last)];
  if (a.rank != b.rank) return a.rank < b.rank ? a : b;
  if (b.crowding > a.crowding) return b;
  return a;
}

FitnessVector evaluate(const Chromosome& ch, const Chromosome& opponent,
                       std::span<const Scenario> suite, const SimConfig& cfg) {
  if (suite.empty()) throw std::invalid_argument("evaluate: empty scenario suite");
  try {
    const BehaviorParams own = decode(ch);
    const BehaviorParams opp = decode(opponent);
    FitnessVector sum;
    for (const auto& s : suite) {
      const auto f = compute_objectives(run_skirmish(s, own, opp, cfg), Side::Player1);
      sum.f1 += f.f1;
      sum.f2 += f.f2;
    }
    const double n = static_cast<double>(suite.size());
    return {sum.f1 / n, sum.f2 / n};
  } catch (const std::exception&) {
    return {0.0, 0.0};
  }
}

std::vector<FitnessVector> evaluate_batch_serial(std::span<const Chromosome> batch,
                                                 const Chromosome& opponent,
                                                 std::span<const Scenario> suite,
                                                 const SimConfig& cfg) {
  std::vector<FitnessVector> out(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) out[i] = evaluate(batch[i], opponent, suite, cfg);
  return out;
}

std::vector<FitnessVector> evaluate_batch(std::span<const Chromosome> batch,
                                          const Chromosome& opponent,
                                          std::span<const Scenario> suite,
                                          const SimConfig& cfg) {
  std::vector<FitnessVector> out(batch.size());
  const auto n = static_cast<long>(batch.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) out[i] = evaluate(batch[i], opponent, suite, cfg);
  return out;
}

namespace {

constexpr std::uint64_t kInitStream = 0;
constexpr std::uint64_t kVariationStream = 1;

void rank_and_crowd(std::vector<Individual>& pop) {
  for (const auto& front : fast_nondominated_sort(pop)) crowding_distance(pop, front);
}

std::vector<Individual> first_front(const std::vector<Individual>& pop) {
  std::vector<Individual> out;
  for (const auto& i : pop) {
    if (i.rank == 1) out.push_back(i);
  }
  return out;
}

void assign_fitness(std::vector<Individual>& pop, const Chromosome& opponent,
                    std::span<const Scenario> suite, const SimConfig& sim) {
  std::vector<Chromosome> batch;
  batch.reserve(pop.size());
  for (const auto& i : pop) batch.push_back(i.chromosome);
  const auto fitness = evaluate_batch(batch, opponent, suite, sim);
  for (std::size_t i = 0; i < pop.size(); ++i) pop[i].fitness = fitness[i];
}

}  // namespace

std::vector<std::size_t> select_survivors(std::span<Individual> merged, std::size_t target) {
  std::vector<std::size_t> keep;
  for (const auto& front : fast_nondominated_sort(merged)) {
    crowding_distance(merged, front);
    if (keep.size() + front.size() <= target) {
      keep.insert(keep.end(), front.begin(), front.end());
      continue;
    }
    Front by_crowding = front;
    std::stable_sort(by_crowding.begin(), by_crowding.end(), [&](std::size_t a, std::size_t b) {
      return merged[a].crowding > merged[b].crowding;
    });
    by_crowding.resize(target - keep.size());
    keep.insert(keep.end(), by_crowding.begin(), by_crowding.end());
    break;
  }
  return keep;
}

EvolutionResult evolve(const EvolutionConfig& cfg, std::uint64_t seed, const Chromosome& opponent,
                       std::span<const Scenario> suite, const SimConfig& sim) {
  cfg.validate();
  const auto pop_size = static_cast<std::size_t>(cfg.pop_size);
  EvolutionResult result;
  auto& pop = result.population;
  pop.resize(pop_size);
  for (std::size_t i = 0; i < pop_size; ++i) {
    Rng rng(derive_seed({seed, kInitStream, 1, i}));
    pop[i].chromosome = random_chromosome(rng);
  }
  assign_fitness(pop, opponent, suite, sim);
  rank_and_crowd(pop);
  result.archive.push_back({1, first_front(pop)});

  for (int gen = 2; gen <= cfg.generations; ++gen) {
    Rng rng(derive_seed({seed, kVariationStream, static_cast<std::uint64_t>(gen)}));
    std::vector<Individual> merged = pop;
    merged.reserve(2 * pop_size);
    while (merged.size() < 2 * pop_size) {
      const Individual& a = binary_tournament(pop, rng);
      const Individual& b = binary_tournament(pop, rng);
      auto [c1, c2] = sbx_crossover(a.chromosome, b.chromosome, cfg.eta_c, cfg.p_crossover, rng);
      merged.push_back({polynomial_mutation(std::move(c1), cfg.eta_m, cfg.p_mutation, rng), {}});
      merged.push_back({polynomial_mutation(std::move(c2), cfg.eta_m, cfg.p_mutation, rng), {}});
    }
    std::vector<Individual> offspring(merged.begin() + static_cast<long>(pop_size), merged.end());
    assign_fitness(offspring, opponent, suite, sim);
    std::move(offspring.begin(), offspring.end(), merged.begin() + static_cast<long>(pop_size));

    std::vector<Individual> next;
    next.reserve(pop_size);
    for (std::size_t i : select_survivors(merged, pop_size)) next.push_back(std::move(merged[i]));
    pop = std::move(next);
    rank_and_crowd(pop);
    result.archive.push_back({gen, first_front(pop)});
  }
  return result;
}

}  // namespace microevo
