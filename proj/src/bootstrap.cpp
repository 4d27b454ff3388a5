#include "microevo/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace microevo {

namespace {

constexpr std::uint64_t kCandidateStream = 100;
constexpr std::uint64_t kInnerRunStream = 101;
constexpr std::uint64_t kStepStream = 102;
constexpr std::uint64_t kProbeStream = 200;

EvolutionConfig inner_config(const BootstrapConfig& cfg, EvolutionConfig evo) {
  evo.pop_size = cfg.inner_pop;
  evo.generations = cfg.inner_generations;
  evo.n_runs = 1;
  return evo;
}

}  // namespace

void BootstrapConfig::validate() const {
  if (n_initial_random < 1 || inner_pop < 2 || inner_pop % 2 != 0 || inner_generations < 0 ||
      n_steps < 1 || n_probe_small < 1 || n_probe_large < 1) {
    throw std::invalid_argument(
        "bootstrap: counts must be positive and inner_pop even");
  }
}

double damage_score(std::span<const Individual> front) {
  if (front.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& i : front) sum += 1.0 - i.fitness.f2;
  return sum / static_cast<double>(front.size());
}

std::size_t most_damaging_opponent(std::span<const Chromosome> candidates,
                                   const BootstrapConfig& cfg, const EvolutionConfig& evo,
                                   std::uint64_t seed, std::span<const Scenario> suite,
                                   const SimConfig& sim, std::vector<CandidateScore>* scores) {
  if (candidates.empty()) throw std::invalid_argument("most_damaging_opponent: no candidates");
  const EvolutionConfig inner = inner_config(cfg, evo);
  std::size_t best = 0;
  double best_damage = -1.0;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    const auto run = evolve(inner, derive_seed({seed, kInnerRunStream, k}), candidates[k], suite, sim);
    const double damage = damage_score(run.archive.back().front);
    if (scores) scores->push_back({k, damage});
    if (damage > best_damage) {
      best_damage = damage;
      best = k;
    }
  }
  return best;
}

std::size_t select_balanced(std::span<const FitnessVector> front) {
  if (front.empty()) throw std::invalid_argument("select_balanced: empty front");
  std::size_t best = 0;
  double best_d = std::hypot(front[0].f1 - 0.5, front[0].f2 - 0.5);
  for (std::size_t i = 1; i < front.size(); ++i) {
    const double d = std::hypot(front[i].f1 - 0.5, front[i].f2 - 0.5);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

std::size_t select_balanced(std::span<const Individual> front) {
  std::vector<FitnessVector> points;
  points.reserve(front.size());
  for (const auto& i : front) points.push_back(i.fitness);
  return select_balanced(std::span<const FitnessVector>(points));
}

BootstrapResult bootstrap_opponent(const BootstrapConfig& cfg, const EvolutionConfig& evo,
                                   std::uint64_t seed, std::span<const Scenario> suite,
                                   const SimConfig& sim) {
  cfg.validate();
  std::vector<Chromosome> candidates;
  for (int i = 0; i < cfg.n_initial_random; ++i) {
    Rng rng(derive_seed({seed, kCandidateStream, static_cast<std::uint64_t>(i)}));
    candidates.push_back(random_chromosome(rng));
  }
  BootstrapResult result;
  BootstrapStep first;
  const std::size_t pick = most_damaging_opponent(candidates, cfg, evo, seed, suite, sim,
                                                  &first.candidate_scores);
  first.opponent = candidates[pick];
  result.steps.push_back(std::move(first));

  const EvolutionConfig inner = inner_config(cfg, evo);
  for (int step = 1; step < cfg.n_steps; ++step) {
    const auto run = evolve(inner, derive_seed({seed, kStepStream, static_cast<std::uint64_t>(step)}),
                            result.steps.back().opponent, suite, sim);
    BootstrapStep next;
    next.front = run.archive.back().front;
    next.opponent = next.front[select_balanced(std::span<const Individual>(next.front))].chromosome;
    result.steps.push_back(std::move(next));
  }
  result.chosen = std::min<std::size_t>(3, result.steps.size() - 1);
  return result;
}

std::vector<FitnessVector> ProbeResult::front_points() const {
  std::vector<FitnessVector> out;
  out.reserve(front.size());
  for (std::size_t i : front) out.push_back(points[i]);
  return out;
}

ProbeResult probe_front(const Chromosome& opponent, int n, std::uint64_t seed,
                        std::span<const Scenario> suite, const SimConfig& sim) {
  if (n < 1) throw std::invalid_argument("probe_front: n must be >= 1");
  std::vector<Chromosome> probes;
  probes.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Rng rng(derive_seed({seed, kProbeStream, static_cast<std::uint64_t>(i)}));
    probes.push_back(random_chromosome(rng));
  }
  ProbeResult out;
  out.points = evaluate_batch(probes, opponent, suite, sim);
  out.front = nondominated_indices(out.points);
  return out;
}

double front_area(std::span<const FitnessVector> front) {
  if (front.empty()) return 0.0;
  std::vector<FitnessVector> pts(front.begin(), front.end());
  std::sort(pts.begin(), pts.end(), [](const FitnessVector& a, const FitnessVector& b) {
    return a.f1 != b.f1 ? a.f1 < b.f1 : a.f2 > b.f2;
  });
  double area = 0.0;
  FitnessVector prev{0.0, pts.front().f2};
  pts.push_back({pts.back().f1, 0.0});
  for (const auto& p : pts) {
    area += 0.5 * (p.f1 - prev.f1) * (p.f2 + prev.f2);
    prev = p;
  }
  return area;
}

}  // namespace microevo
