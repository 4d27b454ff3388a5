#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "microevo/bootstrap.hpp"

using namespace microevo;

namespace {

Scenario small_scenario() {
  Scenario s;
  s.label = "small";
  s.placements = {{Side::Player1, UnitType::Vulture, {0, 500, 0}},
                  {Side::Player1, UnitType::Zealot, {0, 500, 60}},
                  {Side::Player2, UnitType::Vulture, {300, 500, 0}},
                  {Side::Player2, UnitType::Zealot, {300, 500, 60}}};
  return s;
}

SimConfig short_sim() {
  SimConfig c;
  c.max_sim_time = 8.0;
  return c;
}

BootstrapConfig tiny() {
  BootstrapConfig c;
  c.n_initial_random = 3;
  c.inner_pop = 4;
  c.inner_generations = 2;
  c.n_steps = 2;
  c.n_probe_small = 8;
  c.n_probe_large = 8;
  return c;
}

}  // namespace

TEST_CASE("select_balanced") {
  const std::vector<FitnessVector> pts{{0.0, 1.0}, {0.45, 0.6}, {1.0, 0.0}};
  CHECK(select_balanced(std::span<const FitnessVector>(pts)) == 1);
  const std::vector<FitnessVector> tie{{0.4, 0.5}, {0.6, 0.5}};
  CHECK(select_balanced(std::span<const FitnessVector>(tie)) == 0);
  CHECK_THROWS(select_balanced(std::span<const FitnessVector>()));

  // The chosen point does not depend on the order of the others.
  Rng rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<FitnessVector> f(10);
    for (auto& p : f) p = {uniform01(rng), uniform01(rng)};
    const auto chosen = f[select_balanced(std::span<const FitnessVector>(f))];
    std::reverse(f.begin(), f.end());
    const auto again = f[select_balanced(std::span<const FitnessVector>(f))];
    CHECK(std::hypot(chosen.f1 - 0.5, chosen.f2 - 0.5) ==
          std::hypot(again.f1 - 0.5, again.f2 - 0.5));
  }
}

TEST_CASE("damage_score") {
  std::vector<Individual> front(2);
  front[0].fitness = {0.3, 0.2};
  front[1].fitness = {0.1, 0.6};
  CHECK(damage_score(front) == doctest::Approx(0.6));
  CHECK(damage_score({}) == 0.0);
}

TEST_CASE("most damaging opponent") {
  Rng rng(2);
  std::vector<Chromosome> cands;
  for (int i = 0; i < 3; ++i) cands.push_back(random_chromosome(rng));
  const std::vector<Scenario> suite{small_scenario()};
  std::vector<CandidateScore> scores;
  const auto best = most_damaging_opponent(cands, tiny(), {}, 5, suite, short_sim(), &scores);
  REQUIRE(scores.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(scores[k].candidate == k);
    CHECK(scores[best].damage >= scores[k].damage);
    if (k < best) CHECK(scores[k].damage < scores[best].damage);
  }
  CHECK(most_damaging_opponent(std::span(cands).first(1), tiny(), {}, 5, suite, short_sim()) == 0);
}

TEST_CASE("bootstrap chain") {
  const std::vector<Scenario> suite{small_scenario()};
  auto cfg = tiny();
  cfg.n_steps = 1;
  const auto one = bootstrap_opponent(cfg, {}, 9, suite, short_sim());
  REQUIRE(one.steps.size() == 1);
  CHECK(one.chosen == 0);
  CHECK(one.steps[0].front.empty());
  CHECK(one.steps[0].candidate_scores.size() == 3);

  cfg.n_steps = 2;
  const auto a = bootstrap_opponent(cfg, {}, 9, suite, short_sim());
  const auto b = bootstrap_opponent(cfg, {}, 9, suite, short_sim());
  REQUIRE(a.steps.size() == 2);
  CHECK(a.chosen == 1);
  CHECK(a.steps[0].opponent == one.steps[0].opponent);
  CHECK(a.opponent() == b.opponent());
  const auto& front = a.steps[1].front;
  REQUIRE_FALSE(front.empty());
  CHECK(a.steps[1].opponent == front[select_balanced(std::span<const Individual>(front))].chromosome);
}

TEST_CASE("probe front") {
  Rng rng(3);
  const auto opp = random_chromosome(rng);
  const std::vector<Scenario> suite{small_scenario()};
  const auto one = probe_front(opp, 1, 4, suite, short_sim());
  CHECK(one.points.size() == 1);
  CHECK(one.front == std::vector<std::size_t>{0});

  const auto p = probe_front(opp, 12, 4, suite, short_sim());
  CHECK(p.points[0].f1 == one.points[0].f1);  // same probe stream
  for (std::size_t i = 0; i < p.points.size(); ++i) {
    const bool on = std::count(p.front.begin(), p.front.end(), i) > 0;
    bool dominated = false;
    for (const auto& q : p.points) dominated |= dominates(q, p.points[i]);
    CHECK(on == !dominated);
  }
  CHECK_THROWS(probe_front(opp, 0, 4, suite, short_sim()));
}

TEST_CASE("front_area") {
  CHECK(front_area({}) == 0.0);
  const std::vector<FitnessVector> single{{0.5, 0.5}};
  CHECK(front_area(single) == doctest::Approx(0.25));
  const std::vector<FitnessVector> line{{0.0, 1.0}, {0.5, 0.5}, {1.0, 0.0}};
  CHECK(front_area(line) == doctest::Approx(0.5));
  std::vector<FitnessVector> two{{1.0, 0.2}, {0.2, 1.0}};
  CHECK(front_area(two) == doctest::Approx(0.2 + 0.48));
  std::reverse(two.begin(), two.end());
  CHECK(front_area(two) == doctest::Approx(0.68));
}
