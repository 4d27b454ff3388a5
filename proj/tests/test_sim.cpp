#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>

#include "microevo/genome.hpp"
#include "microevo/sim.hpp"

using namespace microevo;

namespace {

const UnitStats& vulture = stats_for(UnitType::Vulture);
const UnitStats& zealot = stats_for(UnitType::Zealot);

UnitState at_rest(UnitType type) {
  UnitState u = make_unit(0, Side::Player1, type, {0.0, 500.0, 0.0});
  return u;
}

Scenario duel(UnitType a, UnitType b, double gap) {
  return {{{Side::Player1, a, {0.0, 500.0, 0.0}}, {Side::Player2, b, {gap, 500.0, 0.0}}}, "duel"};
}

// All-zero fields: every unit stays put.
const BehaviorParams stationary{};

BehaviorParams pure_attraction() {
  BehaviorParams p;
  for (auto t : {UnitType::Vulture, UnitType::Zealot}) {
    for (auto o : {UnitType::Vulture, UnitType::Zealot}) {
      p[t].field(Relation::Enemy, o, FieldVariable::Distance, Polarity::Attract) = {10.0, 0.0};
    }
  }
  return p;
}

BehaviorParams fleeing() {
  BehaviorParams p;
  for (auto t : {UnitType::Vulture, UnitType::Zealot}) {
    for (auto o : {UnitType::Vulture, UnitType::Zealot}) {
      p[t].field(Relation::Enemy, o, FieldVariable::Distance, Polarity::Repel) = {-100.0, 0.0};
    }
  }
  return p;
}

}  // namespace

TEST_CASE("step_kinematics: accelerates by at most accel * dt") {
  UnitState u = at_rest(UnitType::Vulture);
  u.desired_speed = 64.0;
  const UnitState v = step_kinematics(u, vulture, 0.05);
  CHECK(v.speed == doctest::Approx(3.2).epsilon(1e-12));
  CHECK(v.pos.x == doctest::Approx(3.2 * 0.05));
}

TEST_CASE("step_kinematics: at setpoints only the position moves") {
  UnitState u = at_rest(UnitType::Zealot);
  u.speed = u.desired_speed = 20.0;
  u.heading = u.desired_heading = 0.7;
  const UnitState v = step_kinematics(u, zealot, 0.05);
  CHECK(v.speed == 20.0);
  CHECK(v.heading == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(v.altitude == u.altitude);
  CHECK(v.pos.x == doctest::Approx(u.pos.x + 20.0 * std::cos(0.7) * 0.05));
  CHECK(v.pos.z == doctest::Approx(u.pos.z + 20.0 * std::sin(0.7) * 0.05));
  CHECK(v.pos.y == v.altitude);
}

TEST_CASE("step_kinematics: climbs at the climb rate of 2") {
  UnitState u = make_unit(0, Side::Player1, UnitType::Vulture, {0.0, 0.0, 0.0});
  u.desired_altitude = 1000.0;
  const UnitState v = step_kinematics(u, vulture, 0.05);
  CHECK(v.altitude == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(v.pos.y == v.altitude);
}

TEST_CASE("step_kinematics: turns along the shorter arc, clamps speed and altitude") {
  UnitState u = at_rest(UnitType::Vulture);
  u.heading = 3.0;
  u.desired_heading = -3.0;  // 0.28 rad away through +-pi
  const UnitState v = step_kinematics(u, vulture, 0.05);
  const double step = vulture.turn_rate * 0.05;
  CHECK(std::remainder(v.heading - (3.0 + step), 2 * std::numbers::pi) == doctest::Approx(0.0));

  u.desired_speed = 1e6;
  u.speed = 63.0;
  CHECK(step_kinematics(u, vulture, 0.05).speed == 64.0);
  u.desired_speed = -5.0;
  u.speed = 1.0;
  CHECK(step_kinematics(u, vulture, 0.05).speed == 0.0);

  u.altitude = u.pos.y = 999.95;
  u.desired_altitude = 5000.0;
  CHECK(step_kinematics(u, vulture, 0.05).altitude == 1000.0);
}

TEST_CASE("advance_weapon floors at zero") {
  UnitState u = at_rest(UnitType::Vulture);
  u.cooldown_remaining = 1.1;
  CHECK(advance_weapon(u, 0.05).cooldown_remaining == doctest::Approx(1.05));
  u.cooldown_remaining = 0.0;
  CHECK(advance_weapon(u, 0.05).cooldown_remaining == 0.0);
  u.cooldown_remaining = 0.03;
  CHECK(advance_weapon(u, 0.05).cooldown_remaining == 0.0);
}

TEST_CASE("resolve_attack applies table damage and cooldown") {
  UnitState v = make_unit(0, Side::Player1, UnitType::Vulture, {0, 500, 0});
  UnitState z = make_unit(1, Side::Player2, UnitType::Zealot, {100, 500, 0});

  SUBCASE("vulture hits zealot") {
    auto dmg = resolve_attack(v, z);
    REQUIRE(dmg);
    CHECK(*dmg == 20.0);
    CHECK(z.hit_points == 140.0);
    CHECK(v.cooldown_remaining == 1.1);
  }
  SUBCASE("zealot hits vulture twice for 16") {
    auto dmg = resolve_attack(z, v);
    REQUIRE(dmg);
    CHECK(*dmg == 32.0);
    CHECK(v.hit_points == 48.0);
    CHECK(z.cooldown_remaining == 1.24);
  }
  SUBCASE("overkill is not credited") {
    v.hit_points = 10.0;
    auto dmg = resolve_attack(z, v);
    REQUIRE(dmg);
    CHECK(*dmg == 10.0);
    CHECK(v.hit_points == 0.0);
    CHECK_FALSE(v.alive);
  }
  SUBCASE("preconditions") {
    v.cooldown_remaining = 0.5;
    CHECK_FALSE(resolve_attack(v, z));
    CHECK(z.hit_points == 160.0);
    v.cooldown_remaining = 0.0;
    z.pos = {300, 500, 0};
    CHECK_FALSE(resolve_attack(v, z));
    z.pos = {256, 500, 0};
    CHECK(resolve_attack(v, z));  // range is inclusive
    UnitState ally = make_unit(2, Side::Player1, UnitType::Zealot, {10, 500, 0});
    v.cooldown_remaining = 0.0;
    CHECK_FALSE(resolve_attack(v, ally));
  }
}

TEST_CASE("run_skirmish: an empty side ends immediately") {
  Scenario s{{{Side::Player1, UnitType::Vulture, {0, 500, 0}}}, "lonely"};
  const auto out = run_skirmish(s, stationary, stationary, SimConfig{});
  CHECK(out.terminated_by == Termination::Annihilation);
  CHECK(out.ticks_elapsed == 0);
  CHECK(out.damage_dealt_by[0] == 0.0);
  CHECK(out.damage_dealt_by[1] == 0.0);
  CHECK_THROWS_AS(compute_objectives(out, Side::Player1), std::invalid_argument);
}

TEST_CASE("run_skirmish: fleeing both ways times out with little damage") {
  Rng rng(5);
  const auto suite = training_suite(rng);
  const auto out = run_skirmish(suite[0], fleeing(), fleeing(), SimConfig{});
  CHECK(out.terminated_by == Termination::Timeout);
  CHECK(out.ticks_elapsed == SimConfig{}.max_ticks());
  const auto f = compute_objectives(out, Side::Player1);
  CHECK(f.f1 < 0.05);
  CHECK(f.f2 > 0.95);
}

TEST_CASE("run_skirmish: mirrored vulture duel is symmetric within one attack") {
  const auto out = run_skirmish(duel(UnitType::Vulture, UnitType::Vulture, 200.0),
                                pure_attraction(), pure_attraction(), SimConfig{});
  CHECK(std::abs(out.damage_dealt_by[0] - out.damage_dealt_by[1]) <= vulture.damage_per_attack());
}

TEST_CASE("run_skirmish: invariants over a random battle") {
  Rng rng(21);
  const auto suite = training_suite(rng);
  const auto a = decode(random_chromosome(rng));
  const auto b = decode(random_chromosome(rng));
  const SimConfig cfg;
  for (const auto& scenario : suite) {
    std::vector<UnitState> prev;
    std::vector<double> initial_hp;
    for (const auto& p : scenario.placements) initial_hp.push_back(stats_for(p.type).hit_points_max);
    long frames = 0;
    bool ok = true;
    const auto out = run_skirmish(scenario, a, b, cfg, [&](const TickFrame& f) {
      ++frames;
      for (const auto& u : f.units) {
        const auto& st = u.stats();
        ok = ok && u.speed >= 0.0 && u.speed <= st.max_speed;
        ok = ok && u.altitude >= 0.0 && u.altitude <= 1000.0 && u.pos.y == u.altitude;
        ok = ok && u.hit_points >= 0.0 && u.hit_points <= st.hit_points_max;
        ok = ok && (u.alive == (u.hit_points > 0.0));
        if (!prev.empty()) {
          ok = ok && std::abs(u.speed - prev[u.id].speed) <= st.accel * cfg.dt + 1e-9;
          ok = ok && u.hit_points <= prev[u.id].hit_points;
        }
      }
      prev.assign(f.units.begin(), f.units.end());
    });
    CHECK(ok);
    CHECK(out.ticks_elapsed <= cfg.max_ticks());
    CHECK(frames == out.ticks_elapsed + 1);

    std::array<double, 2> lost{};
    for (const auto& u : prev) lost[index(u.side)] += initial_hp[u.id] - u.hit_points;
    CHECK(out.damage_dealt_by[0] == doctest::Approx(lost[1]));
    CHECK(out.damage_dealt_by[1] == doctest::Approx(lost[0]));

    const auto f = compute_objectives(out, Side::Player1);
    CHECK(f.f1 >= 0.0);
    CHECK(f.f1 <= 1.0);
    CHECK(f.f2 >= 0.0);
    CHECK(f.f2 <= 1.0);

    CHECK(run_skirmish(scenario, a, b, cfg) == out);
  }
}

TEST_CASE("compute_objectives corner points") {
  SimOutcome out;
  out.initial_hp_by = {1200.0, 1200.0};
  out.damage_dealt_by = {1200.0, 0.0};
  CHECK(compute_objectives(out, Side::Player1) == FitnessVector{1.0, 1.0});
  out.damage_dealt_by = {0.0, 0.0};
  CHECK(compute_objectives(out, Side::Player1) == FitnessVector{0.0, 1.0});
  out.damage_dealt_by = {0.0, 1200.0};
  CHECK(compute_objectives(out, Side::Player1) == FitnessVector{0.0, 0.0});
  CHECK(compute_objectives(out, Side::Player2) == FitnessVector{1.0, 1.0});
}
