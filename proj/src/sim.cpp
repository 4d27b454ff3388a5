#include "microevo/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace microevo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Repeated subtraction of dt leaves rounding residue; anything below this is
// treated as a ready weapon.
constexpr double kCooldownSnap = 1e-9;

double approach(double value, double goal, double max_step) {
  if (goal > value) return std::min(value + max_step, goal);
  return std::max(value - max_step, goal);
}

double wrap_angle(double a) { return std::remainder(a, kTwoPi); }

}  // namespace

long SimConfig::max_ticks() const {
  return static_cast<long>(std::ceil(max_sim_time / dt - 1e-9));
}

UnitState step_kinematics(UnitState u, const UnitStats& stats, double dt) {
  u.speed = std::clamp(approach(u.speed, u.desired_speed, stats.accel * dt), 0.0, stats.max_speed);

  const double turn = std::clamp(wrap_angle(u.desired_heading - u.heading),
                                 -stats.turn_rate * dt, stats.turn_rate * dt);
  u.heading = wrap_angle(u.heading + turn);

  const double goal_alt = std::clamp(u.desired_altitude, kAltitudeMin, kAltitudeMax);
  u.altitude = std::clamp(approach(u.altitude, goal_alt, stats.climb_rate * dt), kAltitudeMin,
                          kAltitudeMax);

  const Vec3 vel{u.speed * std::cos(u.heading), 0.0, u.speed * std::sin(u.heading)};
  u.pos += vel * dt;
  u.pos.y = u.altitude;
  return u;
}

UnitState advance_weapon(UnitState u, double dt) {
  u.cooldown_remaining = std::max(0.0, u.cooldown_remaining - dt);
  if (u.cooldown_remaining < kCooldownSnap) u.cooldown_remaining = 0.0;
  return u;
}

std::optional<double> resolve_attack(UnitState& attacker, UnitState& target) {
  const UnitStats& st = attacker.stats();
  if (!attacker.alive || !target.alive || attacker.side == target.side ||
      attacker.cooldown_remaining > 0.0 || distance(attacker.pos, target.pos) > st.weapon_range) {
    return std::nullopt;
  }
  double applied = 0.0;
  for (int hit = 0; hit < st.hits_per_attack && target.hit_points > 0.0; ++hit) {
    const double dmg = std::min(st.max_damage, target.hit_points);
    target.hit_points -= dmg;
    applied += dmg;
  }
  if (target.hit_points <= 0.0) {
    target.hit_points = 0.0;
    target.alive = false;
  }
  attacker.cooldown_remaining = st.weapon_cooldown;
  return applied;
}

SimOutcome run_skirmish(const Scenario& scenario, const BehaviorParams& player1,
                        const BehaviorParams& player2, const SimConfig& cfg,
                        const TickObserver& observer) {
  if (!(cfg.dt > 0.0) || !(cfg.max_sim_time > 0.0)) {
    throw std::invalid_argument("SimConfig: dt and max_sim_time must be positive");
  }
  std::vector<UnitState> units;
  units.reserve(scenario.placements.size());
  SimOutcome out;
  for (const auto& p : scenario.placements) {
    units.push_back(make_unit(static_cast<int>(units.size()), p.side, p.type, p.pos));
    out.initial_hp_by[index(p.side)] += stats_for(p.type).hit_points_max;
  }
  const std::array<const BehaviorParams*, kNumSides> controllers{&player1, &player2};

  std::vector<AttackEvent> attacks;
  auto count_alive = [&] {
    out.survivors_by = {0, 0};
    for (const auto& u : units) out.survivors_by[index(u.side)] += u.alive ? 1 : 0;
  };
  auto emit = [&](long tick) {
    if (observer) observer(TickFrame{tick, tick * cfg.dt, units, attacks});
  };

  count_alive();
  emit(0);
  const long max_ticks = cfg.max_ticks();
  std::vector<UnitState> snapshot;
  std::array<std::array<std::optional<Vec2>, kNumUnitTypes>, kNumSides> targets;
  InfluenceTargetFinder finder;

  while (out.survivors_by[0] > 0 && out.survivors_by[1] > 0 && out.ticks_elapsed < max_ticks) {
    snapshot = units;
    attacks.clear();

    for (int s = 0; s < kNumSides; ++s) {
      for (int t = 0; t < kNumUnitTypes; ++t) {
        targets[s][t].reset();
        const bool present = std::any_of(snapshot.begin(), snapshot.end(), [&](const auto& u) {
          return u.alive && index(u.side) == s && index(u.type) == t;
        });
        if (!present) continue;
        const auto& im = controllers[s]->per_type[t].im;
        targets[s][t] = finder.find(snapshot, im, static_cast<Side>(s));
      }
    }

    for (auto& u : units) {
      if (!u.alive) continue;
      const auto cmd = steering(snapshot[u.id], snapshot, *controllers[index(u.side)],
                                targets[index(u.side)][index(u.type)]);
      u.desired_heading = cmd.desired_heading;
      u.desired_speed = cmd.desired_speed;
      u.desired_altitude = cmd.desired_altitude;
      u = advance_weapon(step_kinematics(u, u.stats(), cfg.dt), cfg.dt);
    }

    for (auto& u : units) {
      if (!u.alive || u.cooldown_remaining > 0.0) continue;
      const auto target = select_attack_target(u, units);
      if (!target) continue;
      UnitState& victim = units[*target];
      if (auto dmg = resolve_attack(u, victim)) {
        out.damage_dealt_by[index(u.side)] += *dmg;
        attacks.push_back({u.id, victim.id, *dmg});
      }
    }

    ++out.ticks_elapsed;
    count_alive();
    emit(out.ticks_elapsed);
  }
  out.terminated_by = (out.survivors_by[0] == 0 || out.survivors_by[1] == 0)
                          ? Termination::Annihilation
                          : Termination::Timeout;
  return out;
}

FitnessVector compute_objectives(const SimOutcome& outcome, Side friendly) {
  const int f = index(friendly);
  const int e = index(opponent(friendly));
  if (!(outcome.initial_hp_by[f] > 0.0) || !(outcome.initial_hp_by[e] > 0.0)) {
    throw std::invalid_argument("compute_objectives: a side started with zero hit-points");
  }
  const double dealt = outcome.damage_dealt_by[f] / outcome.initial_hp_by[e];
  const double received = outcome.damage_dealt_by[e] / outcome.initial_hp_by[f];
  return {std::clamp(dealt, 0.0, 1.0), std::clamp(1.0 - received, 0.0, 1.0)};
}

}  // namespace microevo
