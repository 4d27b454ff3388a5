#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "microevo/behavior.hpp"
#include "microevo/scenario.hpp"

namespace microevo {

struct SimConfig {
  double dt = 0.05;
  double max_sim_time = 60.0;

  long max_ticks() const;
};

enum class Termination { Annihilation, Timeout };

struct SimOutcome {
  std::array<double, kNumSides> damage_dealt_by{};
  std::array<double, kNumSides> initial_hp_by{};
  std::array<int, kNumSides> survivors_by{};
  long ticks_elapsed = 0;
  Termination terminated_by = Termination::Timeout;

  bool operator==(const SimOutcome&) const = default;
};

struct AttackEvent {
  int attacker_id;
  int target_id;
  double damage;  // HP actually removed
};

// Post-tick view handed to observers. Tick 0 is the initial placement.
struct TickFrame {
  long tick;
  double time;
  std::span<const UnitState> units;
  std::span<const AttackEvent> attacks;
};

using TickObserver = std::function<void(const TickFrame&)>;

// Moves speed, heading and altitude toward their setpoints by at most one
// step of their rate limits, then integrates position.
UnitState step_kinematics(UnitState u, const UnitStats& stats, double dt);

UnitState advance_weapon(UnitState u, double dt);

// Fires one attack event. Returns the HP removed, or nullopt (and leaves both
// units untouched) when the attacker cannot fire at this target.
std::optional<double> resolve_attack(UnitState& attacker, UnitState& target);

/// Fixed-step skirmish. Each tick rebuilds influence maps and steering from a
/// snapshot, then commits kinematics, cools weapons and resolves attacks in
/// unit-id order. Ends on annihilation of either side or at max_ticks().
/// Deterministic: the outcome depends only on the arguments.
SimOutcome run_skirmish(const Scenario& scenario, const BehaviorParams& player1,
                        const BehaviorParams& player2, const SimConfig& cfg,
                        const TickObserver& observer = {});

// Throws std::invalid_argument if either side started with zero HP.
FitnessVector compute_objectives(const SimOutcome& outcome, Side friendly);

}  // namespace microevo
