#pragma once

#include <cstdint>
#include "microevo/rng.hpp"
#include <string>
#include <vector>

#include "microevo/types.hpp"

namespace microevo {

struct Placement {
  Side side;
  UnitType type;
  Vec3 pos;
  bool operator==(const Placement&) const = default;
};

struct Scenario {
  std::vector<Placement> placements;
  std::string label;

  int count(Side side) const;
  int count(Side side, UnitType type) const;
  bool operator==(const Scenario&) const = default;
};

enum class SpawnShape { Clump, Cloud };

struct UnitGroup {
  UnitType type;
  int count;
  Side side;
};

struct SpawnSpec {
  SpawnShape shape = SpawnShape::Clump;
  Vec3 center;
  double radius = 400.0;
  double shell_thickness = 10.0;  // cloud only: half-width of the shell
  std::vector<UnitGroup> units;
};

inline constexpr double kSpawnRadius = 400.0;
inline constexpr double kCloudShell = 10.0;
inline constexpr double kCubeHalfWidth = 250.0;
inline constexpr double kClumpSeparation = 1200.0;
inline constexpr double kCenterAltitude = 500.0;

// Uniform in the ball of spec.radius about spec.center. Altitudes clamped.
std::vector<Placement> gen_clump(const SpawnSpec& spec, Rng& rng);
// Uniform over the shell radius +- shell_thickness about spec.center.
std::vector<Placement> gen_cloud(const SpawnSpec& spec, Rng& rng);
// Uniform in the axis-aligned cube of the given half-width.
std::vector<Placement> gen_cube(const Vec3& center, double half_width,
                                const std::vector<UnitGroup>& units,
                                Rng& rng);

/// The five training maps, each with 5 Vultures and 5 Zealots per side:
///   (a) clump vs clump, centers 1200 apart;
///   (b) player1 clump inside a player2 cloud;
///   (c) mirror of (b);
///   (d) player1 cube at the origin, player2 cube at (650, 500, 0);
///   (e) (d) with the sides swapped.
std::vector<Scenario> training_suite(Rng& rng);

/// Robustness maps: per scenario n_v, n_z ~ U{5..10}, identical on both
/// sides, two clumps 1200 apart around a random center and bearing.
std::vector<Scenario> random_test_scenarios(int count, Rng& rng);

// Swaps player1 and player2 in every placement.
Scenario swap_sides(const Scenario& s);

}  // namespace microevo
