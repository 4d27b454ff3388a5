#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "microevo/types.hpp"

namespace microevo {

struct UnitState {
  int id = 0;
  Side side = Side::Player1;
  UnitType type = UnitType::Vulture;
  Vec3 pos;
  double heading = 0.0;   // rad, in the xz plane: velocity (cos h, 0, sin h)
  double altitude = 0.0;  // mirrors pos.y
  double speed = 0.0;
  double desired_heading = 0.0;
  double desired_altitude = 0.0;
  double desired_speed = 0.0;
  double hit_points = 0.0;
  double cooldown_remaining = 0.0;
  bool alive = true;

  const UnitStats& stats() const { return stats_for(type); }
};

// Fresh unit at full health with its setpoints equal to the current state.
UnitState make_unit(int id, Side side, UnitType type, const Vec3& pos);

enum class Relation : std::uint8_t { Enemy = 0, Friend = 1 };
enum class FieldVariable : std::uint8_t { Distance = 0, Health = 1, Cooldown = 2 };
enum class Polarity : std::uint8_t { Attract = 0, Repel = 1 };

inline constexpr int kNumRelations = 2;
inline constexpr int kNumVariables = 3;
inline constexpr int kNumPolarities = 2;

// c * x^e. A positive result pulls the unit toward the source.
struct PotentialField {
  double c = 0.0;
  double e = 0.0;
  bool operator==(const PotentialField&) const = default;
};

inline constexpr double kFieldEpsilon = 1.0;

double pf_magnitude(const PotentialField& field, double x);

struct InfluenceMapParams {
  double w_hp = 0.0;
  double w_cd = 0.0;
  double w_base = 0.0;
  double decay = 1.0;  // per Chebyshev cell step, in (0, 1]
  int range = 0;       // cells
  bool operator==(const InfluenceMapParams&) const = default;
};

// Fields one unit type applies, indexed [relation][other type][variable][polarity].
struct TypeBehavior {
  using FieldsByPolarity = std::array<PotentialField, kNumPolarities>;
  using FieldsByVariable = std::array<FieldsByPolarity, kNumVariables>;
  using FieldsByType = std::array<FieldsByVariable, kNumUnitTypes>;

  std::array<FieldsByType, kNumRelations> fields{};
  PotentialField target;
  InfluenceMapParams im;

  PotentialField& field(Relation r, UnitType other, FieldVariable v, Polarity p) {
    return fields[static_cast<int>(r)][index(other)][static_cast<int>(v)]
                 [static_cast<int>(p)];
  }
  const PotentialField& field(Relation r, UnitType other, FieldVariable v,
                              Polarity p) const {
    return fields[static_cast<int>(r)][index(other)][static_cast<int>(v)]
                 [static_cast<int>(p)];
  }
  bool operator==(const TypeBehavior&) const = default;
};

struct BehaviorParams {
  std::array<TypeBehavior, kNumUnitTypes> per_type{};

  TypeBehavior& operator[](UnitType t) { return per_type[index(t)]; }
  const TypeBehavior& operator[](UnitType t) const { return per_type[index(t)]; }
  bool operator==(const BehaviorParams&) const = default;
};

struct Vec2 {
  double x = 0.0;
  double z = 0.0;
  bool operator==(const Vec2&) const = default;
};

inline constexpr double kCellSize = 64.0;

// Row-major grid over the horizontal (x, z) plane. Row indexes z, column x.
struct InfluenceMapGrid {
  double cell_size = kCellSize;
  Vec2 origin;  // corner of cell (0, 0)
  int width = 0;
  int height = 0;
  std::vector<double> values;

  double at(int row, int col) const { return values[static_cast<std::size_t>(row) * width + col]; }
  double& at(int row, int col) { return values[static_cast<std::size_t>(row) * width + col]; }
  Vec2 cell_center(int row, int col) const {
    return {origin.x + (col + 0.5) * cell_size, origin.z + (row + 0.5) * cell_size};
  }
  int col_of(double x) const;
  int row_of(double z) const;
};

/// Influence of the living enemies of `for_side`. Each enemy contributes
/// w_base + w_hp * hp_norm + w_cd * cd_norm at its own cell, scaled by
/// decay^d at cells d Chebyshev steps away for d <= range. The grid spans
/// the enemies' bounding box plus `range` cells of margin, on a lattice of
/// cell_size anchored at the world origin.
/// Returns nullopt when no enemy is alive.
std::optional<InfluenceMapGrid> build_influence_map(std::span<const UnitState> world,
                                                    const InfluenceMapParams& params,
                                                    Side for_side);

// Center of the lowest nonzero cell, ties to the lowest (row, col).
// nullopt for an all-zero grid.
std::optional<Vec2> select_target_cell(const InfluenceMapGrid& grid);

/// Same cell as select_target_cell(build_influence_map(...)), computed on a
/// reusable buffer that is only written, scanned and cleared inside the enemy
/// footprints. One instance per simulation; not thread-safe.
class InfluenceTargetFinder {
 public:
  std::optional<Vec2> find(std::span<const UnitState> world, const InfluenceMapParams& params,
                           Side for_side);

 private:
  struct Source {
    int row;
    int col;
    double value;
  };
  std::vector<double> values_;  // all zero between calls
  std::vector<Source> sources_;
  std::vector<double> falloff_;
  std::vector<double> kernel_;
};

struct SteeringCommand {
  double desired_heading = 0.0;
  double desired_speed = 0.0;
  double desired_altitude = 0.0;
  Vec3 resultant;  // unclamped force sum
};

/// Sums every potential field acting on `u`: one set per (relation, type)
/// of each other living unit, plus attraction to `target` when present.
/// Health and cooldown are fed to the fields as percentages in [0, 100],
/// distance as raw 3D world-units.
SteeringCommand steering(const UnitState& u, std::span<const UnitState> world,
                         const BehaviorParams& params, std::optional<Vec2> target);

// Index into `candidates` of the nearest living enemy of `u` within weapon
// range (inclusive), ties to the lowest id.
std::optional<std::size_t> select_attack_target(const UnitState& u,
                                                std::span<const UnitState> candidates);

}  // namespace microevo
