#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string_view>

namespace microevo {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;  // altitude
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double k) const { return {x * k, y * k, z * k}; }
  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  bool operator==(const Vec3&) const = default;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline double distance(const Vec3& a, const Vec3& b) { return (a - b).norm(); }

enum class Side : std::uint8_t { Player1 = 0, Player2 = 1 };
enum class UnitType : std::uint8_t { Vulture = 0, Zealot = 1 };

inline constexpr int kNumSides = 2;
inline constexpr int kNumUnitTypes = 2;

constexpr Side opponent(Side s) {
  return s == Side::Player1 ? Side::Player2 : Side::Player1;
}
constexpr int index(Side s) { return static_cast<int>(s); }
constexpr int index(UnitType t) { return static_cast<int>(t); }

std::string_view to_string(Side s);
std::string_view to_string(UnitType t);
// Throws std::invalid_argument on unknown names.
Side parse_side(std::string_view s);
UnitType parse_unit_type(std::string_view s);

inline constexpr double kAltitudeMin = 0.0;
inline constexpr double kAltitudeMax = 1000.0;

struct UnitStats {
  double hit_points_max;
  double max_speed;
  double max_damage;       // per hit
  double weapon_range;
  double weapon_cooldown;  // seconds
  double accel;            // world-units/s^2
  double turn_rate;        // rad/s
  double climb_rate;       // world-units/s
  int hits_per_attack;

  double damage_per_attack() const { return max_damage * hits_per_attack; }
};

// Vulture and Zealot from the FastEcslent unit table. Acceleration is
// max_speed per second, turn rate pi rad/s, climb rate 2.
inline constexpr std::array<UnitStats, kNumUnitTypes> kUnitStats{{
    {80.0, 64.0, 20.0, 256.0, 1.1, 64.0, 3.14159265358979323846, 2.0, 1},
    {160.0, 40.0, 16.0, 224.0, 1.24, 40.0, 3.14159265358979323846, 2.0, 2},
}};

inline const UnitStats& stats_for(UnitType t) { return kUnitStats[index(t)]; }

// Two maximized objectives in [0,1]: fraction of enemy HP destroyed and one
// minus the fraction of friendly HP lost.
struct FitnessVector {
  double f1 = 0.0;
  double f2 = 0.0;
  bool operator==(const FitnessVector&) const = default;
};

}  // namespace microevo
