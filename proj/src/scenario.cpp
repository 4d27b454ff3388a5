#include "microevo/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace microevo {

int Scenario::count(Side side) const {
  return static_cast<int>(std::count_if(placements.begin(), placements.end(),
                                        [&](const Placement& p) { return p.side == side; }));
}

int Scenario::count(Side side, UnitType type) const {
  return static_cast<int>(std::count_if(placements.begin(), placements.end(), [&](const Placement& p) {
    return p.side == side && p.type == type;
  }));
}

namespace {

Vec3 random_direction(Rng& rng) {
  const double z = uniform(rng, -1.0, 1.0);
  const double phi = uniform(rng, 0.0, 2.0 * std::numbers::pi);
  const double rxy = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {rxy * std::cos(phi), z, rxy * std::sin(phi)};
}

// Radius uniform by volume between inner and outer.
double shell_radius(double inner, double outer, Rng& rng) {
  const double a = inner * inner * inner;
  const double b = outer * outer * outer;
  return std::cbrt(a + (b - a) * uniform01(rng));
}

Vec3 clamp_altitude(Vec3 p) {
  p.y = std::clamp(p.y, kAltitudeMin, kAltitudeMax);
  return p;
}

template <typename Draw>
std::vector<Placement> place(const std::vector<UnitGroup>& units, Draw draw) {
  std::vector<Placement> out;
  for (const auto& g : units) {
    for (int i = 0; i < g.count; ++i) out.push_back({g.side, g.type, clamp_altitude(draw())});
  }
  return out;
}

std::vector<UnitGroup> mixed_group(Side side, int vultures, int zealots) {
  return {{UnitType::Vulture, vultures, side}, {UnitType::Zealot, zealots, side}};
}

SpawnSpec spec(SpawnShape shape, const Vec3& center, std::vector<UnitGroup> units) {
  SpawnSpec s;
  s.shape = shape;
  s.center = center;
  s.radius = kSpawnRadius;
  s.shell_thickness = kCloudShell;
  s.units = std::move(units);
  return s;
}

Scenario join(std::string label, std::vector<Placement> a, const std::vector<Placement>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return {std::move(a), std::move(label)};
}

}  // namespace

std::vector<Placement> gen_clump(const SpawnSpec& spec, Rng& rng) {
  return place(spec.units, [&] {
    const double r = shell_radius(0.0, spec.radius, rng);
    return spec.center + random_direction(rng) * r;
  });
}

std::vector<Placement> gen_cloud(const SpawnSpec& spec, Rng& rng) {
  const double inner = std::max(0.0, spec.radius - spec.shell_thickness);
  const double outer = spec.radius + spec.shell_thickness;
  return place(spec.units, [&] {
    const double r = shell_radius(inner, outer, rng);
    return spec.center + random_direction(rng) * r;
  });
}

std::vector<Placement> gen_cube(const Vec3& center, double half_width,
                                const std::vector<UnitGroup>& units, Rng& rng) {
  return place(units, [&] {
    const double x = uniform(rng, -half_width, half_width);
    const double y = uniform(rng, -half_width, half_width);
    const double z = uniform(rng, -half_width, half_width);
    return center + Vec3{x, y, z};
  });
}

Scenario swap_sides(const Scenario& s) {
  Scenario out = s;
  for (auto& p : out.placements) p.side = opponent(p.side);
  return out;
}

std::vector<Scenario> training_suite(Rng& rng) {
  const auto p1 = mixed_group(Side::Player1, 5, 5);
  const auto p2 = mixed_group(Side::Player2, 5, 5);
  const Vec3 home{0.0, kCenterAltitude, 0.0};
  const Vec3 away{kClumpSeparation, kCenterAltitude, 0.0};

  std::vector<Scenario> suite;
  {
    auto a = gen_clump(spec(SpawnShape::Clump, home, p1), rng);
    suite.push_back(join("a_clump_vs_clump", std::move(a),
                         gen_clump(spec(SpawnShape::Clump, away, p2), rng)));
  }
  {
    auto a = gen_clump(spec(SpawnShape::Clump, home, p1), rng);
    suite.push_back(join("b_player1_clump_in_player2_cloud", std::move(a),
                         gen_cloud(spec(SpawnShape::Cloud, home, p2), rng)));
  }
  {
    auto a = gen_cloud(spec(SpawnShape::Cloud, home, p1), rng);
    suite.push_back(join("c_player2_clump_in_player1_cloud", std::move(a),
                         gen_clump(spec(SpawnShape::Clump, home, p2), rng)));
  }
  {
    auto a = gen_cube({0.0, 0.0, 0.0}, kCubeHalfWidth, p1, rng);
    suite.push_back(join("d_cubes", std::move(a),
                         gen_cube({650.0, kCenterAltitude, 0.0}, kCubeHalfWidth, p2, rng)));
  }
  Scenario e = swap_sides(suite.back());
  e.label = "e_cubes_swapped";
  suite.push_back(std::move(e));
  return suite;
}

std::vector<Scenario> random_test_scenarios(int count, Rng& rng) {
  std::vector<Scenario> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) {
    const int vultures = uniform_int(rng, 5, 10);
    const int zealots = uniform_int(rng, 5, 10);
    const Vec3 c1{uniform(rng, -1000.0, 1000.0), kCenterAltitude, uniform(rng, -1000.0, 1000.0)};
    const double bearing = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    const Vec3 c2 = c1 + Vec3{std::cos(bearing), 0.0, std::sin(bearing)} * kClumpSeparation;
    auto a = gen_clump(spec(SpawnShape::Clump, c1, mixed_group(Side::Player1, vultures, zealots)), rng);
    auto b = gen_clump(spec(SpawnShape::Clump, c2, mixed_group(Side::Player2, vultures, zealots)), rng);
    out.push_back(join("random_" + std::to_string(i), std::move(a), b));
  }
  return out;
}

}  // namespace microevo
