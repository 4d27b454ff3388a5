#include "microevo/behavior.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace microevo {

UnitState make_unit(int id, Side side, UnitType type, const Vec3& pos) {
  UnitState u;
  u.id = id;
  u.side = side;
  u.type = type;
  u.pos = pos;
  u.pos.y = std::clamp(pos.y, kAltitudeMin, kAltitudeMax);
  u.altitude = u.pos.y;
  u.desired_altitude = u.altitude;
  u.hit_points = stats_for(type).hit_points_max;
  return u;
}

double pf_magnitude(const PotentialField& field, double x) {
  return field.c * std::pow(std::max(x, kFieldEpsilon), field.e);
}

int InfluenceMapGrid::col_of(double x) const {
  return std::clamp(static_cast<int>(std::floor((x - origin.x) / cell_size)), 0, width - 1);
}

int InfluenceMapGrid::row_of(double z) const {
  return std::clamp(static_cast<int>(std::floor((z - origin.z) / cell_size)), 0, height - 1);
}

namespace {

struct Lattice {
  InfluenceMapGrid grid;  // geometry only, values empty
  int range = 0;
};

// Geometry of the map for the living enemies of `for_side`.
std::optional<Lattice> lattice_for(std::span<const UnitState> world,
                                   const InfluenceMapParams& params, Side for_side) {
  const Side enemy = opponent(for_side);
  double min_x = std::numeric_limits<double>::infinity();
  double min_z = min_x;
  double max_x = -min_x;
  double max_z = -min_x;
  for (const auto& u : world) {
    if (!u.alive || u.side != enemy) continue;
    min_x = std::min(min_x, u.pos.x);
    max_x = std::max(max_x, u.pos.x);
    min_z = std::min(min_z, u.pos.z);
    max_z = std::max(max_z, u.pos.z);
  }
  if (!(min_x <= max_x)) return std::nullopt;

  // Cells sit on a world-anchored lattice, so a cell's extent does not depend
  // on where the units are; everything outside the enemy footprint is zero.
  Lattice out;
  out.range = std::max(params.range, 0);
  const int r = out.range;
  InfluenceMapGrid& grid = out.grid;
  const double cs = grid.cell_size;
  const double first_col = std::floor(min_x / cs) - r;
  const double first_row = std::floor(min_z / cs) - r;
  grid.origin = {first_col * cs, first_row * cs};
  grid.width = static_cast<int>(std::floor(max_x / cs) - first_col) + 1 + r;
  grid.height = static_cast<int>(std::floor(max_z / cs) - first_row) + 1 + r;
  return out;
}

double source_value(const UnitState& u, const InfluenceMapParams& params) {
  const auto& st = u.stats();
  return params.w_base + params.w_hp * (u.hit_points / st.hit_points_max) +
         params.w_cd * (u.cooldown_remaining / st.weapon_cooldown);
}

void fill_falloff(std::vector<double>& falloff, int r, double decay) {
  falloff.resize(static_cast<std::size_t>(r) + 1);
  falloff[0] = 1.0;
  for (int d = 1; d <= r; ++d) falloff[d] = falloff[d - 1] * decay;
}

}  // namespace

std::optional<InfluenceMapGrid> build_influence_map(std::span<const UnitState> world,
                                                    const InfluenceMapParams& params,
                                                    Side for_side) {
  auto lattice = lattice_for(world, params, for_side);
  if (!lattice) return std::nullopt;
  InfluenceMapGrid grid = std::move(lattice->grid);
  const int r = lattice->range;
  grid.values.assign(static_cast<std::size_t>(grid.width) * grid.height, 0.0);
  std::vector<double> falloff;
  fill_falloff(falloff, r, params.decay);

  const Side enemy = opponent(for_side);
  for (const auto& u : world) {
    if (!u.alive || u.side != enemy) continue;
    const double source = source_value(u, params);
    const int row = grid.row_of(u.pos.z);
    const int col = grid.col_of(u.pos.x);
    for (int i = row - r; i <= row + r; ++i) {
      const int dr = std::abs(i - row);
      for (int j = col - r; j <= col + r; ++j) {
        grid.at(i, j) += source * falloff[std::max(dr, std::abs(j - col))];
      }
    }
  }
  return grid;
}

std::optional<Vec2> InfluenceTargetFinder::find(std::span<const UnitState> world,
                                                const InfluenceMapParams& params,
                                                Side for_side) {
  auto lattice = lattice_for(world, params, for_side);
  if (!lattice) return std::nullopt;
  const InfluenceMapGrid& grid = lattice->grid;
  const int r = lattice->range;
  const int w = grid.width;
  const auto cells = static_cast<std::size_t>(w) * grid.height;
  if (values_.size() < cells) values_.resize(cells, 0.0);
  fill_falloff(falloff_, r, params.decay);

  sources_.clear();
  const Side enemy = opponent(for_side);
  for (const auto& u : world) {
    if (!u.alive || u.side != enemy) continue;
    sources_.push_back({grid.row_of(u.pos.z), grid.col_of(u.pos.x), source_value(u, params)});
  }
  const int side = 2 * r + 1;
  kernel_.resize(static_cast<std::size_t>(side) * side);
  for (int a = 0; a < side; ++a) {
    for (int b = 0; b < side; ++b) {
      kernel_[static_cast<std::size_t>(a) * side + b] =
          falloff_[std::max(std::abs(a - r), std::abs(b - r))];
    }
  }
  for (const auto& s : sources_) {
    for (int a = 0; a < side; ++a) {
      double* line = values_.data() + static_cast<std::size_t>(s.row - r + a) * w + (s.col - r);
      const double* k = kernel_.data() + static_cast<std::size_t>(a) * side;
      for (int b = 0; b < side; ++b) line[b] += s.value * k[b];
    }
  }

  int best_row = -1;
  int best_col = -1;
  double best = std::numeric_limits<double>::infinity();
  auto consider = [&](int i, int j, double v) {
    if (v == 0.0) return;
    if (v < best || (v == best && (i < best_row || (i == best_row && j < best_col)))) {
      best = v;
      best_row = i;
      best_col = j;
    }
  };
  // Clustered enemies overlap heavily: walking the whole grid once is then
  // cheaper than walking every footprint.
  const auto footprint_cells = sources_.size() * static_cast<std::size_t>(side) * side;
  if (cells <= footprint_cells) {
    for (int i = 0; i < grid.height; ++i) {
      const double* line = values_.data() + static_cast<std::size_t>(i) * w;
      for (int j = 0; j < w; ++j) consider(i, j, line[j]);
    }
    std::fill(values_.begin(), values_.begin() + static_cast<long>(cells), 0.0);
  } else {
    for (const auto& s : sources_) {
      for (int i = s.row - r; i <= s.row + r; ++i) {
        const double* line = values_.data() + static_cast<std::size_t>(i) * w;
        for (int j = s.col - r; j <= s.col + r; ++j) consider(i, j, line[j]);
      }
    }
    for (const auto& s : sources_) {
      for (int i = s.row - r; i <= s.row + r; ++i) {
        double* line = values_.data() + static_cast<std::size_t>(i) * w;
        std::fill(line + s.col - r, line + s.col + r + 1, 0.0);
      }
    }
  }
  if (best_row < 0) return std::nullopt;
  return grid.cell_center(best_row, best_col);
}

std::optional<Vec2> select_target_cell(const InfluenceMapGrid& grid) {
  int best_row = -1;
  int best_col = -1;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid.height; ++i) {
    for (int j = 0; j < grid.width; ++j) {
      const double v = grid.at(i, j);
      if (v != 0.0 && v < best) {
        best = v;
        best_row = i;
        best_col = j;
      }
    }
  }
  if (best_row < 0) return std::nullopt;
  return grid.cell_center(best_row, best_col);
}

namespace {

// Sum of the attract and repel fields of one variable: c_a x^e_a + c_r x^e_r.
double field_pair(const TypeBehavior::FieldsByPolarity& pair, double x) {
  const double lx = std::log(std::max(x, kFieldEpsilon));
  return pair[0].c * std::exp(pair[0].e * lx) + pair[1].c * std::exp(pair[1].e * lx);
}

}  // namespace

SteeringCommand steering(const UnitState& u, std::span<const UnitState> world,
                         const BehaviorParams& params, std::optional<Vec2> target) {
  const TypeBehavior& own = params[u.type];
  const UnitStats& st = u.stats();
  Vec3 force;
  for (const auto& v : world) {
    if (!v.alive || v.id == u.id) continue;
    const Vec3 diff = v.pos - u.pos;
    const double d = diff.norm();
    if (d == 0.0) continue;
    const Relation rel = v.side == u.side ? Relation::Friend : Relation::Enemy;
    const auto& set = own.fields[static_cast<int>(rel)][index(v.type)];
    const auto& vs = v.stats();
    const double health = 100.0 * v.hit_points / vs.hit_points_max;
    const double cooldown = 100.0 * v.cooldown_remaining / vs.weapon_cooldown;
    const double m = field_pair(set[0], d) + field_pair(set[1], health) +
                     field_pair(set[2], cooldown);
    force += diff * (m / d);
  }
  if (target) {
    const double dx = target->x - u.pos.x;
    const double dz = target->z - u.pos.z;
    const double h = std::hypot(dx, dz);
    if (h > 0.0) {
      const double m = pf_magnitude(own.target, h);
      force += Vec3{dx / h, 0.0, dz / h} * m;
    }
  }

  SteeringCommand cmd;
  cmd.resultant = force;
  const double magnitude = force.norm();
  if (magnitude == 0.0 || !std::isfinite(magnitude)) {
    cmd.desired_heading = u.heading;
    cmd.desired_speed = 0.0;
    cmd.desired_altitude = u.altitude;
    return cmd;
  }
  cmd.desired_heading = (force.x == 0.0 && force.z == 0.0) ? u.heading
                                                           : std::atan2(force.z, force.x);
  cmd.desired_speed = std::clamp(magnitude, 0.0, st.max_speed);
  cmd.desired_altitude = std::clamp(u.altitude + force.y, kAltitudeMin, kAltitudeMax);
  return cmd;
}

std::optional<std::size_t> select_attack_target(const UnitState& u,
                                                std::span<const UnitState> candidates) {
  const double range = u.stats().weapon_range;
  std::optional<std::size_t> best;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto& v = candidates[i];
    if (!v.alive || v.side == u.side) continue;
    const double d = distance(u.pos, v.pos);
    if (d > range) continue;
    if (d < best_d || (d == best_d && v.id < candidates[*best].id)) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

}  // namespace microevo
