#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "microevo/behavior.hpp"
#include "microevo/rng.hpp"

namespace microevo {

inline constexpr int kFieldParamsPerType = 12;  // p: 2 polarities x 3 variables x 2 scalars
inline constexpr int kSharedParamsPerType = 7;  // q: target field (2) + influence map (5)

// Number of genes for n unit types per side:
// (q + 2pn)n - sum_{i=1..n} 4(i - 1). Throws for n < 1.
int layout_size(int n);

struct Chromosome {
  std::vector<double> genes;
  bool operator==(const Chromosome&) const = default;
};

enum class GeneRole { FieldCoefficient, FieldExponent, TargetCoefficient, TargetExponent,
                      ImWeightHp, ImWeightCd, ImWeightBase, ImDecay, ImRange };

struct GeneDescriptor {
  int owner_type;  // friendly unit type whose controller reads the gene
  GeneRole role;
  Relation relation = Relation::Enemy;  // field genes only
  int other_type = 0;                   // field genes only
  FieldVariable variable = FieldVariable::Distance;
  Polarity polarity = Polarity::Attract;
  double lo;
  double hi;
  // Friend-distance fields between two distinct types are stored once, under
  // the lower-indexed owner; the other owner reads them too.
  int shared_with_type = -1;

  std::string name() const;
};

/// Gene order: per owner type, blocks [enemy type 0..n-1 | friend type 0..n-1],
/// each (distance, health, cooldown) x (attract, repel) x (c, e), skipping the
/// friend-distance block already stored by a lower owner; then the q block of
/// every owner type (target c, e; w_hp, w_cd, w_base, decay, range).
class GenomeLayout {
 public:
  explicit GenomeLayout(int n_types = kNumUnitTypes);

  int n_types() const { return n_types_; }
  std::size_t size() const { return genes_.size(); }
  const std::vector<GeneDescriptor>& genes() const { return genes_; }

  // Machine-readable description, one gene per line.
  std::string describe() const;

  static constexpr int kVersion = 1;

 private:
  int n_types_;
  std::vector<GeneDescriptor> genes_;
};

const GenomeLayout& default_layout();

inline constexpr double kCoefficientLo = -100.0, kCoefficientHi = 100.0;
inline constexpr double kExponentLo = -5.0, kExponentHi = 5.0;
inline constexpr double kWeightLo = 0.0, kWeightHi = 100.0;
inline constexpr double kDecayLo = 0.05, kDecayHi = 1.0;
inline constexpr double kRangeLo = 0.0, kRangeHi = 10.0;
inline constexpr double kTargetCoefficientLo = 0.0, kTargetCoefficientHi = 100.0;

// Affine gene -> parameter map. Requires a two-type layout; throws
// std::invalid_argument on length mismatch.
BehaviorParams decode(const Chromosome& ch, const GenomeLayout& layout = default_layout());

// Inverse of decode, up to rounding of the integer influence range.
Chromosome encode(const BehaviorParams& params, const GenomeLayout& layout = default_layout());

Chromosome random_chromosome(Rng& rng, std::size_t length = default_layout().size());

}  // namespace microevo
