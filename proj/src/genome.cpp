#include "microevo/genome.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace microevo {

int layout_size(int n) {
  if (n < 1) throw std::invalid_argument("layout_size: n must be >= 1");
  int dedup = 0;
  for (int i = 1; i <= n; ++i) dedup += 4 * (i - 1);
  return (kSharedParamsPerType + 2 * kFieldParamsPerType * n) * n - dedup;
}

namespace {

constexpr std::string_view kRelationNames[] = {"enemy", "friend"};
constexpr std::string_view kVariableNames[] = {"distance", "health", "cooldown"};
constexpr std::string_view kPolarityNames[] = {"attract", "repel"};

std::string type_name(int t) {
  if (t < kNumUnitTypes) return std::string(to_string(static_cast<UnitType>(t)));
  return "type" + std::to_string(t);
}

std::string_view role_name(GeneRole r) {
  switch (r) {
    case GeneRole::FieldCoefficient: return "c";
    case GeneRole::FieldExponent: return "e";
    case GeneRole::TargetCoefficient: return "target.c";
    case GeneRole::TargetExponent: return "target.e";
    case GeneRole::ImWeightHp: return "im.w_hp";
    case GeneRole::ImWeightCd: return "im.w_cd";
    case GeneRole::ImWeightBase: return "im.w_base";
    case GeneRole::ImDecay: return "im.decay";
    case GeneRole::ImRange: return "im.range";
  }
  return "?";
}

bool is_field(GeneRole r) {
  return r == GeneRole::FieldCoefficient || r == GeneRole::FieldExponent;
}

double to_value(const GeneDescriptor& d, double g) {
  const double v = d.lo + g * (d.hi - d.lo);
  return d.role == GeneRole::ImRange ? std::round(v) : v;
}

double to_gene(const GeneDescriptor& d, double v) { return (v - d.lo) / (d.hi - d.lo); }

double& slot(TypeBehavior& tb, const GeneDescriptor& d, Relation rel, int other) {
  switch (d.role) {
    case GeneRole::FieldCoefficient:
      return tb.field(rel, static_cast<UnitType>(other), d.variable, d.polarity).c;
    case GeneRole::FieldExponent:
      return tb.field(rel, static_cast<UnitType>(other), d.variable, d.polarity).e;
    case GeneRole::TargetCoefficient: return tb.target.c;
    case GeneRole::TargetExponent: return tb.target.e;
    case GeneRole::ImWeightHp: return tb.im.w_hp;
    case GeneRole::ImWeightCd: return tb.im.w_cd;
    case GeneRole::ImWeightBase: return tb.im.w_base;
    case GeneRole::ImDecay: return tb.im.decay;
    case GeneRole::ImRange: break;
  }
  throw std::logic_error("slot: integer gene");
}

void require_two_types(const GenomeLayout& layout) {
  if (layout.n_types() != kNumUnitTypes) {
    throw std::invalid_argument("decode/encode: layout must describe two unit types");
  }
}

}  // namespace

std::string GeneDescriptor::name() const {
  std::string out = type_name(owner_type) + ".";
  if (is_field(role)) {
    out += std::string(kRelationNames[static_cast<int>(relation)]) + "." + type_name(other_type) +
           "." + std::string(kVariableNames[static_cast<int>(variable)]) + "." +
           std::string(kPolarityNames[static_cast<int>(polarity)]) + ".";
  }
  out += role_name(role);
  return out;
}

GenomeLayout::GenomeLayout(int n_types) : n_types_(n_types) {
  if (n_types < 1) throw std::invalid_argument("GenomeLayout: n_types must be >= 1");
  for (int owner = 0; owner < n_types; ++owner) {
    for (Relation rel : {Relation::Enemy, Relation::Friend}) {
      for (int other = 0; other < n_types; ++other) {
        const bool cross_friend = rel == Relation::Friend && other != owner;
        for (int v = 0; v < kNumVariables; ++v) {
          const auto var = static_cast<FieldVariable>(v);
          // Stored once, under the lower of the two owner types.
          if (cross_friend && var == FieldVariable::Distance && other < owner) continue;
          for (int p = 0; p < kNumPolarities; ++p) {
            for (GeneRole role : {GeneRole::FieldCoefficient, GeneRole::FieldExponent}) {
              GeneDescriptor d{owner, role, {}, 0, {}, {}, 0.0, 0.0};
              d.relation = rel;
              d.other_type = other;
              d.variable = var;
              d.polarity = static_cast<Polarity>(p);
              d.lo = role == GeneRole::FieldCoefficient ? kCoefficientLo : kExponentLo;
              d.hi = role == GeneRole::FieldCoefficient ? kCoefficientHi : kExponentHi;
              if (cross_friend && var == FieldVariable::Distance) d.shared_with_type = other;
              genes_.push_back(d);
            }
          }
        }
      }
    }
  }
  for (int owner = 0; owner < n_types; ++owner) {
    genes_.push_back({owner, GeneRole::TargetCoefficient, {}, 0, {}, {}, kTargetCoefficientLo,
                      kTargetCoefficientHi});
    genes_.push_back({owner, GeneRole::TargetExponent, {}, 0, {}, {}, kExponentLo, kExponentHi});
    genes_.push_back({owner, GeneRole::ImWeightHp, {}, 0, {}, {}, kWeightLo, kWeightHi});
    genes_.push_back({owner, GeneRole::ImWeightCd, {}, 0, {}, {}, kWeightLo, kWeightHi});
    genes_.push_back({owner, GeneRole::ImWeightBase, {}, 0, {}, {}, kWeightLo, kWeightHi});
    genes_.push_back({owner, GeneRole::ImDecay, {}, 0, {}, {}, kDecayLo, kDecayHi});
    genes_.push_back({owner, GeneRole::ImRange, {}, 0, {}, {}, kRangeLo, kRangeHi});
  }
}

std::string GenomeLayout::describe() const {
  std::ostringstream out;
  out << "# genome layout version " << kVersion << "\n";
  out << "# n_types " << n_types_ << " genes " << genes_.size() << "\n";
  out << "index,name,lo,hi,shared_with\n";
  for (std::size_t i = 0; i < genes_.size(); ++i) {
    const auto& d = genes_[i];
    out << i << "," << d.name() << "," << d.lo << "," << d.hi << ","
        << (d.shared_with_type >= 0 ? type_name(d.shared_with_type) : std::string("-")) << "\n";
  }
  return out.str();
}

const GenomeLayout& default_layout() {
  static const GenomeLayout layout(kNumUnitTypes);
  return layout;
}

BehaviorParams decode(const Chromosome& ch, const GenomeLayout& layout) {
  require_two_types(layout);
  if (ch.genes.size() != layout.size()) {
    throw std::invalid_argument("decode: chromosome has " + std::to_string(ch.genes.size()) +
                                " genes, layout expects " + std::to_string(layout.size()));
  }
  BehaviorParams out;
  const auto& genes = layout.genes();
  for (std::size_t i = 0; i < genes.size(); ++i) {
    const auto& d = genes[i];
    const double v = to_value(d, ch.genes[i]);
    TypeBehavior& tb = out.per_type[d.owner_type];
    if (d.role == GeneRole::ImRange) {
      tb.im.range = static_cast<int>(v);
      continue;
    }
    slot(tb, d, d.relation, d.other_type) = v;
    if (d.shared_with_type >= 0) {
      slot(out.per_type[d.shared_with_type], d, Relation::Friend, d.owner_type) = v;
    }
  }
  return out;
}

Chromosome encode(const BehaviorParams& params, const GenomeLayout& layout) {
  require_two_types(layout);
  Chromosome ch;
  ch.genes.reserve(layout.size());
  BehaviorParams scratch = params;
  for (const auto& d : layout.genes()) {
    TypeBehavior& tb = scratch.per_type[d.owner_type];
    const double v = d.role == GeneRole::ImRange ? static_cast<double>(tb.im.range)
                                                 : slot(tb, d, d.relation, d.other_type);
    ch.genes.push_back(to_gene(d, v));
  }
  return ch;
}

Chromosome random_chromosome(Rng& rng, std::size_t length) {
  Chromosome ch;
  ch.genes.resize(length);
  for (auto& g : ch.genes) g = uniform01(rng);
  return ch;
}

}  // namespace microevo
