#include "microevo/types.hpp"

#include <stdexcept>
#include <string>

namespace microevo {

std::string_view to_string(Side s) {
  return s == Side::Player1 ? "player1" : "player2";
}

std::string_view to_string(UnitType t) {
  return t == UnitType::Vulture ? "Vulture" : "Zealot";
}

Side parse_side(std::string_view s) {
  if (s == "player1") return Side::Player1;
  if (s == "player2") return Side::Player2;
  throw std::invalid_argument("unknown side: " + std::string(s));
}

UnitType parse_unit_type(std::string_view s) {
  if (s == "Vulture") return UnitType::Vulture;
  if (s == "Zealot") return UnitType::Zealot;
  throw std::invalid_argument("unknown unit type: " + std::string(s));
}

}  // namespace microevo
