#pragma once

#include <vector>

#include "nucleo/rational.hpp"

namespace nucleo {

/// Top distinct deficits m^1 > m^2 > ... with the exact number of
/// coalitions attaining each (counts over all 2^n coalitions, including
/// the empty coalition and the grand coalition).
struct DeficitProfile {
  std::vector<Rat> values;    // strictly decreasing
  std::vector<Count> counts;  // same length, every entry >= 1

  friend bool operator==(const DeficitProfile&, const DeficitProfile&) = default;
};

}  // namespace nucleo
