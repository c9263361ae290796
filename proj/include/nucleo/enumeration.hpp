#pragma once

#include <compare>
#include <vector>

#include "nucleo/deficit_profile.hpp"
#include "nucleo/game.hpp"

namespace nucleo {

/// Brute-force reference oracle over all 2^n coalitions. Deliberately
/// exponential and written for clarity, not speed; every fast path in the
/// library is validated against it.

inline constexpr int kDefaultEnumerationGuard = 20;
inline constexpr int kDefaultBruteLpGuard = 12;

/// All 2^n deficits, sorted non-increasing.
struct DeficitVector {
  std::vector<Rat> sorted_deficits;
};

/// Throws guard_error when the game has more than guard_n agents.
DeficitVector deficit_vector(const Game& game, const PayoffVector& p,
                             int guard_n = kDefaultEnumerationGuard);

enum class Ordering { less, equal, greater };

/// Lexicographic order on equally long sorted deficit vectors.
Ordering lex_compare(const DeficitVector& a, const DeficitVector& b);

/// Top min(j, #distinct) distinct deficits with exact counts, by explicit
/// enumeration of every coalition.
DeficitProfile brute_profile(const Game& game, const PayoffVector& p, int j,
                             int guard_n = kDefaultEnumerationGuard);

/// Reference nucleolus: successive linear programs with one explicit row
/// per coalition, tight sets determined by exact max-slack analysis of
/// each stage's optimal face. Guarded to small n.
PayoffVector brute_nucleolus(const Game& game,
                             int guard_n = kDefaultBruteLpGuard);

}  // namespace nucleo
