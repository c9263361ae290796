#pragma once

#include <cstdint>
#include <vector>

#include "nucleo/deficit_profile.hpp"
#include "nucleo/game.hpp"

namespace nucleo {

/// Pseudopolynomial counting engine: for every (agent prefix k, weight w)
/// state it keeps the bottom `levels` distinct coalition payoffs together
/// with exact coalition counts and (optionally) witness coalitions.
///
/// Payoffs are stored as integer numerators over one common denominator
/// (the lcm of the payoff vector's denominators), so all merge work is
/// integer arithmetic.
struct DpTables {
  struct Entry {
    mpz_class payoff_num;     // payoff = payoff_num / denom
    Count count;              // number of coalitions attaining it
    std::uint64_t witness;    // one such coalition (bitmask)
  };

  int agent_count = 0;
  int levels = 0;  // j
  long long quota = 0;
  long long total_weight = 0;
  std::vector<long long> weights;
  bool with_witnesses = false;

  mpz_class denom;
  std::vector<mpz_class> payoff_num;  // numerators of the payoff vector

  // cell(k, w): subsets of the first k agents with total weight w,
  // entries in strictly increasing payoff order, at most `levels` of them.
  // k ranges 0..n; cell(0, 0) holds the empty coalition.
  std::vector<std::vector<Entry>> cells;

  const std::vector<Entry>& cell(int k, long long w) const {
    return cells[static_cast<std::size_t>(k) * (total_weight + 1) + w];
  }

  bool same_game(const Game& game) const;
};

/// Builds the X/Y/Z tables for the given payoff vector (entries may be
/// negative; imputation status is not required). 1 <= j <= n+1.
DpTables build_tables(const Game& game, const PayoffVector& p, int j,
                      bool with_witnesses = false);

/// Top min(j, #distinct) distinct deficits with exact counts, aggregated
/// from the final table row. The w = 0 column contributes the empty
/// coalition's deficit of 0.
DeficitProfile top_deficits(const DpTables& tables, const Game& game, int j);

/// A coalition whose deficit equals `target` exactly. Deterministic
/// tie-break: smallest weight column first, then lowest level.
/// Requires tables built with witnesses; throws if target is not attained.
Coalition witness_at(const DpTables& tables, const Game& game,
                     const Rat& target);

/// Case-(b) weight peeling: a coalition whose deficit is `level` under p
/// but not under p_ref. Precondition: the count of coalitions at deficit
/// `level` under p strictly exceeds that under p_ref.
Coalition peel_witness(const Game& game, const PayoffVector& p,
                       const PayoffVector& p_ref, const Rat& level);

}  // namespace nucleo
