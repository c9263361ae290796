#pragma once

#include <cstdint>
#include <vector>

#include "nucleo/rational.hpp"

namespace nucleo {

/// A subset of the agents {0..n-1}, stored as a bitmask. Bit i set means
/// agent i is a member. The empty coalition is mask 0.
struct Coalition {
  std::uint64_t mask = 0;

  Coalition() = default;
  explicit Coalition(std::uint64_t m) : mask(m) {}

  bool contains(int agent) const { return (mask >> agent) & 1u; }
  Coalition with(int agent) const { return Coalition(mask | (1ull << agent)); }
  Coalition without(int agent) const {
    return Coalition(mask & ~(1ull << agent));
  }
  int size() const { return __builtin_popcountll(mask); }
  bool empty() const { return mask == 0; }

  friend bool operator==(const Coalition&, const Coalition&) = default;
  friend auto operator<=>(const Coalition& a, const Coalition& b) {
    return a.mask <=> b.mask;
  }
};

/// Exact-rational payment per agent. An imputation when all entries are
/// non-negative and they sum to exactly 1.
using PayoffVector = std::vector<Rat>;

/// A weighted voting game: integer weights and a quota. A coalition wins
/// iff its total weight meets or exceeds the quota.
class Game {
 public:
  /// Validates raw weights and quota and constructs a Game.
  /// Throws validation_error for: empty agent list, a negative weight,
  /// quota < 1, quota exceeding the total weight, or more than 64 agents.
  static Game validate(std::vector<long long> weights, long long quota);

  int agent_count() const { return static_cast<int>(weights_.size()); }
  long long weight(int agent) const { return weights_[agent]; }
  const std::vector<long long>& weights() const { return weights_; }
  long long quota() const { return quota_; }
  long long total_weight() const { return total_weight_; }
  long long max_weight() const { return max_weight_; }

  long long coalition_weight(Coalition s) const;

  /// The grand coalition {0..n-1}.
  Coalition grand_coalition() const {
    return Coalition(agent_count() == 64 ? ~0ull
                                         : (1ull << agent_count()) - 1);
  }

  friend bool operator==(const Game&, const Game&) = default;

 private:
  Game(std::vector<long long> weights, long long quota);

  std::vector<long long> weights_;
  long long quota_ = 0;
  long long total_weight_ = 0;
  long long max_weight_ = 0;
};

/// The characteristic function: 1 iff the coalition's weight meets the quota.
int coalition_value(const Game& game, Coalition s);

/// Deficit d(p, S) = value(S) - sum of member payments, exact.
/// Throws validation_error if p's dimension does not match the game.
Rat deficit(const Game& game, const PayoffVector& p, Coalition s);

/// True iff p has matching dimension, non-negative entries, and sums to 1.
bool is_imputation(const Game& game, const PayoffVector& p);

}  // namespace nucleo
