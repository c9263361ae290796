#include "nucleo/game.hpp"

#include <algorithm>
#include <utility>

#include "nucleo/errors.hpp"

namespace nucleo {

Game::Game(std::vector<long long> weights, long long quota)
    : weights_(std::move(weights)), quota_(quota) {
  for (long long w : weights_) total_weight_ += w;
  max_weight_ = *std::max_element(weights_.begin(), weights_.end());
}

Game Game::validate(std::vector<long long> weights, long long quota) {
  if (weights.empty()) throw validation_error("no agents");
  if (weights.size() > 64)
    throw validation_error("at most 64 agents are supported");
  long long total = 0;
  for (long long w : weights) {
    if (w < 0) throw validation_error("negative weight");
    total += w;
  }
  if (quota < 1) throw validation_error("quota must be at least 1");
  if (quota > total) throw validation_error("grand coalition loses");
  return Game(std::move(weights), quota);
}

long long Game::coalition_weight(Coalition s) const {
  long long total = 0;
  std::uint64_t m = s.mask;
  while (m) {
    int i = __builtin_ctzll(m);
    total += weights_[i];
    m &= m - 1;
  }
  return total;
}

int coalition_value(const Game& game, Coalition s) {
  return game.coalition_weight(s) >= game.quota() ? 1 : 0;
}

Rat deficit(const Game& game, const PayoffVector& p, Coalition s) {
  if (static_cast<int>(p.size()) != game.agent_count())
    throw validation_error("payoff dimension does not match the game");
  Rat paid = 0;
  std::uint64_t m = s.mask;
  while (m) {
    int i = __builtin_ctzll(m);
    paid += p[i];
    m &= m - 1;
  }
  return Rat(coalition_value(game, s)) - paid;
}

bool is_imputation(const Game& game, const PayoffVector& p) {
  if (static_cast<int>(p.size()) != game.agent_count()) return false;
  Rat total = 0;
  for (const Rat& x : p) {
    if (x < 0) return false;
    total += x;
  }
  return total == 1;
}

}  // namespace nucleo
