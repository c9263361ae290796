#pragma once

#include <random>
#include <vector>

#include "nucleo/game.hpp"

namespace nucleo::testing {

inline Game make_game(std::vector<long long> weights, long long quota) {
  return Game::validate(std::move(weights), quota);
}

/// Seeded random game with n agents and weights in [0, max_w] (at least
/// one positive), quota uniform in [1, total].
inline Game random_game(std::mt19937_64& rng, int n, long long max_w) {
  std::uniform_int_distribution<long long> wd(0, max_w);
  std::vector<long long> w(n);
  long long total = 0;
  do {
    total = 0;
    for (auto& x : w) total += (x = wd(rng));
  } while (total == 0);
  std::uniform_int_distribution<long long> qd(1, total);
  return Game::validate(std::move(w), qd(rng));
}

/// Random imputation with small integer shares over a common denominator.
inline PayoffVector random_imputation(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<long> sd(0, 12);
  std::vector<long> shares(n);
  long total = 0;
  do {
    total = 0;
    for (auto& s : shares) total += (s = sd(rng));
  } while (total == 0);
  PayoffVector p(n);
  for (int i = 0; i < n; ++i) p[i] = make_rat(shares[i], total);
  return p;
}

/// Random exact-rational vector, entries in [-3, 3], not necessarily an
/// imputation.
inline PayoffVector random_vector(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<long> nd(-12, 12);
  std::uniform_int_distribution<long> dd(1, 6);
  PayoffVector p(n);
  for (auto& x : p) x = make_rat(nd(rng), dd(rng));
  return p;
}

}  // namespace nucleo::testing
