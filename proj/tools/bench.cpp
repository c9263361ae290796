// Benchmark: parallel counting tables against the serial enumeration
// reference on small instances, then solver scaling on larger ones.
#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "nucleo/dp.hpp"
#include "nucleo/enumeration.hpp"
#include "nucleo/game.hpp"
#include "nucleo/solver.hpp"

using namespace nucleo;

namespace {

double seconds(auto fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

Game random_game(std::mt19937_64& rng, int n, int max_w) {
  std::uniform_int_distribution<long long> wd(0, max_w);
  std::vector<long long> w(n);
  long long total = 0;
  do {
    total = 0;
    for (auto& x : w) total += (x = wd(rng));
  } while (total == 0);
  std::uniform_int_distribution<long long> qd(1, total);
  return Game::validate(w, qd(rng));
}

PayoffVector random_imputation(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<long> nd(0, 12);
  std::vector<long> shares(n);
  long total = 0;
  do {
    total = 0;
    for (auto& s : shares) total += (s = nd(rng));
  } while (total == 0);
  PayoffVector p(n);
  for (int i = 0; i < n; ++i) p[i] = make_rat(shares[i], total);
  return p;
}

}  // namespace

int main() {
  std::mt19937_64 rng(7);

  std::printf("deficit profile: counting tables vs full enumeration\n");
  for (int n : {12, 16, 20}) {
    Game game = random_game(rng, n, 9);
    PayoffVector p = random_imputation(rng, n);
    const int j = n + 1;
    double t_dp = seconds([&] {
      auto tables = build_tables(game, p, j);
      top_deficits(tables, game, j);
    });
    double t_enum = seconds([&] { brute_profile(game, p, j); });
    std::printf("  n=%2d  tables %8.4fs  enumeration %8.4fs  (x%.1f)\n", n,
                t_dp, t_enum, t_enum / t_dp);
  }

  std::printf("nucleolus solver scaling\n");
  for (int n : {10, 15, 20}) {
    Game game = random_game(rng, n, n);
    double t = seconds([&] { nucleolus(game, {}); });
    std::printf("  n=%2d W<=%2d  %8.4fs\n", n, n, t);
  }
  return 0;
}
