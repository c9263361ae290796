#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nucleo/dp.hpp"
#include "nucleo/enumeration.hpp"
#include "nucleo/errors.hpp"
#include "helpers.hpp"

using namespace nucleo;
using nucleo::testing::make_game;
using nucleo::testing::random_game;
using nucleo::testing::random_imputation;
using nucleo::testing::random_vector;

namespace {

PayoffVector halves() { return {make_rat(1, 2), make_rat(1, 2), make_rat(0)}; }

Rat cell_payoff(const DpTables& t, int k, long long w, std::size_t level) {
  Rat q(t.cell(k, w)[level].payoff_num, t.denom);
  q.canonicalize();
  return q;
}

}  // namespace

TEST_CASE("build_tables base case holds one entry per k=1 column") {
  Game g = make_game({1, 1, 1}, 2);
  auto t = build_tables(g, halves(), 2);
  REQUIRE(t.cell(1, 1).size() == 1);
  CHECK(cell_payoff(t, 1, 1, 0) == make_rat(1, 2));
  CHECK(t.cell(1, 1)[0].count == 1);
  CHECK(t.cell(1, 0).size() == 1);  // the empty coalition
  CHECK(t.cell(1, 0)[0].payoff_num == 0);
}

TEST_CASE("build_tables merges branches and sums counts") {
  Game g = make_game({1, 1, 1}, 2);
  auto t = build_tables(g, halves(), 2);
  // subsets of {1,2} with weight 1: {1} and {2}, both pay 1/2
  REQUIRE(t.cell(2, 1).size() == 1);
  CHECK(cell_payoff(t, 2, 1, 0) == make_rat(1, 2));
  CHECK(t.cell(2, 1)[0].count == 2);
  REQUIRE(t.cell(2, 2).size() == 1);
  CHECK(cell_payoff(t, 2, 2, 0) == 1);
  CHECK(t.cell(2, 2)[0].count == 1);

  Game pair = make_game({1, 1}, 1);
  auto t2 = build_tables(pair, {make_rat(1, 4), make_rat(1, 4)}, 2);
  REQUIRE(t2.cell(2, 1).size() == 1);
  CHECK(cell_payoff(t2, 2, 1, 0) == make_rat(1, 4));
  CHECK(t2.cell(2, 1)[0].count == 2);
}

TEST_CASE("build_tables keeps payoffs strictly increasing per cell") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 1 + static_cast<int>(rng() % 7);
    Game g = random_game(rng, n, 5);
    auto t = build_tables(g, random_vector(rng, n), n + 1);
    Count total = 0;
    bool truncated = false;  // cells keep only the bottom n+1 distinct values
    for (long long w = 0; w <= g.total_weight(); ++w) {
      const auto& cell = t.cell(n, w);
      if (static_cast<int>(cell.size()) == t.levels) truncated = true;
      for (std::size_t i = 0; i + 1 < cell.size(); ++i)
        CHECK(cell[i].payoff_num < cell[i + 1].payoff_num);
      for (const auto& e : cell) {
        CHECK(e.count >= 1);
        total += e.count;
      }
    }
    CHECK(total <= Count(1) << n);
    if (!truncated) CHECK(total == Count(1) << n);
  }
}

TEST_CASE("build_tables rejects bad level counts") {
  Game g = make_game({1, 1}, 2);
  CHECK_THROWS_AS(build_tables(g, {make_rat(1, 2), make_rat(1, 2)}, 0),
                  validation_error);
}

TEST_CASE("top_deficits matches hand enumeration") {
  Game g = make_game({1, 1, 1}, 2);
  auto t = build_tables(g, halves(), 3);
  auto prof = top_deficits(t, g, 3);
  CHECK(prof.values ==
        std::vector<Rat>{make_rat(1, 2), make_rat(0), make_rat(-1, 2)});
  CHECK(prof.counts == std::vector<Count>{2, 4, 2});

  PayoffVector thirds{make_rat(1, 3), make_rat(1, 3), make_rat(1, 3)};
  auto prof2 = top_deficits(build_tables(g, thirds, 2), g, 2);
  auto oracle = brute_profile(g, thirds, 2);
  CHECK(prof2.values == oracle.values);
  CHECK(prof2.counts == oracle.counts);
  CHECK(prof2.values == std::vector<Rat>{make_rat(1, 3), make_rat(0)});
  CHECK(prof2.counts == std::vector<Count>{3, 2});
}

TEST_CASE("top deficit of any imputation is non-negative") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 1 + static_cast<int>(rng() % 8);
    Game g = random_game(rng, n, 6);
    auto p = random_imputation(rng, n);
    auto prof = top_deficits(build_tables(g, p, 1), g, 1);
    REQUIRE(prof.values.size() == 1);
    CHECK(prof.values[0] >= 0);
  }
}

TEST_CASE("top_deficits rejects mismatched tables") {
  Game g = make_game({1, 1, 1}, 2);
  Game other = make_game({1, 1, 1}, 3);
  auto t = build_tables(g, halves(), 2);
  CHECK_THROWS_AS(top_deficits(t, other, 2), validation_error);
}

TEST_CASE("profiles agree with enumeration on random inputs") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 1 + static_cast<int>(rng() % 10);
    Game g = random_game(rng, n, 6);
    PayoffVector p = (trial % 2) ? random_imputation(rng, n)
                                 : random_vector(rng, n);
    for (int j = 1; j <= n + 1; ++j) {
      auto prof = top_deficits(build_tables(g, p, j), g, j);
      auto oracle = brute_profile(g, p, j);
      CHECK(prof.values == oracle.values);
      CHECK(prof.counts == oracle.counts);
    }
  }
}

TEST_CASE("witness_at returns a coalition with the exact target deficit") {
  Game g = make_game({1, 1, 1}, 2);
  auto t = build_tables(g, halves(), 3, true);
  Coalition s = witness_at(t, g, make_rat(1, 2));
  CHECK(deficit(g, halves(), s) == make_rat(1, 2));
  CHECK((s == Coalition(0b101) || s == Coalition(0b110)));

  Coalition z = witness_at(t, g, make_rat(0));
  CHECK(deficit(g, halves(), z) == 0);

  Game h = make_game({2, 1, 1}, 3);
  PayoffVector p{make_rat(1), make_rat(0), make_rat(0)};
  Coalition w = witness_at(build_tables(h, p, 2, true), h, make_rat(0));
  CHECK(deficit(h, p, w) == 0);
}

TEST_CASE("witness_at is sound across random games") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 1 + static_cast<int>(rng() % 8);
    Game g = random_game(rng, n, 5);
    PayoffVector p = random_imputation(rng, n);
    auto t = build_tables(g, p, n + 1, true);
    auto prof = top_deficits(t, g, n + 1);
    for (const Rat& v : prof.values)
      CHECK(deficit(g, p, witness_at(t, g, v)) == v);
  }
}

TEST_CASE("witness_at is deterministic and validates preconditions") {
  Game g = make_game({1, 1, 1}, 2);
  auto t1 = build_tables(g, halves(), 3, true);
  auto t2 = build_tables(g, halves(), 3, true);
  CHECK(witness_at(t1, g, make_rat(1, 2)) == witness_at(t2, g, make_rat(1, 2)));
  CHECK_THROWS_AS(witness_at(t1, g, make_rat(7, 9)), contract_error);
  auto no_wit = build_tables(g, halves(), 3);
  CHECK_THROWS_AS(witness_at(no_wit, g, make_rat(1, 2)), contract_error);
}

TEST_CASE("peel_witness separates the two payoff vectors") {
  Game g = make_game({1, 1, 1}, 2);
  PayoffVector ref{make_rat(1, 3), make_rat(1, 3), make_rat(1, 3)};
  Coalition s = peel_witness(g, halves(), ref, make_rat(1, 2));
  CHECK(deficit(g, halves(), s) == make_rat(1, 2));
  CHECK(deficit(g, ref, s) != make_rat(1, 2));
  CHECK((s == Coalition(0b101) || s == Coalition(0b110)));

  Game pair = make_game({2, 2}, 4);
  PayoffVector p{make_rat(1), make_rat(0)};
  PayoffVector pref{make_rat(1, 2), make_rat(1, 2)};
  Coalition w = peel_witness(pair, p, pref, make_rat(0));
  CHECK(deficit(pair, p, w) == 0);
  CHECK(deficit(pair, pref, w) != 0);
  CHECK(w == Coalition(0b10));
}

TEST_CASE("peel_witness flags equal counts as a contract violation") {
  Game g = make_game({1, 1, 1}, 2);
  PayoffVector ref{make_rat(1, 3), make_rat(1, 3), make_rat(1, 3)};
  CHECK_THROWS_AS(peel_witness(g, ref, ref, make_rat(1, 3)), contract_error);
}

TEST_CASE("peel_witness is sound whenever counts differ") {
  std::mt19937_64 rng(53);
  int exercised = 0;
  for (int trial = 0; trial < 120 && exercised < 25; ++trial) {
    int n = 2 + static_cast<int>(rng() % 6);
    Game g = random_game(rng, n, 4);
    PayoffVector p = random_imputation(rng, n);
    PayoffVector ref = random_imputation(rng, n);
    auto prof_p = brute_profile(g, p, 1 << n);
    auto prof_r = brute_profile(g, ref, 1 << n);
    for (std::size_t i = 0; i < prof_p.values.size(); ++i) {
      const Rat& level = prof_p.values[i];
      Count at_ref = 0;
      for (std::size_t k = 0; k < prof_r.values.size(); ++k)
        if (prof_r.values[k] == level) at_ref = prof_r.counts[k];
      if (prof_p.counts[i] > at_ref) {
        Coalition s = peel_witness(g, p, ref, level);
        CHECK(deficit(g, p, s) == level);
        CHECK(deficit(g, ref, s) != level);
        ++exercised;
        break;
      }
    }
  }
  CHECK(exercised >= 25);
}
