#include "nucleo/dp.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "nucleo/errors.hpp"

namespace nucleo {

bool DpTables::same_game(const Game& game) const {
  return weights == game.weights() && quota == game.quota();
}

namespace {

struct ScaledPayoff {
  mpz_class denom;
  std::vector<mpz_class> nums;
};

ScaledPayoff scale_to_common_denominator(const PayoffVector& p) {
  ScaledPayoff s;
  s.denom = 1;
  for (const Rat& x : p) mpz_lcm(s.denom.get_mpz_t(), s.denom.get_mpz_t(),
                                 x.get_den().get_mpz_t());
  s.nums.reserve(p.size());
  for (const Rat& x : p) s.nums.push_back(x.get_num() * (s.denom / x.get_den()));
  return s;
}

// target as a numerator over `denom`, when representable
std::optional<mpz_class> scale_value(const Rat& value, const mpz_class& denom) {
  if (!mpz_divisible_p(denom.get_mpz_t(), value.get_den().get_mpz_t()))
    return std::nullopt;
  return value.get_num() * (denom / value.get_den());
}

}  // namespace

DpTables build_tables(const Game& game, const PayoffVector& p, int j,
                      bool with_witnesses) {
  const int n = game.agent_count();
  if (j < 1) throw validation_error("table depth j must be at least 1");
  if (j > n + 1) j = n + 1;  // deeper levels are never consulted
  if (static_cast<int>(p.size()) != n)
    throw validation_error("payoff dimension does not match the game");

  DpTables t;
  t.agent_count = n;
  t.levels = j;
  t.quota = game.quota();
  t.total_weight = game.total_weight();
  t.weights = game.weights();
  t.with_witnesses = with_witnesses;
  auto scaled = scale_to_common_denominator(p);
  t.denom = std::move(scaled.denom);
  t.payoff_num = std::move(scaled.nums);

  const long long tw = t.total_weight;
  t.cells.assign(static_cast<std::size_t>(n + 1) * (tw + 1), {});
  t.cells[0] = {DpTables::Entry{mpz_class(0), Count(1), 0}};  // empty coalition

  for (int k = 1; k <= n; ++k) {
    const long long wk = t.weights[k - 1];
    const mpz_class& pk = t.payoff_num[k - 1];
    const std::uint64_t bit = 1ull << (k - 1);
    const auto* prev = &t.cells[static_cast<std::size_t>(k - 1) * (tw + 1)];
    auto* cur = &t.cells[static_cast<std::size_t>(k) * (tw + 1)];
#pragma omp parallel for schedule(dynamic, 16)
    for (long long w = 0; w <= tw; ++w) {
      const auto& without = prev[w];  // agent k excluded
      static const std::vector<DpTables::Entry> kEmpty;
      const auto& with = w >= wk ? prev[w - wk] : kEmpty;  // agent k included
      auto& out = cur[w];
      out.reserve(std::min<std::size_t>(j, without.size() + with.size()));
      std::size_t a = 0, b = 0;
      mpz_class shifted;
      while (static_cast<int>(out.size()) < j &&
             (a < without.size() || b < with.size())) {
        int cmp;
        if (a == without.size()) cmp = 1;
        else if (b == with.size()) cmp = -1;
        else {
          shifted = with[b].payoff_num + pk;
          cmp = ::cmp(without[a].payoff_num, shifted);
        }
        if (cmp < 0) {
          out.push_back(without[a++]);
        } else if (cmp > 0) {
          out.push_back(DpTables::Entry{with[b].payoff_num + pk, with[b].count,
                                        with[b].witness | bit});
          ++b;
        } else {
          // both branches produce the value: add up the counts; the
          // witness tie-break prefers the branch excluding agent k
          out.push_back(DpTables::Entry{without[a].payoff_num,
                                        without[a].count + with[b].count,
                                        without[a].witness});
          ++a;
          ++b;
        }
      }
    }
  }
  return t;
}

namespace {

void check_tables(const DpTables& tables, const Game& game, int j) {
  if (!tables.same_game(game))
    throw validation_error("tables were built for a different game");
  if (j > tables.levels)
    throw validation_error("tables were built with fewer levels than requested");
}

}  // namespace

DeficitProfile top_deficits(const DpTables& tables, const Game& game, int j) {
  if (j < 1) throw validation_error("profile depth j must be at least 1");
  check_tables(tables, game, std::min(j, tables.agent_count + 1));
  const int n = tables.agent_count;
  std::map<mpz_class, Count, std::greater<mpz_class>> tally;
  for (long long w = 0; w <= tables.total_weight; ++w) {
    const mpz_class base = w >= tables.quota ? tables.denom : mpz_class(0);
    for (const auto& e : tables.cell(n, w)) tally[base - e.payoff_num] += e.count;
  }
  DeficitProfile profile;
  for (const auto& [num, count] : tally) {
    if (static_cast<int>(profile.values.size()) == j) break;
    Rat v(num, tables.denom);
    v.canonicalize();
    profile.values.push_back(std::move(v));
    profile.counts.push_back(count);
  }
  return profile;
}

Coalition witness_at(const DpTables& tables, const Game& game,
                     const Rat& target) {
  check_tables(tables, game, 1);
  if (!tables.with_witnesses)
    throw contract_error("witness_at: tables were built without witnesses");
  auto target_num = scale_value(target, tables.denom);
  if (target_num) {
    const int n = tables.agent_count;
    for (long long w = 0; w <= tables.total_weight; ++w) {
      const mpz_class base = w >= tables.quota ? tables.denom : mpz_class(0);
      // entries are in increasing payoff order, i.e. decreasing deficit;
      // lowest level first matches the decreed tie-break
      for (const auto& e : tables.cell(n, w))
        if (base - e.payoff_num == *target_num) return Coalition(e.witness);
    }
  }
  throw contract_error("witness_at: target deficit is not attained");
}

namespace {

Count count_at(const DpTables& t, int k, long long w,
               const std::optional<mpz_class>& payoff) {
  if (!payoff || w < 0 || w > t.total_weight) return 0;
  const auto& cell = t.cell(k, w);
  auto it = std::lower_bound(cell.begin(), cell.end(), *payoff,
                             [](const DpTables::Entry& e, const mpz_class& v) {
                               return e.payoff_num < v;
                             });
  if (it != cell.end() && it->payoff_num == *payoff) return it->count;
  return 0;
}

std::optional<mpz_class> minus(const std::optional<mpz_class>& a,
                               const mpz_class& b) {
  if (!a) return std::nullopt;
  return *a - b;
}

}  // namespace

Coalition peel_witness(const Game& game, const PayoffVector& p,
                       const PayoffVector& p_ref, const Rat& level) {
  const int n = game.agent_count();
  const DpTables tp = build_tables(game, p, n + 1);
  const DpTables tr = build_tables(game, p_ref, n + 1);
  auto lvl_p = scale_value(level, tp.denom);
  auto lvl_r = scale_value(level, tr.denom);

  // find a weight column where p has strictly more coalitions at `level`
  long long w = -1;
  std::optional<mpz_class> cp, cr;
  for (long long cand = 0; cand <= tp.total_weight; ++cand) {
    const bool winning = cand >= game.quota();
    auto pay_p = lvl_p ? std::optional<mpz_class>(
                             (winning ? tp.denom : mpz_class(0)) - *lvl_p)
                       : std::nullopt;
    auto pay_r = lvl_r ? std::optional<mpz_class>(
                             (winning ? tr.denom : mpz_class(0)) - *lvl_r)
                       : std::nullopt;
    if (count_at(tp, n, cand, pay_p) > count_at(tr, n, cand, pay_r)) {
      w = cand;
      cp = std::move(pay_p);
      cr = std::move(pay_r);
      break;
    }
  }
  if (w < 0)
    throw contract_error(
        "peel_witness: no weight column separates the deficit counts");

  // descend through agents n..1, keeping count(p) > count(p_ref)
  std::uint64_t mask = 0;
  for (int k = n; k >= 1; --k) {
    const long long wk = game.weight(k - 1);
    Count excl_p = count_at(tp, k - 1, w, cp);
    Count excl_r = count_at(tr, k - 1, w, cr);
    if (excl_p > excl_r) continue;  // prefer the branch excluding agent k
    auto icp = minus(cp, tp.payoff_num[k - 1]);
    auto icr = minus(cr, tr.payoff_num[k - 1]);
    if (!(count_at(tp, k - 1, w - wk, icp) > count_at(tr, k - 1, w - wk, icr)))
      throw contract_error("peel_witness: descent invariant broken");
    mask |= 1ull << (k - 1);
    w -= wk;
    cp = std::move(icp);
    cr = std::move(icr);
  }
  return Coalition(mask);
}

}  // namespace nucleo
