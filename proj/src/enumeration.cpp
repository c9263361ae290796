#include "nucleo/enumeration.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "nucleo/errors.hpp"
#include "nucleo/lp.hpp"

namespace nucleo {

namespace {

void check_guard(const Game& game, int guard_n, const char* op) {
  if (game.agent_count() > guard_n)
    throw guard_error(std::string(op) + ": game has " +
                      std::to_string(game.agent_count()) +
                      " agents, enumeration guard is " +
                      std::to_string(guard_n));
}

// Deficits of all 2^n coalitions, indexed by bitmask.
std::vector<Rat> all_deficits(const Game& game, const PayoffVector& p) {
  const int n = game.agent_count();
  const std::uint64_t count = 1ull << n;
  std::vector<Rat> d(count);
  d[0] = 0;  // p(empty) = 0
  for (std::uint64_t m = 1; m < count; ++m)
    d[m] = d[m & (m - 1)] + p[__builtin_ctzll(m)];
  for (std::uint64_t m = 0; m < count; ++m)
    d[m] = Rat(coalition_value(game, Coalition(m))) - d[m];
  return d;
}

}  // namespace

DeficitVector deficit_vector(const Game& game, const PayoffVector& p,
                             int guard_n) {
  check_guard(game, guard_n, "deficit_vector");
  if (static_cast<int>(p.size()) != game.agent_count())
    throw validation_error("payoff dimension does not match the game");
  DeficitVector v{all_deficits(game, p)};
  std::sort(v.sorted_deficits.begin(), v.sorted_deficits.end(),
            [](const Rat& a, const Rat& b) { return a > b; });
  return v;
}

Ordering lex_compare(const DeficitVector& a, const DeficitVector& b) {
  if (a.sorted_deficits.size() != b.sorted_deficits.size())
    throw validation_error("deficit vectors have different lengths");
  for (std::size_t i = 0; i < a.sorted_deficits.size(); ++i) {
    if (a.sorted_deficits[i] < b.sorted_deficits[i]) return Ordering::less;
    if (a.sorted_deficits[i] > b.sorted_deficits[i]) return Ordering::greater;
  }
  return Ordering::equal;
}

DeficitProfile brute_profile(const Game& game, const PayoffVector& p, int j,
                             int guard_n) {
  check_guard(game, guard_n, "brute_profile");
  if (j < 1) throw validation_error("profile depth j must be at least 1");
  if (static_cast<int>(p.size()) != game.agent_count())
    throw validation_error("payoff dimension does not match the game");
  std::map<Rat, Count, std::greater<Rat>> tally;
  for (const Rat& d : all_deficits(game, p)) tally[d] += 1;
  DeficitProfile profile;
  for (const auto& [value, count] : tally) {
    if (static_cast<int>(profile.values.size()) == j) break;
    profile.values.push_back(value);
    profile.counts.push_back(count);
  }
  return profile;
}

namespace {

// Inclusion-minimal masks within `masks` (all of one winning/losing class).
std::vector<std::uint64_t> minimal_masks(std::vector<std::uint64_t> masks) {
  std::sort(masks.begin(), masks.end(),
            [](std::uint64_t a, std::uint64_t b) {
              int pa = __builtin_popcountll(a), pb = __builtin_popcountll(b);
              return pa != pb ? pa < pb : a < b;
            });
  std::vector<std::uint64_t> minimal;
  for (std::uint64_t m : masks) {
    bool dominated = false;
    for (std::uint64_t t : minimal)
      if ((t & m) == t) { dominated = true; break; }
    if (!dominated) minimal.push_back(m);
  }
  return minimal;
}

LinearConstraint coalition_inequality(const Game& game, Coalition s) {
  const int n = game.agent_count();
  LinearConstraint c;
  c.coeffs.assign(n + 1, Rat(0));
  for (int i = 0; i < n; ++i)
    if (s.contains(i)) c.coeffs[i] = 1;
  c.coeffs[n] = 1;  // p(S) + eps >= v(S)
  c.rhs = coalition_value(game, s);
  c.rel = Relation::GreaterEqual;
  return c;
}

LinearConstraint coalition_equality(const Game& game, Coalition s,
                                    const Rat& eps) {
  LinearConstraint c = coalition_inequality(game, s);
  c.coeffs[game.agent_count()] = 0;  // p(S) = v(S) - eps^t
  c.rhs -= eps;
  c.rel = Relation::Equal;
  return c;
}

}  // namespace

PayoffVector brute_nucleolus(const Game& game, int guard_n) {
  check_guard(game, guard_n, "brute_nucleolus");
  const int n = game.agent_count();
  const int nvars = n + 1;  // p_1..p_n, eps
  const std::uint64_t ncoal = 1ull << n;

  // persistent constraints: sum p = 1, p_i >= 0, accumulated equalities
  std::vector<LinearConstraint> equalities;
  {
    LinearConstraint sum{std::vector<Rat>(nvars, Rat(1)), Rat(1),
                         Relation::Equal};
    sum.coeffs[n] = 0;
    equalities.push_back(std::move(sum));
  }
  std::vector<LinearConstraint> bound_rows;
  for (int i = 0; i < n; ++i) {
    LinearConstraint b{std::vector<Rat>(nvars, Rat(0)), Rat(0),
                       Relation::GreaterEqual};
    b.coeffs[i] = 1;
    bound_rows.push_back(std::move(b));
  }

  std::vector<char> fixed(ncoal, 0);
  Rat prev_eps;

  for (int stage = 1; stage <= n + 1; ++stage) {
    // One inequality per remaining coalition; rows dominated by another
    // remaining row (via p >= 0) are redundant and skipped in the LP.
    std::vector<std::uint64_t> winning, losing;
    for (std::uint64_t m = 0; m < ncoal; ++m) {
      if (fixed[m]) continue;
      (coalition_value(game, Coalition(m)) ? winning : losing).push_back(m);
    }
    if (winning.empty() && losing.empty())
      throw contract_error("brute_nucleolus: ran out of coalitions");

    LpProblem lp;
    lp.nvars = nvars;
    lp.constraints = equalities;
    lp.constraints.insert(lp.constraints.end(), bound_rows.begin(),
                          bound_rows.end());
    for (std::uint64_t m : minimal_masks(winning))
      lp.constraints.push_back(coalition_inequality(game, Coalition(m)));
    for (std::uint64_t m : minimal_masks(losing))
      lp.constraints.push_back(coalition_inequality(game, Coalition(m)));
    lp.objective.assign(nvars, Rat(0));
    lp.objective[n] = 1;  // min eps

    auto sol = solve_min(lp);
    const Rat eps = sol.value;
    if (stage > 1 && eps >= prev_eps)
      throw contract_error("brute_nucleolus: eps failed to decrease");
    prev_eps = eps;

    // A relative-interior point of the optimal face classifies tightness
    // of every constraint, including the dominated rows we left out.
    auto face = analyze_face(lp, eps);
    auto interior = combine_points(face.points);

    std::vector<LinearConstraint> hull = equalities;
    for (int i = 0; i < n; ++i)
      if (interior[i] == 0) {
        LinearConstraint e = bound_rows[i];
        e.rel = Relation::Equal;
        hull.push_back(std::move(e));
      }
    {
      LinearConstraint e{std::vector<Rat>(nvars, Rat(0)), eps, Relation::Equal};
      e.coeffs[n] = 1;
      hull.push_back(std::move(e));
    }

    PayoffVector p(interior.begin(), interior.begin() + n);
    for (std::uint64_t m = 0; m < ncoal; ++m) {
      if (fixed[m]) continue;
      if (deficit(game, p, Coalition(m)) == eps) {
        fixed[m] = 1;
        equalities.push_back(coalition_equality(game, Coalition(m), eps));
        hull.push_back(equalities.back());
      }
    }

    auto basis = reduce_equations(nvars, hull);
    if (affine_rank(basis) == nvars) {
      auto point = solve_unique(basis);
      return PayoffVector(point.begin(), point.begin() + n);
    }
  }
  throw contract_error("brute_nucleolus: did not terminate within n stages");
}

}  // namespace nucleo
