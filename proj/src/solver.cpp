#include "nucleo/solver.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "nucleo/dp.hpp"
#include "nucleo/errors.hpp"

namespace nucleo {

namespace {

void check_history(const Game& game, const std::vector<StageRecord>& history) {
  const Rat* prev = nullptr;
  for (const auto& rec : history) {
    if (static_cast<int>(rec.interior_point.size()) != game.agent_count())
      throw contract_error("stage history does not match the game");
    if (prev && !(rec.epsilon < *prev))
      throw contract_error("stage history has non-decreasing epsilon");
    prev = &rec.epsilon;
  }
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

OracleVerdict violated(LinearConstraint c, Coalition s, ViolationKind kind) {
  OracleVerdict v;
  v.feasible = false;
  v.constraint = std::move(c);
  v.witness = s;
  v.kind = kind;
  return v;
}

}  // namespace

LinearConstraint coalition_row(const Game& game, Coalition s,
                               const std::vector<StageRecord>& history) {
  for (const auto& rec : history) {
    if (deficit(game, rec.interior_point, s) == rec.epsilon) {
      // s is in Sigma^t: its row is the equation p(S) = v(S) - eps^t
      LinearConstraint c = coalition_inequality(game, s);
      c.coeffs[game.agent_count()] = 0;
      c.rhs -= rec.epsilon;
      c.rel = Relation::Equal;
      return c;
    }
  }
  return coalition_inequality(game, s);
}

OracleVerdict separation_oracle(const Game& game,
                                const std::vector<StageRecord>& history,
                                const PayoffVector& p, const Rat& eps,
                                DeficitProfile* profile_out) {
  const int n = game.agent_count();
  const int j = static_cast<int>(history.size()) + 1;
  check_history(game, history);
  if (static_cast<int>(p.size()) != n)
    throw validation_error("candidate dimension does not match the game");

  // simple constraints: p_i >= 0, sum p = 1, eps <= eps^{j-1}
  for (int i = 0; i < n; ++i) {
    if (p[i] < 0) {
      LinearConstraint c{std::vector<Rat>(n + 1, Rat(0)), Rat(0),
                         Relation::GreaterEqual};
      c.coeffs[i] = 1;
      return violated(std::move(c), Coalition().with(i), ViolationKind::simple);
    }
  }
  Rat total = 0;
  for (const Rat& x : p) total += x;
  if (total != 1) {
    LinearConstraint c{std::vector<Rat>(n + 1, Rat(1)), Rat(1), Relation::Equal};
    c.coeffs[n] = 0;
    return violated(std::move(c), game.grand_coalition(), ViolationKind::simple);
  }
  if (j >= 2 && eps > history.back().epsilon) {
    LinearConstraint c{std::vector<Rat>(n + 1, Rat(0)),
                       -history.back().epsilon, Relation::GreaterEqual};
    c.coeffs[n] = -1;  // -eps >= -eps^{j-1}
    return violated(std::move(c), Coalition(), ViolationKind::simple);
  }

  auto tables = build_tables(game, p, j, /*with_witnesses=*/true);
  auto profile = top_deficits(tables, game, j);
  if (profile_out) *profile_out = profile;

  const bool boundary = j >= 2 && eps == history.back().epsilon;
  const int value_checks = j - 1;
  const int count_checks = boundary ? j - 2 : j - 1;
  bool ok = true;
  for (int t = 0; t < value_checks && ok; ++t)
    ok = t < static_cast<int>(profile.values.size()) &&
         profile.values[t] == history[t].epsilon &&
         (t >= count_checks || profile.counts[t] == history[t].tight_count);
  if (ok && !boundary) {
    // m^j <= eps; a missing j-th level means no coalition is left over
    ok = static_cast<int>(profile.values.size()) < j ||
         profile.values[j - 1] <= eps;
  }
  if (ok) return OracleVerdict{true, {}, Coalition(), ViolationKind::simple};
  return identify_violation(game, history, p, eps, profile);
}

OracleVerdict identify_violation(const Game& game,
                                 const std::vector<StageRecord>& history,
                                 const PayoffVector& p, const Rat& eps,
                                 const DeficitProfile& profile) {
  const int j = static_cast<int>(history.size()) + 1;
  const bool boundary = j >= 2 && eps == history.back().epsilon;
  const auto levels = static_cast<int>(profile.values.size());

  // case (a): the l-th distinct deficit is not eps^l
  for (int l = 1; l <= j - 1; ++l) {
    const Rat& eps_l = history[l - 1].epsilon;
    if (l <= levels && profile.values[l - 1] == eps_l) continue;
    if (l <= levels && profile.values[l - 1] > eps_l) {
      auto tables = build_tables(game, p, j, /*with_witnesses=*/true);
      Coalition s = witness_at(tables, game, profile.values[l - 1]);
      return violated(coalition_row(game, s, history), s, ViolationKind::case_a);
    }
    // m^l < eps^l (or the profile is exhausted): some member of Sigma^l no
    // longer sits at eps^l; peel it out of the stored interior optimizer
    Coalition s = peel_witness(game, history[l - 1].interior_point, p, eps_l);
    return violated(coalition_row(game, s, history), s, ViolationKind::case_a);
  }

  // case (b): values match but the l-th count differs
  const int count_checks = boundary ? j - 2 : j - 1;
  for (int l = 1; l <= count_checks; ++l) {
    const auto& rec = history[l - 1];
    if (profile.counts[l - 1] == rec.tight_count) continue;
    if (profile.counts[l - 1] > rec.tight_count) {
      Coalition s = peel_witness(game, p, rec.interior_point, rec.epsilon);
      return violated(coalition_row(game, s, history), s, ViolationKind::case_b);
    }
    Coalition s = peel_witness(game, rec.interior_point, p, rec.epsilon);
    return violated(coalition_row(game, s, history), s, ViolationKind::case_b);
  }

  // case (c): everything matches but m^j > eps
  if (!boundary && levels >= j && profile.values[j - 1] > eps) {
    auto tables = build_tables(game, p, j, /*with_witnesses=*/true);
    Coalition s = witness_at(tables, game, profile.values[j - 1]);
    return violated(coalition_inequality(game, s), s, ViolationKind::case_c);
  }
  throw contract_error("identify_violation: candidate is not infeasible");
}

namespace {

void verify_verdict(const Game& game, const PayoffVector& p, const Rat& eps,
                    const OracleVerdict& verdict, SolverStats& stats) {
  ++stats.verdicts_checked;
  std::vector<Rat> x(p);
  x.push_back(eps);
  if (constraint_satisfied(verdict.constraint, x)) {
    ++stats.verdict_failures;
    return;
  }
  if (verdict.kind != ViolationKind::simple) {
    // the named row must really be the witness coalition's row
    const int n = game.agent_count();
    for (int i = 0; i < n; ++i)
      if (verdict.constraint.coeffs[i] != Rat(verdict.witness.contains(i) ? 1 : 0)) {
        ++stats.verdict_failures;
        return;
      }
  }
}

struct StageRows {
  std::vector<LinearConstraint> rows;
  std::set<std::uint64_t> cut_masks;
};

StageRows base_rows(const Game& game, const std::vector<StageRecord>& history) {
  const int n = game.agent_count();
  const int nvars = n + 1;
  StageRows out;

  LinearConstraint sum{std::vector<Rat>(nvars, Rat(1)), Rat(1), Relation::Equal};
  sum.coeffs[n] = 0;
  out.rows.push_back(std::move(sum));
  for (int i = 0; i < n; ++i) {
    LinearConstraint b{std::vector<Rat>(nvars, Rat(0)), Rat(0),
                       Relation::GreaterEqual};
    b.coeffs[i] = 1;
    out.rows.push_back(std::move(b));
  }
  // eps >= -1 keeps the relaxation bounded before any coalition cut
  // arrives; every deficit of an imputation is at least -1
  {
    LinearConstraint lo{std::vector<Rat>(nvars, Rat(0)), Rat(-1),
                        Relation::GreaterEqual};
    lo.coeffs[n] = 1;
    out.rows.push_back(std::move(lo));
  }
  if (!history.empty()) {
    LinearConstraint hi{std::vector<Rat>(nvars, Rat(0)),
                        -history.back().epsilon, Relation::GreaterEqual};
    hi.coeffs[n] = -1;  // eps <= eps^{j-1}
    out.rows.push_back(std::move(hi));
  }
  // affine hulls of all previous optimal faces, with eps pinned to the
  // stage value (valid equations for every later linear program)
  for (const auto& rec : history) {
    for (const auto& e : rec.face_basis.equations) {
      LinearConstraint row = e;
      row.rhs -= row.coeffs[n] * rec.epsilon;
      row.coeffs[n] = 0;
      bool all_zero = true;
      for (const Rat& c : row.coeffs)
        if (c != 0) { all_zero = false; break; }
      if (!all_zero) out.rows.push_back(std::move(row));
    }
  }
  return out;
}

void add_cut(const Game& game, const std::vector<StageRecord>& history,
             StageRows& rows, Coalition s) {
  if (!rows.cut_masks.insert(s.mask).second)
    throw contract_error("solve_stage: oracle repeated a generated constraint");
  rows.rows.push_back(coalition_row(game, s, history));
}

}  // namespace

StageRecord solve_stage(const Game& game,
                        const std::vector<StageRecord>& history,
                        const SolverConfig& config, SolverStats* stats) {
  check_history(game, history);
  const int n = game.agent_count();
  const int nvars = n + 1;
  const int j = static_cast<int>(history.size()) + 1;

  SolverStats local_stats;
  SolverStats& st = stats ? *stats : local_stats;

  StageRows rows = base_rows(game, history);
  std::vector<Coalition> generated;
  auto cut = [&](Coalition s) {
    add_cut(game, history, rows, s);
    generated.push_back(s);
    ++st.cuts_added;
  };
  // carry over every coalition cut from earlier stages
  for (const auto& rec : history)
    for (Coalition s : rec.generated)
      add_cut(game, history, rows, s);
  if (j == 1) cut(Coalition());  // the empty coalition's row: eps >= 0

  auto query = [&](const PayoffVector& p, const Rat& eps,
                   DeficitProfile* profile) {
    ++st.oracle_calls;
    OracleVerdict v = separation_oracle(game, history, p, eps, profile);
    if (!v.feasible && config.check_verdicts)
      verify_verdict(game, p, eps, v, st);
    return v;
  };

  long long cap = config.iteration_cap;
  if (cap <= 0)
    cap = (n >= 62 ? (1ll << 62) : (1ll << n) * (n + 1));

  std::mt19937_64 rng(config.seed * 0x9e3779b97f4a7c15ull + j);
  std::uniform_int_distribution<int> weight_dist(1, 64);

  LpProblem lp;
  lp.nvars = nvars;
  lp.objective.assign(nvars, Rat(0));
  lp.objective[n] = 1;  // min eps

  for (long long iter = 0; iter < cap; ++iter) {
    lp.constraints = rows.rows;
    auto sol = solve_min(lp);
    PayoffVector p_vertex(sol.point.begin(), sol.point.begin() + n);

    auto verdict = query(p_vertex, sol.value, nullptr);
    if (!verdict.feasible) {
      if (verdict.kind == ViolationKind::simple)
        throw contract_error("solve_stage: relaxation violated a simple row");
      cut(verdict.witness);
      continue;
    }

    // the vertex is feasible, so sol.value is the exact stage optimum;
    // now certify a relative-interior optimizer
    const Rat eps_j = sol.value;
    auto face = analyze_face(lp, eps_j);

    std::vector<std::vector<Rat>> candidates;
    candidates.push_back(combine_points(face.points));
    for (int k = 1; k < config.certify_samples; ++k) {
      std::vector<Rat> weights(face.points.size());
      for (auto& w : weights) w = weight_dist(rng);
      candidates.push_back(combine_points(face.points, weights));
    }

    bool cut_added = false;
    std::vector<DeficitProfile> profiles(candidates.size());
    for (std::size_t k = 0; k < candidates.size() && !cut_added; ++k) {
      PayoffVector pc(candidates[k].begin(), candidates[k].begin() + n);
      auto v = query(pc, candidates[k][n], &profiles[k]);
      if (!v.feasible) {
        if (v.kind == ViolationKind::simple)
          throw contract_error("solve_stage: interior sample violated a simple row");
        cut(v.witness);
        cut_added = true;
      }
    }
    if (cut_added) continue;

    std::size_t pick = 0;
    bool agree = true;
    for (std::size_t k = 1; k < profiles.size(); ++k)
      if (!(profiles[k] == profiles[0])) { agree = false; break; }
    if (!agree) {
      // tie-break non-generic samples: their average is tight only where
      // all of them are, hence closer to the relative interior
      auto mean = combine_points(candidates);
      PayoffVector pm(mean.begin(), mean.begin() + n);
      DeficitProfile mp;
      auto v = query(pm, mean[n], &mp);
      if (!v.feasible) {
        cut(v.witness);
        continue;
      }
      candidates[0] = std::move(mean);
      profiles[0] = std::move(mp);
      pick = 0;
    }

    const auto& profile = profiles[pick];
    if (static_cast<int>(profile.values.size()) < j ||
        profile.values[j - 1] != eps_j)
      throw contract_error("solve_stage: certified profile misses eps^j");

    StageRecord rec;
    rec.index = j;
    rec.epsilon = eps_j;
    rec.tight_count = profile.counts[j - 1];  // s^j = n^j
    rec.face_basis = face.basis;
    rec.interior_point.assign(candidates[pick].begin(),
                              candidates[pick].begin() + n);
    rec.generated = std::move(generated);
    return rec;
  }
  throw contract_error("solve_stage: iteration cap exceeded");
}

NucleolusResult nucleolus(const Game& game, const SolverConfig& config) {
  const int n = game.agent_count();
  NucleolusResult result;
  int prev_rank = 0;
  for (int stage = 1; stage <= n; ++stage) {
    StageRecord rec = solve_stage(game, result.stages, config, &result.stats);
    int rank = affine_rank(rec.face_basis);
    if (rank <= prev_rank)
      throw contract_error("nucleolus: affine rank did not increase");
    prev_rank = rank;
    result.stages.push_back(std::move(rec));
    if (rank == n + 1) {
      auto point = solve_unique(result.stages.back().face_basis);
      result.payoff.assign(point.begin(), point.begin() + n);
      return result;
    }
  }
  throw contract_error("nucleolus: did not terminate within n stages");
}

LeastCoreResult least_core(const Game& game, const SolverConfig& config) {
  SolverStats stats;
  StageRecord rec = solve_stage(game, {}, config, &stats);
  return LeastCoreResult{rec.epsilon, rec.interior_point};
}

}  // namespace nucleo
