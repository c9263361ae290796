#include "nucleo/lp.hpp"

#include <algorithm>
#include <cstdlib>

#include "nucleo/errors.hpp"

namespace nucleo {

Rat constraint_slack(const LinearConstraint& c, const std::vector<Rat>& x) {
  Rat lhs = 0;
  for (std::size_t i = 0; i < c.coeffs.size(); ++i)
    if (c.coeffs[i] != 0) lhs += c.coeffs[i] * x[i];
  return lhs - c.rhs;
}

bool constraint_satisfied(const LinearConstraint& c, const std::vector<Rat>& x) {
  Rat s = constraint_slack(c, x);
  return c.rel == Relation::Equal ? s == 0 : s >= 0;
}

namespace {

// Dense two-phase simplex tableau over exact rationals.
//
// Variables without a detected non-negativity row are split into a
// positive and a negative part. Rows of the exact form  c*x_i >= 0
// (c > 0) are absorbed as variable bounds instead of tableau rows.
class Simplex {
 public:
  Simplex(const LpProblem& lp) : lp_(lp) { build(); }

  LpSolution run() {
    if (has_artificials_) {
      phase(/*phase1=*/true);
      if (objective_value() != 0)
        throw contract_error("lp: infeasible system");
      drive_out_artificials();
    }
    load_costs(/*phase1=*/false);
    phase(/*phase1=*/false);
    return extract();
  }

 private:
  void build() {
    const int n = lp_.nvars;
    nonneg_.assign(n, false);
    std::vector<const LinearConstraint*> rows;
    for (const auto& c : lp_.constraints) {
      if (c.rel == Relation::GreaterEqual && c.rhs == 0) {
        int nz = -1, cnt = 0;
        for (int j = 0; j < n; ++j)
          if (c.coeffs[j] != 0) { nz = j; ++cnt; }
        if (cnt == 1 && c.coeffs[nz] > 0) {
          nonneg_[nz] = true;  // plain bound x_nz >= 0
          continue;
        }
      }
      rows.push_back(&c);
    }

    pos_col_.assign(n, -1);
    neg_col_.assign(n, -1);
    int ncols = 0;
    for (int j = 0; j < n; ++j) {
      pos_col_[j] = ncols++;
      if (!nonneg_[j]) neg_col_[j] = ncols++;
    }
    nstruct_ = ncols;
    int nslack = 0;
    for (auto* c : rows)
      if (c->rel == Relation::GreaterEqual) ++nslack;
    first_slack_ = ncols;
    ncols += nslack;

    const int m = static_cast<int>(rows.size());
    a_.assign(m, std::vector<Rat>(ncols, Rat(0)));
    b_.assign(m, Rat(0));
    basis_.assign(m, -1);

    int slack = first_slack_;
    std::vector<int> needs_artificial;
    for (int r = 0; r < m; ++r) {
      const auto& c = *rows[r];
      for (int j = 0; j < n; ++j) {
        if (c.coeffs[j] == 0) continue;
        a_[r][pos_col_[j]] = c.coeffs[j];
        if (neg_col_[j] >= 0) a_[r][neg_col_[j]] = -c.coeffs[j];
      }
      b_[r] = c.rhs;
      int srow = -1;
      if (c.rel == Relation::GreaterEqual) {
        srow = slack++;
        a_[r][srow] = -1;
      }
      // flip so the rhs is non-negative; a >= row with zero rhs is also
      // flipped so its surplus column can start in the basis
      if (b_[r] < 0 || (srow >= 0 && b_[r] == 0)) {
        for (auto& v : a_[r]) v = -v;
        b_[r] = -b_[r];
      }
      if (srow >= 0 && a_[r][srow] > 0) {
        basis_[r] = srow;  // flipped surplus column serves as the basis
      } else {
        needs_artificial.push_back(r);
      }
    }

    first_artificial_ = ncols;
    has_artificials_ = !needs_artificial.empty();
    for (int r : needs_artificial) {
      for (auto& row : a_) row.push_back(Rat(0));
      a_[r].back() = 1;
      basis_[r] = ncols++;
    }
    ncols_ = ncols;
    if (has_artificials_) load_costs(/*phase1=*/true);
  }

  void load_costs(bool phase1) {
    cost_.assign(ncols_, Rat(0));
    if (phase1) {
      for (int j = first_artificial_; j < ncols_; ++j) cost_[j] = 1;
    } else {
      for (int j = 0; j < lp_.nvars; ++j) {
        if (lp_.objective[j] == 0) continue;
        cost_[pos_col_[j]] = lp_.objective[j];
        if (neg_col_[j] >= 0) cost_[neg_col_[j]] = -lp_.objective[j];
      }
    }
    // reduced costs w.r.t. the current basis
    red_ = cost_;
    for (std::size_t r = 0; r < basis_.size(); ++r) {
      const Rat& cb = cost_[basis_[r]];
      if (cb == 0) continue;
      for (int j = 0; j < ncols_; ++j)
        if (a_[r][j] != 0) red_[j] -= cb * a_[r][j];
    }
  }

  Rat objective_value() const {
    Rat z = 0;
    for (std::size_t r = 0; r < basis_.size(); ++r)
      if (cost_[basis_[r]] != 0) z += cost_[basis_[r]] * b_[r];
    return z;
  }

  bool column_usable(int j, bool phase1) const {
    if (!phase1 && j >= first_artificial_) return false;
    return true;
  }

  void phase(bool phase1) {
    const int m = static_cast<int>(basis_.size());
    long stall = 0;
    bool bland = false;
    Rat last = objective_value();
    for (;;) {
      int enter = -1;
      if (bland) {
        for (int j = 0; j < ncols_; ++j)
          if (column_usable(j, phase1) && red_[j] < 0) { enter = j; break; }
      } else {
        const Rat* best = nullptr;
        for (int j = 0; j < ncols_; ++j)
          if (column_usable(j, phase1) && red_[j] < 0 &&
              (!best || red_[j] < *best)) {
            best = &red_[j];
            enter = j;
          }
      }
      if (enter < 0) return;  // optimal for this phase

      int leave = -1;
      for (int r = 0; r < m; ++r) {
        if (a_[r][enter] <= 0) continue;
        if (leave < 0) { leave = r; continue; }
        Rat diff = b_[r] * a_[leave][enter] - b_[leave] * a_[r][enter];
        if (diff < 0 || (diff == 0 && basis_[r] < basis_[leave])) leave = r;
      }
      if (leave < 0) throw contract_error("lp: unbounded below");
      pivot(leave, enter);

      Rat z = objective_value();
      if (z == last) {
        if (++stall > m + 8) bland = true;  // Bland's rule breaks cycles
      } else {
        stall = 0;
        bland = false;
        last = z;
      }
    }
  }

  void pivot(int r, int e) {
    Rat inv = 1 / a_[r][e];
    if (inv != 1)
      for (int j = 0; j < ncols_; ++j)
        if (a_[r][j] != 0) a_[r][j] *= inv;
    b_[r] *= inv;
    a_[r][e] = 1;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (static_cast<int>(i) == r || a_[i][e] == 0) continue;
      Rat f = a_[i][e];
      for (int j = 0; j < ncols_; ++j)
        if (a_[r][j] != 0) a_[i][j] -= f * a_[r][j];
      a_[i][e] = 0;
      b_[i] -= f * b_[r];
    }
    if (red_[e] != 0) {
      Rat f = red_[e];
      for (int j = 0; j < ncols_; ++j)
        if (a_[r][j] != 0) red_[j] -= f * a_[r][j];
      red_[e] = 0;
    }
    basis_[r] = e;
  }

  void drive_out_artificials() {
    for (std::size_t r = 0; r < basis_.size();) {
      if (basis_[r] < first_artificial_) { ++r; continue; }
      int e = -1;
      for (int j = 0; j < first_artificial_; ++j)
        if (a_[r][j] != 0) { e = j; break; }
      if (e >= 0) {
        pivot(static_cast<int>(r), e);
        ++r;
      } else {
        // redundant row
        a_.erase(a_.begin() + r);
        b_.erase(b_.begin() + r);
        basis_.erase(basis_.begin() + r);
      }
    }
  }

  LpSolution extract() const {
    std::vector<Rat> cols(nstruct_, Rat(0));
    for (std::size_t r = 0; r < basis_.size(); ++r)
      if (basis_[r] < nstruct_) cols[basis_[r]] = b_[r];
    LpSolution sol;
    sol.point.assign(lp_.nvars, Rat(0));
    sol.value = 0;
    for (int j = 0; j < lp_.nvars; ++j) {
      sol.point[j] = cols[pos_col_[j]];
      if (neg_col_[j] >= 0) sol.point[j] -= cols[neg_col_[j]];
      if (lp_.objective[j] != 0) sol.value += lp_.objective[j] * sol.point[j];
    }
    return sol;
  }

  const LpProblem& lp_;
  std::vector<std::vector<Rat>> a_;
  std::vector<Rat> b_, cost_, red_;
  std::vector<int> basis_, pos_col_, neg_col_;
  std::vector<bool> nonneg_;
  int nstruct_ = 0, first_slack_ = 0, first_artificial_ = 0, ncols_ = 0;
  bool has_artificials_ = false;
};

}  // namespace

LpSolution solve_min(const LpProblem& lp) {
  if (static_cast<int>(lp.objective.size()) != lp.nvars)
    throw contract_error("lp: objective dimension mismatch");
  for (const auto& c : lp.constraints)
    if (static_cast<int>(c.coeffs.size()) != lp.nvars)
      throw contract_error("lp: constraint dimension mismatch");
  Simplex s(lp);
  return s.run();
}

namespace {

// Reduced row echelon form of [coeffs | rhs]; returns pivot columns.
// Throws on 0 = nonzero rows when check_consistency is set.
std::vector<int> rref(std::vector<std::vector<Rat>>& rows, int nvars,
                      bool check_consistency) {
  std::vector<int> pivots;
  int r = 0;
  const int m = static_cast<int>(rows.size());
  for (int col = 0; col < nvars && r < m; ++col) {
    int pr = -1;
    for (int i = r; i < m; ++i)
      if (rows[i][col] != 0) { pr = i; break; }
    if (pr < 0) continue;
    std::swap(rows[r], rows[pr]);
    Rat inv = 1 / rows[r][col];
    if (inv != 1)
      for (auto& v : rows[r])
        if (v != 0) v *= inv;
    for (int i = 0; i < m; ++i) {
      if (i == r || rows[i][col] == 0) continue;
      Rat f = rows[i][col];
      for (int j = col; j <= nvars; ++j)
        if (rows[r][j] != 0) rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back(col);
    ++r;
  }
  if (check_consistency) {
    for (int i = r; i < m; ++i)
      if (rows[i][nvars] != 0)
        throw contract_error("inconsistent equation system");
  }
  rows.resize(r);
  return pivots;
}

std::vector<std::vector<Rat>> to_rows(int nvars,
                                      const std::vector<LinearConstraint>& eqs) {
  std::vector<std::vector<Rat>> rows;
  rows.reserve(eqs.size());
  for (const auto& e : eqs) {
    std::vector<Rat> row(e.coeffs);
    row.push_back(e.rhs);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

AffineBasis reduce_equations(int nvars,
                             const std::vector<LinearConstraint>& eqs) {
  auto rows = to_rows(nvars, eqs);
  rref(rows, nvars, /*check_consistency=*/true);
  AffineBasis basis;
  basis.nvars = nvars;
  for (auto& row : rows) {
    LinearConstraint c;
    c.rhs = row.back();
    row.pop_back();
    c.coeffs = std::move(row);
    c.rel = Relation::Equal;
    basis.equations.push_back(std::move(c));
  }
  return basis;
}

int affine_rank(const AffineBasis& basis) {
  // rank of the coefficient matrix only
  std::vector<std::vector<Rat>> rows;
  rows.reserve(basis.equations.size());
  for (const auto& e : basis.equations) {
    auto row = e.coeffs;
    row.push_back(Rat(0));
    rows.push_back(std::move(row));
  }
  auto pivots = rref(rows, basis.nvars, false);
  return static_cast<int>(pivots.size());
}

std::vector<Rat> solve_unique(const AffineBasis& basis) {
  auto rows = to_rows(basis.nvars, basis.equations);
  auto pivots = rref(rows, basis.nvars, /*check_consistency=*/true);
  if (static_cast<int>(pivots.size()) != basis.nvars)
    throw contract_error("equation system does not pin a unique point");
  std::vector<Rat> x(basis.nvars, Rat(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = rows[r].back();
  return x;
}

std::vector<Rat> combine_points(const std::vector<std::vector<Rat>>& points,
                                const std::vector<Rat>& weights) {
  if (points.empty()) throw contract_error("no points to combine");
  const std::size_t n = points[0].size();
  std::vector<Rat> out(n, Rat(0));
  Rat total = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    Rat w = weights.empty() ? Rat(1) : weights[i % weights.size()];
    if (w <= 0) throw contract_error("combination weights must be positive");
    total += w;
    for (std::size_t j = 0; j < n; ++j) out[j] += w * points[i][j];
  }
  for (auto& v : out) v /= total;
  return out;
}

FaceAnalysis analyze_face(const LpProblem& lp, const Rat& opt) {
  FaceAnalysis fa;
  const int n = lp.nvars;

  std::vector<LinearConstraint> rows = lp.constraints;
  LinearConstraint obj_row{lp.objective, opt, Relation::Equal};
  rows.push_back(obj_row);

  LpProblem face{n, rows, std::vector<Rat>(n, Rat(0))};
  fa.points.push_back(solve_min(face).point);  // any face point

  const std::size_t m = lp.constraints.size();
  fa.implied.assign(m, 0);
  std::vector<char> resolved(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (lp.constraints[i].rel == Relation::Equal) {
      fa.implied[i] = 1;
      resolved[i] = 1;
    }
  }

  for (;;) {
    auto avg = combine_points(fa.points);
    std::size_t next = m;
    for (std::size_t i = 0; i < m; ++i) {
      if (resolved[i]) continue;
      if (constraint_slack(lp.constraints[i], avg) > 0) {
        resolved[i] = 1;  // strictly slack somewhere on the face
      } else if (next == m) {
        next = i;
      }
    }
    if (next == m) break;
    // maximize this constraint's slack over the face
    LpProblem sub = face;
    for (int j = 0; j < n; ++j) sub.objective[j] = -lp.constraints[next].coeffs[j];
    auto sol = solve_min(sub);
    Rat max_slack = -sol.value - lp.constraints[next].rhs;
    resolved[next] = 1;
    if (max_slack == 0) {
      fa.implied[next] = 1;
    } else {
      fa.points.push_back(std::move(sol.point));
    }
  }

  std::vector<LinearConstraint> hull;
  for (std::size_t i = 0; i < m; ++i) {
    if (!fa.implied[i]) continue;
    LinearConstraint e = lp.constraints[i];
    e.rel = Relation::Equal;
    hull.push_back(std::move(e));
  }
  hull.push_back(obj_row);
  fa.basis = reduce_equations(n, hull);
  return fa;
}

AffineBasis optimal_face_basis(const LpProblem& lp, const Rat& opt) {
  return analyze_face(lp, opt).basis;
}

std::vector<Rat> relative_interior_point(
    const AffineBasis& equalities,
    const std::vector<LinearConstraint>& inequalities,
    const std::vector<Rat>& weights) {
  LpProblem lp;
  lp.nvars = equalities.nvars;
  lp.constraints = equalities.equations;
  lp.constraints.insert(lp.constraints.end(), inequalities.begin(),
                        inequalities.end());
  lp.objective.assign(lp.nvars, Rat(0));
  auto fa = analyze_face(lp, Rat(0));
  return combine_points(fa.points, weights);
}

}  // namespace nucleo
