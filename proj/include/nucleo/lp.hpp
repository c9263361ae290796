#pragma once

#include <cstddef>
#include <vector>

#include "nucleo/rational.hpp"

namespace nucleo {

enum class Relation { GreaterEqual, Equal };

/// One linear constraint over the problem variables:
///   coeffs . x  (>=|=)  rhs
struct LinearConstraint {
  std::vector<Rat> coeffs;
  Rat rhs;
  Relation rel = Relation::GreaterEqual;
};

/// Evaluates coeffs . x - rhs.
Rat constraint_slack(const LinearConstraint& c, const std::vector<Rat>& x);

bool constraint_satisfied(const LinearConstraint& c, const std::vector<Rat>& x);

/// A finite linear program: minimize objective . x over the constraints.
struct LpProblem {
  int nvars = 0;
  std::vector<LinearConstraint> constraints;
  std::vector<Rat> objective;  // size nvars
};

struct LpSolution {
  Rat value;
  std::vector<Rat> point;  // a vertex attaining the optimum
};

/// Exact two-phase simplex (Bland's rule for anti-cycling).
/// Throws contract_error if the problem is infeasible or unbounded below;
/// every call site in this artifact constructs feasible bounded programs.
LpSolution solve_min(const LpProblem& lp);

/// Independent linear equations over the problem variables; the solution
/// set is the affine hull they describe. Rows are kept in reduced
/// row-echelon form, so equal hulls produce identical bases.
struct AffineBasis {
  int nvars = 0;
  std::vector<LinearConstraint> equations;  // all Relation::Equal
};

/// Rank of the equation system over the rationals.
int affine_rank(const AffineBasis& basis);

/// Reduces arbitrary equation rows to an AffineBasis (drops dependent and
/// all-zero rows). Throws contract_error on an inconsistent system
/// (0 = nonzero row).
AffineBasis reduce_equations(int nvars, const std::vector<LinearConstraint>& rows);

/// Solves a basis of full rank nvars for its unique point.
std::vector<Rat> solve_unique(const AffineBasis& basis);

/// Detailed optimal-face analysis, shared by optimal_face_basis,
/// relative_interior_point and the solver's stage loop.
struct FaceAnalysis {
  AffineBasis basis;  // affine hull of the optimal face (includes obj = opt)
  std::vector<char> implied;            // per constraint: tight on the whole face
  std::vector<std::vector<Rat>> points; // face points collected along the way;
                                        // every non-implied inequality is
                                        // strictly slack at at least one of them
};

/// Analyzes the face {x feasible : objective . x = opt}. `opt` must be
/// attainable (typically the optimum); infeasibility is a contract error.
FaceAnalysis analyze_face(const LpProblem& lp, const Rat& opt);

/// Affine hull of the argmin set of lp, given its exact optimum.
AffineBasis optimal_face_basis(const LpProblem& lp, const Rat& opt);

/// A point satisfying all equalities and, strictly, every inequality that
/// is not an implied equality of the system. Computed by averaging the
/// optimal points of per-inequality max-slack subproblems.
/// `weights`, when non-empty, gives positive mixing weights for the
/// averaged points (used for seeded randomized interior samples); it is
/// cycled if shorter than the number of points.
std::vector<Rat> relative_interior_point(
    const AffineBasis& equalities,
    const std::vector<LinearConstraint>& inequalities,
    const std::vector<Rat>& weights = {});

/// Convex combination of the collected face points with positive weights
/// (cycled); with empty weights, the uniform average.
std::vector<Rat> combine_points(const std::vector<std::vector<Rat>>& points,
                                const std::vector<Rat>& weights = {});

}  // namespace nucleo
