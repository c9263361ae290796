#pragma once

#include <cstdint>
#include <vector>

#include "nucleo/deficit_profile.hpp"
#include "nucleo/game.hpp"
#include "nucleo/lp.hpp"

namespace nucleo {

/// Outcome of one linear program in the successive-LP scheme.
struct StageRecord {
  int index = 0;               // 1-based stage number j
  Rat epsilon;                 // eps^j
  Count tight_count;           // s^j = |Sigma^j|, never materialized as a set
  AffineBasis face_basis;      // affine hull of the optimal face, over (p, eps)
  PayoffVector interior_point; // certified relative-interior optimizer p^j
  std::vector<Coalition> generated;  // coalition cuts added during this stage
};

enum class ViolationKind { simple, case_a, case_b, case_c };

struct OracleVerdict {
  bool feasible = false;
  // populated only when !feasible:
  LinearConstraint constraint;  // the row of LP^j the candidate fails
  Coalition witness;
  ViolationKind kind = ViolationKind::simple;
};

struct SolverConfig {
  std::uint64_t seed = 0;
  int certify_samples = 3;      // K randomized interior samples per stage
  long long iteration_cap = 0;  // 0 = default 2^n * (n+1)
  bool check_verdicts = false;  // re-verify every Violated verdict exactly
};

struct SolverStats {
  long long oracle_calls = 0;
  long long cuts_added = 0;
  long long verdicts_checked = 0;
  long long verdict_failures = 0;
};

/// The exact row of LP^j that coalition s contributes, given the certified
/// history: an equation if s is tight at some recorded stage's interior
/// optimizer, otherwise the inequality p(S) + eps >= v(S).
LinearConstraint coalition_row(const Game& game, Coalition s,
                               const std::vector<StageRecord>& history);

/// Counting-based separation oracle for LP^j, j = history.size() + 1.
/// Checks the simple constraints first, then compares the candidate's
/// deficit profile against the recorded (eps^t, s^t) pairs, handling the
/// eps = eps^{j-1} boundary case separately. If profile_out is non-null it
/// receives the candidate's top-j deficit profile (when computed).
OracleVerdict separation_oracle(const Game& game,
                                const std::vector<StageRecord>& history,
                                const PayoffVector& p, const Rat& eps,
                                DeficitProfile* profile_out = nullptr);

/// Locates a violated constraint for an infeasible candidate whose
/// deficit profile has already been computed.
OracleVerdict identify_violation(const Game& game,
                                 const std::vector<StageRecord>& history,
                                 const PayoffVector& p, const Rat& eps,
                                 const DeficitProfile& profile);

/// Runs the cutting-plane loop for stage j = history.size() + 1 and
/// certifies an interior optimizer.
StageRecord solve_stage(const Game& game,
                        const std::vector<StageRecord>& history,
                        const SolverConfig& config = {},
                        SolverStats* stats = nullptr);

struct NucleolusResult {
  PayoffVector payoff;
  std::vector<StageRecord> stages;
  SolverStats stats;
};

/// Runs stages until the accumulated optimal face is a single point;
/// returns the nucleolus and the full stage history.
NucleolusResult nucleolus(const Game& game, const SolverConfig& config = {});

struct LeastCoreResult {
  Rat epsilon;           // eps^1, the least-core value
  PayoffVector payoff;   // an interior optimizer of LP^1
};

LeastCoreResult least_core(const Game& game, const SolverConfig& config = {});

}  // namespace nucleo
