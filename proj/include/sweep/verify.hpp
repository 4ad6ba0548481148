#pragma once

#include <string>
#include <vector>

#include "sweep/movingset.hpp"
#include "sweep/play.hpp"
#include "sweep/solver.hpp"

namespace sweep {

struct CheckReport {
  std::string name;
  bool passed = true;
  double worst_violation = 0.0;
  double location = 0.0;  ///< time of the worst violation
  double tolerance_used = 0.0;
  std::string notes;
  bool skipped = false;
};

/// Every row lies in C(t) of its side within tol_feas.
CheckReport check_feasibility(const Trajectory& traj, const MovingSet& ms,
                              const ProjectionConfig& cfg = {});

/// Discrete variational-inequality residual
///   sum_k max(0, <y_{k+1} - z_k, y_{k+1} - y_k>),  z_k = Proj_{C_{k+1}}(y_k),
/// skipping jump-map steps at the excluded times. Passes when the sum is at
/// most N * tol_vi for N checked steps.
CheckReport vi_residual(const Trajectory& traj, const MovingSet& ms,
                        const std::vector<double>& exclude, const ProjectionConfig& cfg = {},
                        double tol_vi = 1e-10);

/// k -> ||yA_k - yB_k|| must be nonincreasing, with zero tolerance.
CheckReport check_contraction(const Trajectory& a, const Trajectory& b);

struct VariationBudget {
  double bound = 0.0;      ///< pV(C) + sum of (score - d_H)
  double tolerance = 0.0;  ///< tol_var
  bool approximate = false;
};

/// Throws Unbounded when a score needs the sup over an unbounded set.
VariationBudget variation_budget(const Trajectory& traj, const MovingSet& ms,
                                 const std::vector<JumpPrescription>& prescriptions,
                                 std::uint64_t seed = 0);

/// variation_total <= pV(C) + sum over prescriptions of (score - d_H) + tol_var,
/// tol_var = 1e-8 + 2 h_max pV(C) / (b - a).
CheckReport check_variation_bound(const Trajectory& traj, const MovingSet& ms,
                                  const std::vector<JumpPrescription>& prescriptions,
                                  std::uint64_t seed = 0);

/// Rate independence for three canned time changes, agreement of the
/// segment-play and extended-play pipelines, and the variation bound of the
/// extended play. With `corrupt` the extended-play output is perturbed
/// before comparison.
std::vector<CheckReport> check_play_properties(const PlayInput& input, const SolverConfig& cfg,
                                               bool corrupt = false);

/// Configuration shared by both pipelines of the equivalence check.
SolverConfig equivalence_config(const SolverConfig& cfg);

/// Recomputes per-row steps and variation_total from the stored values.
void recompute_steps(Trajectory& traj);

// Negative controls: each returns a copy that the matching checker rejects.
Trajectory corrupt_for_feasibility(const Trajectory& traj, const MovingSet& ms,
                                   const ProjectionConfig& cfg = {});
Trajectory corrupt_for_vi(const Trajectory& traj, const std::vector<double>& exclude);
Trajectory corrupt_for_contraction(const Trajectory& a, const Trajectory& b);
Trajectory corrupt_for_variation(const Trajectory& traj, double bound, double tol);

}  // namespace sweep
