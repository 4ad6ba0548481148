#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "sweep/geometry.hpp"
#include "sweep/movingset.hpp"

namespace sweep {

struct SolverConfig {
  int base_steps = 64;
  int max_refine = 8;
  double tol_traj = 1e-4;  ///< sup-norm gap between successive refinements
  ProjectionConfig proj;
  double jump_truncation_eps = 0.0;

  /// Segment-play jumps without explicit substeps: 0 selects the adaptive
  /// rule (segment_initial_substeps, doubled until the terminal value moves
  /// less than segment_tol, at most segment_max_substeps). A positive value
  /// is scaled by 2^level so the segment solve refines with the grid.
  int segment_substeps = 0;
  int segment_initial_substeps = 256;
  double segment_tol = 1e-8;
  int segment_max_substeps = 1 << 16;

  std::uint64_t seed = 0;  ///< direction sampling for approximate Hausdorff
};

enum class JumpKind { Project, DoubleProject, SegmentPlay, FixedTarget };

const char* to_string(JumpKind kind);

/// A prescribed jump map at time t.
///
/// side == Value prescribes y(t) from y(t-) (the g_t, or g_t^l for
/// non-right-continuous sets); side == Right prescribes y(t+) from y(t)
/// and is only accepted by solve_general_bv.
struct JumpPrescription {
  double t = 0.0;
  JumpKind kind = JumpKind::Project;
  Vec target;        ///< FixedTarget only
  int substeps = 0;  ///< SegmentPlay only; 0 defers to SolverConfig
  Side side = Side::Value;
};

struct TrajectoryRow {
  double t = 0.0;
  Side side = Side::Value;
  Vec y;
  double step = 0.0;  ///< ||y - previous row's y||
};

struct RefinementReport {
  int levels = 0;       ///< doublings performed
  int steps_final = 0;  ///< intervals of the final partition
  double cauchy_gap = std::numeric_limits<double>::quiet_NaN();
  bool converged = false;
};

/// Discrete solution: one row per partition node, plus left (and right)
/// rows at jump and prescription times, ordered by (t, side).
struct Trajectory {
  std::vector<TrajectoryRow> rows;
  double variation_total = 0.0;
  RefinementReport refinement;
  double truncation_bound = 0.0;
  int segment_unconverged = 0;  ///< adaptive segment solves that hit the cap

  Eigen::Index dim() const { return rows.empty() ? 0 : rows.front().y.size(); }
  std::vector<double> times() const;
  const TrajectoryRow* find(double t, Side side) const;
  /// Piecewise-constant right-continuous interpolant of the rows.
  Vec value_at(double t) const;
};

/// Largest ||y_coarse - y_fine|| over coarse rows, matched by (t, side).
/// Coarse rows without a partner are ignored.
double sup_gap(const Trajectory& coarse, const Trajectory& fine);

/// Runs solve(level) for level = 0, 1, ... until the gap between successive
/// levels is at most cfg.tol_traj or cfg.max_refine doublings were spent.
Trajectory refine_until_cauchy(const std::function<Trajectory(int)>& solve,
                               const SolverConfig& cfg);

/// a = t_0 < ... < t_n = b uniform, merged with the anchors; grid nodes
/// closer than 1e-12 (b - a) to an anchor are dropped.
std::vector<double> uniform_partition(double a, double b, long n, std::vector<double> anchors);

/// Uniform partition with base_steps * 2^level cells, anchored at the
/// breakpoints of ms and the prescription times.
std::vector<double> scenario_partition(const MovingSet& ms,
                                       const std::vector<JumpPrescription>& prescriptions,
                                       const SolverConfig& cfg, int level);

/// Moreau's catching-up scheme on a fixed partition, which must contain
/// every breakpoint of ms. y0 is snapped onto C(a) when within tol_feas.
Trajectory catching_up(const MovingSet& ms, const Vec& y0, const std::vector<double>& times,
                       const SolverConfig& cfg = {});

/// Sweeping with prescribed jump maps on a right-continuous moving set,
/// refined until Cauchy. Unprescribed jumps use the projection.
Trajectory solve_prescribed(const MovingSet& ms, const std::vector<JumpPrescription>& prescriptions,
                            const Vec& y0, const SolverConfig& cfg = {});

/// Same, on one fixed partition.
Trajectory solve_prescribed_on(const MovingSet& ms,
                               const std::vector<JumpPrescription>& prescriptions, const Vec& y0,
                               const std::vector<double>& times, const SolverConfig& cfg = {},
                               int level = 0);

/// Sweeping driven by an arbitrary BV moving set: y(a) = Proj_{C(a)}(y0),
/// y(t) = g_t^l(y(t-)), y(t+) = g_t^r(y(t)), projections by default.
Trajectory solve_general_bv(const MovingSet& ms, const std::vector<JumpPrescription>& prescriptions,
                            const Vec& y0, const SolverConfig& cfg = {});

Trajectory solve_general_bv_on(const MovingSet& ms,
                               const std::vector<JumpPrescription>& prescriptions, const Vec& y0,
                               const std::vector<double>& times, const SolverConfig& cfg = {},
                               int level = 0);

/// sup over x in the source set of ||g(x) - x||, bounded by the Hausdorff
/// distance for projection-like maps and exact for FixedTarget.
double jump_score(const JumpPrescription& p, const MovingSet& ms, std::uint64_t seed = 0);

struct TruncationResult {
  std::vector<JumpPrescription> kept;
  std::vector<JumpPrescription> dropped;  ///< by decreasing score
  double error_bound = 0.0;
};

/// Drops prescriptions scoring below eps; error_bound sums score + d_H over
/// the dropped ones.
TruncationResult truncate_jump_set(const std::vector<JumpPrescription>& prescriptions,
                                   const MovingSet& ms, double eps, std::uint64_t seed = 0);

}  // namespace sweep
