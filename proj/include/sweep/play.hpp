#pragma once

#include <vector>

#include "sweep/bvpath.hpp"
#include "sweep/geometry.hpp"
#include "sweep/solver.hpp"

namespace sweep {

/// Input u, characteristic set Z and initial offset z0 = u(a) - y(a).
struct PlayInput {
  BVPath u;
  ConvexSet Z;
  Vec z0;
};

/// Play operator: sweeping by C(t) = u(t) - Z from y(a) = u(a) - z0.
Trajectory play(const PlayInput& input, const SolverConfig& cfg = {});

/// Play on one fixed partition (no refinement).
Trajectory play_on(const PlayInput& input, const std::vector<double>& times,
                   const SolverConfig& cfg = {});

/// One sample of the play solution along the filled input, in the
/// arc-length time of the filled curve.
struct ArcSample {
  double sigma = 0.0;
  Vec y;
};

struct PlayBarResult {
  Trajectory trajectory;         ///< sampled at the original times
  std::vector<ArcSample> arc;    ///< full solution on the filled input
};

/// Extended play: P(filled u) composed with the arc-length map of u.
Trajectory play_bar(const PlayInput& input, const SolverConfig& cfg = {});
PlayBarResult play_bar_detailed(const PlayInput& input, const SolverConfig& cfg = {});

/// Extended play on the partition of one refinement level, without the
/// Cauchy loop (base_steps * 2^level cells, gap substeps scaled alike).
PlayBarResult play_bar_level(const PlayInput& input, const SolverConfig& cfg, int level);

/// Play with a segment-play jump map prescribed at every jump of u.
Trajectory play_segment_jumps(const PlayInput& input, const SolverConfig& cfg = {});

/// Terminal value of play along sigma -> (1 - sigma) u_minus + sigma u_plus
/// with `substeps` uniform steps, started from y_minus.
Vec segment_play_jump(const ConvexSet& Z, const Vec& u_minus, const Vec& u_plus,
                      const Vec& y_minus, int substeps, const SolverConfig& cfg = {});

struct SegmentResult {
  Vec value;
  int substeps = 0;
  double change = 0.0;  ///< movement at the last doubling
  bool converged = false;
};

/// Doubles substeps from cfg.segment_initial_substeps until the terminal
/// value moves less than cfg.segment_tol, or the cap is reached.
SegmentResult segment_play_adaptive(const ConvexSet& Z, const Vec& u_minus, const Vec& u_plus,
                                    const Vec& y_minus, const SolverConfig& cfg = {});

/// Continuous, nondecreasing, surjective piecewise-linear time change.
struct Reparametrization {
  std::vector<double> times;
  std::vector<double> values;

  double operator()(double s) const;
};

/// Validates psi against [a,b]; throws InvalidReparam.
void validate_reparametrization(const Reparametrization& psi, double a, double b);

struct RateIndependenceReport {
  double discrepancy = 0.0;
  std::size_t matched_rows = 0;
  double worst_time = 0.0;
};

/// Both solves of a rate-independence comparison: P(u) on a partition P and
/// P(u o psi) on its psi-preimage `nodes`, with images[i] = psi(nodes[i]).
struct RateIndependenceRun {
  Trajectory direct;
  Trajectory reparam;
  std::vector<double> nodes;
  std::vector<double> images;
};

RateIndependenceRun rate_independence_run(const PlayInput& input, const Reparametrization& psi,
                                          const SolverConfig& cfg = {});

/// Sup-norm discrepancy at matched rows; MismatchedScenario if a row of the
/// reparametrized solve has no partner.
RateIndependenceReport compare_rate_independence(const RateIndependenceRun& run);

/// Compares P(u o psi) with P(u) o psi on psi-matched partitions built from
/// cfg.base_steps uniform cells.
RateIndependenceReport check_rate_independence(const PlayInput& input,
                                               const Reparametrization& psi,
                                               const SolverConfig& cfg = {});

/// u o psi represented with breakpoints at `nodes`, where node_images[i] =
/// psi(nodes[i]). The nodes must contain every psi-preimage of a breakpoint
/// of u and every breakpoint of psi; equal consecutive images mark a flat
/// piece of psi.
BVPath compose_reparametrized(const BVPath& u, const std::vector<double>& nodes,
                              const std::vector<double>& node_images);

/// Identity, a piecewise-linear quadratic and a map with a flat piece.
std::vector<Reparametrization> canned_reparametrizations(double a, double b);

}  // namespace sweep
