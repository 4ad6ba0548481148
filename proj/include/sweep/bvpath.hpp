#pragma once

#include <vector>

#include "sweep/vector.hpp"

namespace sweep {

/// Values carried by a breakpoint: f(t-), f(t), f(t+).
struct Breakpoint {
  double t = 0.0;
  Vec left;
  Vec value;
  Vec right;
};

/// Bounded-variation curve [a,b] -> R^d with finitely many breakpoints and
/// affine interpolation between right(t_i) and left(t_{i+1}).
///
/// Conventions: f(a-) := f(a) and f(b+) := f(b); the constructor enforces
/// them. A right-continuous path has value == right at every breakpoint.
class BVPath {
 public:
  BVPath(double a, double b, std::vector<Breakpoint> breakpoints, bool right_continuous = true);

  /// Continuous piecewise-linear path through (times[i], values[i]).
  static BVPath piecewise_linear(const std::vector<double>& times, const std::vector<Vec>& values);
  static BVPath constant(double a, double b, const Vec& value);

  double a() const { return a_; }
  double b() const { return b_; }
  Eigen::Index dim() const { return breakpoints_.front().value.size(); }
  bool right_continuous() const { return right_continuous_; }
  const std::vector<Breakpoint>& breakpoints() const { return breakpoints_; }

  /// Equality tolerance for time comparisons, 1e-12 (b - a).
  double time_tol() const { return 1e-12 * (b_ - a_); }

  /// Index of the breakpoint at time t (within time_tol), or -1.
  std::ptrdiff_t breakpoint_index(double t) const;

  Vec eval(double t, Side side = Side::Value) const;

  /// Pointwise variation on [s, t].
  double variation(double s, double t) const;
  double total_variation() const { return variation(a_, b_); }

  /// Times where f(t-) != f(t) or f(t) != f(t+).
  std::vector<double> jump_times() const;

 private:
  double a_;
  double b_;
  std::vector<Breakpoint> breakpoints_;
  bool right_continuous_;
};

/// Normalized arc-length parametrization (ell, filled) with f = filled o ell.
struct ArcLengthParam {
  BVPath ell;           ///< scalar, nondecreasing, range in [a,b]
  BVPath filled;        ///< Lipschitz, jumps replaced by affine segments
  double lip_bound;     ///< pV(f,[a,b]) / (b - a)
  double total_variation;
};

ArcLengthParam arc_length(const BVPath& path);

/// t -> filled(ell(t)). Breakpoints are those of ell plus the preimages of
/// filled's breakpoints, so the result is represented exactly.
BVPath compose(const BVPath& filled, const BVPath& ell);

/// Largest slope between consecutive breakpoints; +inf if the path jumps.
double lipschitz_constant(const BVPath& path);

}  // namespace sweep
