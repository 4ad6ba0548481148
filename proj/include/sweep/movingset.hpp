#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "sweep/bvpath.hpp"
#include "sweep/geometry.hpp"

namespace sweep {

/// One piece of a family-mode moving set: on [t0, t1] the set parameters
/// move affinely from `start` to `end` (same structure required).
struct FamilySegment {
  double t0 = 0.0;
  double t1 = 0.0;
  ConvexSet start;
  ConvexSet end;
};

/// Explicit C(t) at a segment boundary, for sets that are not right-continuous.
struct FamilyOverride {
  double t = 0.0;
  ConvexSet at;
};

struct JumpRecord {
  double t = 0.0;
  ConvexSet left_set;
  ConvexSet at_set;
  ConvexSet right_set;
};

struct VariationResult {
  double value = 0.0;
  bool approximate = false;
};

/// Affine interpolation of two structurally matching sets; lambda in [0,1].
ConvexSet interpolate(const ConvexSet& from, const ConvexSet& to, double lambda);

/// The driving set t -> C(t) on [a,b].
///
/// Translate mode: C(t) = u(t) - Z, exact variation. Family mode: piecewise
/// affine parameters with optional jump overrides at boundaries.
class MovingSet {
 public:
  static MovingSet translate(ConvexSet base, BVPath path);
  static MovingSet family(std::vector<FamilySegment> segments,
                          std::vector<FamilyOverride> overrides = {});

  double a() const { return a_; }
  double b() const { return b_; }
  Eigen::Index dim() const;
  double time_tol() const { return 1e-12 * (b_ - a_); }

  bool is_translate() const { return path_.has_value(); }
  const ConvexSet& base() const;
  const BVPath& path() const;
  const std::vector<FamilySegment>& segments() const { return segments_; }
  const std::vector<FamilyOverride>& overrides() const { return overrides_; }

  ConvexSet set_at(double t, Side side = Side::Value) const;

  /// Times where the representation may change slope or jump; always
  /// includes a and b.
  std::vector<double> breakpoints() const;

  bool right_continuous() const;

  /// pV(C, [s,t]) in the Hausdorff metric.
  VariationResult variation(double s, double t, std::uint64_t seed = 0) const;

  std::vector<JumpRecord> jump_times(std::uint64_t seed = 0) const;

 private:
  MovingSet() = default;

  double a_ = 0.0;
  double b_ = 1.0;
  std::shared_ptr<const ConvexSet> base_;
  std::optional<BVPath> path_;
  std::vector<FamilySegment> segments_;
  std::vector<FamilyOverride> overrides_;
};

}  // namespace sweep
