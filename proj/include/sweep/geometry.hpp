#pragma once

#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

#include "sweep/vector.hpp"

namespace sweep {

struct ProjectionConfig {
  double tol_proj = 1e-10;  ///< Dykstra stop: sweep-to-sweep movement
  int max_iter = 10000;     ///< Dykstra sweeps
  double tol_feas = 1e-9;   ///< membership tolerance for stored states
};

class ConvexSet;

struct Ball {
  Vec center;
  double radius = 0.0;
};

struct Box {
  Vec lo;
  Vec hi;
};

/// The set {x : <normal, x> <= offset}, normal of unit length.
struct Halfspace {
  Vec normal;
  double offset = 0.0;
};

struct HPolytope {
  std::vector<Halfspace> halfspaces;
};

/// The set shift - base = {shift - z : z in base}.
struct Translate {
  std::shared_ptr<const ConvexSet> base;
  Vec shift;
};

enum class SetKind { Ball, Box, Halfspace, HPolytope, Translate };

/// Closed convex subset of R^d with a symbolic description.
///
/// Instances are immutable values. All factories validate their input and
/// throw Error(InvalidArgument) naming the offending field; HPolytope
/// construction additionally verifies nonemptiness.
class ConvexSet {
 public:
  static ConvexSet ball(Vec center, double radius);
  static ConvexSet box(Vec lo, Vec hi);
  static ConvexSet halfspace(Vec normal, double offset);
  static ConvexSet polytope(std::vector<Halfspace> halfspaces,
                            const ProjectionConfig& cfg = {});
  static ConvexSet translate(ConvexSet base, Vec shift);
  static ConvexSet translate(std::shared_ptr<const ConvexSet> base, Vec shift);

  /// Polytope factory without the feasibility search. Only for callers that
  /// already know the set is nonempty (translates, affine interpolation).
  static ConvexSet polytope_unchecked(std::vector<Halfspace> halfspaces);

  Eigen::Index dim() const;
  SetKind kind() const;

  const Ball& as_ball() const { return std::get<Ball>(repr_); }
  const Box& as_box() const { return std::get<Box>(repr_); }
  const Halfspace& as_halfspace() const { return std::get<Halfspace>(repr_); }
  const HPolytope& as_polytope() const { return std::get<HPolytope>(repr_); }
  const Translate& as_translate() const { return std::get<Translate>(repr_); }

  /// Exact structural equality (same variant, bitwise-equal parameters).
  friend bool operator==(const ConvexSet& lhs, const ConvexSet& rhs);

 private:
  using Repr = std::variant<Ball, Box, Halfspace, HPolytope, Translate>;
  explicit ConvexSet(Repr repr) : repr_(std::move(repr)) {}
  Repr repr_;
};

struct ProjectionReport {
  Vec point;
  int iterations = 0;
  double residual = 0.0;
};

/// Euclidean projection. Closed form for Ball/Box/Halfspace (and translates
/// of them); Dykstra's algorithm with an exact active-set finish for
/// HPolytope. Throws IterationLimit if a polytope projection cannot be
/// certified within cfg.max_iter sweeps.
ProjectionReport project(const ConvexSet& set, const Vec& x,
                         const ProjectionConfig& cfg = {});

/// Shorthand for project(...).point.
Vec projection(const ConvexSet& set, const Vec& x, const ProjectionConfig& cfg = {});

/// sup over the set of <dir, z>. Throws Unbounded when infinite.
double support(const ConvexSet& set, const Vec& dir);

bool contains(const ConvexSet& set, const Vec& x, double tol,
              const ProjectionConfig& cfg = {});

double distance(const ConvexSet& set, const Vec& x, const ProjectionConfig& cfg = {});

/// Rewrites translates into the underlying primitive, e.g. shift - Ball(c, r)
/// becomes Ball(shift - c, r). Result never has kind Translate.
ConvexSet canonical(const ConvexSet& set);

struct HausdorffResult {
  double value = 0.0;
  double upper_bound = 0.0;  ///< equals value when exact
  bool approximate = false;
};

/// Hausdorff distance for supported pairs: translates of a common base, two
/// balls, two boxes, two parallel halfspaces (exact), or two bounded
/// polytopes (direction-sampled lower bound plus certified upper bound).
/// Throws UnsupportedPair otherwise.
HausdorffResult hausdorff(const ConvexSet& a, const ConvexSet& b, std::uint64_t seed = 0);

/// max(0, sup_{z in set} <-v, z - y>); zero iff -v lies in the normal cone at y.
double normal_cone_violation(const ConvexSet& set, const Vec& y, const Vec& v);

/// sup over z in the set of ||p - z||. Throws Unbounded for unbounded sets.
double farthest_distance(const ConvexSet& set, const Vec& p);

/// Vertices of a bounded polytope (after canonicalization); used by
/// farthest_distance and by diagnostics. Throws Unbounded if not bounded.
std::vector<Vec> polytope_vertices(const HPolytope& poly);

/// Largest violation max_i(<n_i, x> - c_i, 0).
double infeasibility(const HPolytope& poly, const Vec& x);

}  // namespace sweep
