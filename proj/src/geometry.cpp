#include "sweep/geometry.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "lp.hpp"
#include "sweep/errors.hpp"

namespace sweep {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::IterationLimit: return "IterationLimit";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::UnsupportedPair: return "UnsupportedPair";
    case ErrorCode::InfeasibleStart: return "InfeasibleStart";
    case ErrorCode::PrescriptionInfeasible: return "PrescriptionInfeasible";
    case ErrorCode::MismatchedScenario: return "MismatchedScenario";
    case ErrorCode::InvalidReparam: return "InvalidReparam";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

const char* to_string(Side side) {
  switch (side) {
    case Side::Left: return "left";
    case Side::Value: return "value";
    case Side::Right: return "right";
  }
  return "value";
}

void require_vector(const Vec& v, Eigen::Index dim, const std::string& what) {
  if (dim >= 0 && v.size() != dim) {
    throw Error(ErrorCode::InvalidArgument,
                what + ": expected dimension " + std::to_string(dim) + ", got " +
                    std::to_string(v.size()));
  }
  if (v.size() == 0) {
    throw Error(ErrorCode::InvalidArgument, what + ": empty vector");
  }
  if (!v.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, what + ": non-finite coordinate");
  }
}

namespace {

constexpr double kUnitNormTol = 1e-12;

Vec project_halfspace(const Halfspace& h, const Vec& x) {
  const double excess = h.normal.dot(x) - h.offset;
  if (excess <= 0.0) return x;
  return x - excess * h.normal;
}

Halfspace flip_through(const Halfspace& h, const Vec& shift) {
  // shift - {z : <n,z> <= c} = {x : <-n, x> <= c - <n, shift>}
  return Halfspace{-h.normal, h.offset - h.normal.dot(shift)};
}

double polytope_scale(const HPolytope& poly, const Vec& x) {
  double s = 1.0 + x.cwiseAbs().maxCoeff();
  for (const auto& h : poly.halfspaces) s = std::max(s, std::abs(h.offset));
  return s;
}

// Exact projection onto {z : <n_i, z> = c_i, i in active}; accepted only if
// the KKT conditions of the full polytope projection hold.
bool polish(const HPolytope& poly, const Vec& x0, const std::vector<std::size_t>& active,
            Vec& out) {
  const Eigen::Index d = x0.size();
  const double tol = 1e-12 * polytope_scale(poly, x0);
  if (active.empty()) {
    if (infeasibility(poly, x0) > tol) return false;
    out = x0;
    return true;
  }
  const auto k = static_cast<Eigen::Index>(active.size());
  Eigen::MatrixXd N(k, d);
  Eigen::VectorXd c(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    N.row(i) = poly.halfspaces[active[static_cast<std::size_t>(i)]].normal.transpose();
    c(i) = poly.halfspaces[active[static_cast<std::size_t>(i)]].offset;
  }
  const Eigen::MatrixXd gram = N * N.transpose();
  const Eigen::VectorXd mu = gram.completeOrthogonalDecomposition().solve(N * x0 - c);
  const Vec z = x0 - N.transpose() * mu;
  if (mu.minCoeff() < -1e-10 * (1.0 + mu.cwiseAbs().maxCoeff())) return false;
  if (((N * z - c).cwiseAbs().maxCoeff()) > tol) return false;
  if (infeasibility(poly, z) > tol) return false;
  out = z;
  return true;
}

ProjectionReport project_polytope(const HPolytope& poly, const Vec& x0,
                                  const ProjectionConfig& cfg) {
  ProjectionReport rep;
  if (infeasibility(poly, x0) <= 0.0) {
    rep.point = x0;
    return rep;
  }
  const std::size_t m = poly.halfspaces.size();
  std::vector<Vec> incr(m, Vec::Zero(x0.size()));
  Vec x = x0;
  bool converged = false;
  int it = 0;
  double moved = 0.0;
  for (it = 1; it <= cfg.max_iter; ++it) {
    const Vec x_prev = x;
    double incr_change = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const Vec y = x + incr[i];
      x = project_halfspace(poly.halfspaces[i], y);
      const Vec next = y - x;
      incr_change = std::max(incr_change, (next - incr[i]).norm());
      incr[i] = next;
    }
    moved = (x - x_prev).norm();
    if (std::max(moved, incr_change) < cfg.tol_proj) {
      converged = true;
      break;
    }
  }
  rep.iterations = std::min(it, cfg.max_iter);
  rep.residual = moved;

  // Finish with the exact projection onto the face Dykstra identified.
  const double scale = polytope_scale(poly, x0);
  std::vector<std::size_t> by_multiplier;
  std::vector<std::size_t> by_tightness;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& h = poly.halfspaces[i];
    if (incr[i].norm() > 1e-14 * scale) by_multiplier.push_back(i);
    if (std::abs(h.normal.dot(x) - h.offset) <= 1e-9 * scale) by_tightness.push_back(i);
  }
  Vec exact;
  if (polish(poly, x0, by_multiplier, exact) || polish(poly, x0, by_tightness, exact)) {
    rep.point = exact;
    return rep;
  }
  if (!converged || infeasibility(poly, x) > cfg.tol_feas) {
    throw Error(ErrorCode::IterationLimit,
                "polytope projection did not reach tol_proj within max_iter=" +
                    std::to_string(cfg.max_iter) + " sweeps");
  }
  rep.point = x;
  return rep;
}

Eigen::MatrixXd seeded_rotation(Eigen::Index d, std::uint64_t seed) {
  if (seed == 0) return Eigen::MatrixXd::Identity(d, d);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  return qr.householderQ() * Eigen::MatrixXd::Identity(d, d);
}

// Unit directions from cell centres on the faces of [-1,1]^d, 64*d of them at
// most. Returns the chord covering radius through `cover`.
std::vector<Vec> direction_net(Eigen::Index d, std::uint64_t seed, double& cover) {
  std::vector<Vec> dirs;
  if (d == 1) {
    dirs.push_back(Vec::Constant(1, 1.0));
    dirs.push_back(Vec::Constant(1, -1.0));
    cover = 0.0;
    return dirs;
  }
  const auto faces_dim = static_cast<double>(d - 1);
  int k = static_cast<int>(std::floor(std::pow(32.0, 1.0 / faces_dim) + 1e-9));
  k = std::max(k, 1);
  cover = std::sqrt(faces_dim) / k;
  const Eigen::MatrixXd rot = seeded_rotation(d, seed);
  const auto cells = static_cast<long>(std::pow(k, faces_dim) + 0.5);
  for (Eigen::Index axis = 0; axis < d; ++axis) {
    for (double sign : {1.0, -1.0}) {
      for (long cell = 0; cell < cells; ++cell) {
        Vec q(d);
        long rem = cell;
        for (Eigen::Index j = 0; j < d; ++j) {
          if (j == axis) {
            q(j) = sign;
            continue;
          }
          q(j) = -1.0 + (2.0 * static_cast<double>(rem % k) + 1.0) / k;
          rem /= k;
        }
        dirs.push_back(rot * q.normalized());
      }
    }
  }
  return dirs;
}

double bounded_radius(const ConvexSet& set, const Vec& center) {
  // max ||z - center|| over the set, bounded above via the bounding box.
  const Eigen::Index d = set.dim();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    Vec e = Vec::Zero(d);
    e(i) = 1.0;
    const double hi = support(set, e) - center(i);
    const double lo = -support(set, -e) - center(i);
    const double r = std::max(std::abs(hi), std::abs(lo));
    acc += r * r;
  }
  return std::sqrt(acc);
}

HausdorffResult hausdorff_sampled(const ConvexSet& a, const ConvexSet& b, std::uint64_t seed) {
  const Eigen::Index d = a.dim();
  Vec center(d);
  try {
    for (Eigen::Index i = 0; i < d; ++i) {
      Vec e = Vec::Zero(d);
      e(i) = 1.0;
      center(i) = 0.5 * (support(a, e) - support(a, -e));
    }
  } catch (const Error& err) {
    if (err.code() == ErrorCode::Unbounded) {
      throw Error(ErrorCode::UnsupportedPair, "hausdorff: polytope pair is not bounded");
    }
    throw;
  }
  double cover = 0.0;
  const auto dirs = direction_net(d, seed, cover);
  double best = 0.0;
  for (const auto& u : dirs) {
    best = std::max(best, std::abs(support(a, u) - support(b, u)));
  }
  HausdorffResult res;
  res.value = best;
  double lip = 0.0;
  try {
    lip = bounded_radius(a, center) + bounded_radius(b, center);
  } catch (const Error& err) {
    if (err.code() == ErrorCode::Unbounded) {
      throw Error(ErrorCode::UnsupportedPair, "hausdorff: polytope pair is not bounded");
    }
    throw;
  }
  res.upper_bound = best + lip * cover;
  res.approximate = d > 1;
  return res;
}

}  // namespace

// ---------------------------------------------------------------------------
// ConvexSet

ConvexSet ConvexSet::ball(Vec center, double radius) {
  require_vector(center, -1, "ball.center");
  if (!std::isfinite(radius) || radius < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "ball.radius: must be a finite nonnegative number");
  }
  return ConvexSet(Ball{std::move(center), radius});
}

ConvexSet ConvexSet::box(Vec lo, Vec hi) {
  require_vector(lo, -1, "box.lo");
  require_vector(hi, lo.size(), "box.hi");
  for (Eigen::Index i = 0; i < lo.size(); ++i) {
    if (lo(i) > hi(i)) {
      throw Error(ErrorCode::InvalidArgument,
                  "box.lo: lo[" + std::to_string(i) + "] exceeds hi[" + std::to_string(i) + "]");
    }
  }
  return ConvexSet(Box{std::move(lo), std::move(hi)});
}

ConvexSet ConvexSet::halfspace(Vec normal, double offset) {
  require_vector(normal, -1, "halfspace.normal");
  if (std::abs(normal.norm() - 1.0) > kUnitNormTol) {
    throw Error(ErrorCode::InvalidArgument, "halfspace.normal: must have unit Euclidean norm");
  }
  if (!std::isfinite(offset)) {
    throw Error(ErrorCode::InvalidArgument, "halfspace.offset: must be finite");
  }
  return ConvexSet(Halfspace{std::move(normal), offset});
}

ConvexSet ConvexSet::polytope(std::vector<Halfspace> halfspaces, const ProjectionConfig& cfg) {
  if (halfspaces.empty()) {
    throw Error(ErrorCode::InvalidArgument, "hpolytope.halfspaces: must be nonempty");
  }
  const Eigen::Index d = halfspaces.front().normal.size();
  for (std::size_t i = 0; i < halfspaces.size(); ++i) {
    const std::string where = "hpolytope.halfspaces[" + std::to_string(i) + "]";
    require_vector(halfspaces[i].normal, d, where + ".normal");
    if (std::abs(halfspaces[i].normal.norm() - 1.0) > kUnitNormTol) {
      throw Error(ErrorCode::InvalidArgument, where + ".normal: must have unit Euclidean norm");
    }
    if (!std::isfinite(halfspaces[i].offset)) {
      throw Error(ErrorCode::InvalidArgument, where + ".offset: must be finite");
    }
  }
  HPolytope poly{std::move(halfspaces)};

  // Feasibility: Dykstra from the origin.
  const Vec origin = Vec::Zero(d);
  Vec x = origin;
  std::vector<Vec> incr(poly.halfspaces.size(), Vec::Zero(d));
  for (int it = 0; it < cfg.max_iter && infeasibility(poly, x) > 0.0; ++it) {
    const Vec prev = x;
    for (std::size_t i = 0; i < poly.halfspaces.size(); ++i) {
      const Vec y = x + incr[i];
      x = project_halfspace(poly.halfspaces[i], y);
      incr[i] = y - x;
    }
    if ((x - prev).norm() < cfg.tol_proj) break;
  }
  if (infeasibility(poly, x) > 1e-6) {
    throw Error(ErrorCode::InvalidArgument, "hpolytope.halfspaces: polytope is empty");
  }
  return ConvexSet(std::move(poly));
}

ConvexSet ConvexSet::polytope_unchecked(std::vector<Halfspace> halfspaces) {
  return ConvexSet(HPolytope{std::move(halfspaces)});
}

ConvexSet ConvexSet::translate(ConvexSet base, Vec shift) {
  require_vector(shift, base.dim(), "translate.shift");
  return ConvexSet(Translate{std::make_shared<const ConvexSet>(std::move(base)), std::move(shift)});
}

ConvexSet ConvexSet::translate(std::shared_ptr<const ConvexSet> base, Vec shift) {
  if (!base) throw Error(ErrorCode::InvalidArgument, "translate.base: missing");
  require_vector(shift, base->dim(), "translate.shift");
  return ConvexSet(Translate{std::move(base), std::move(shift)});
}

Eigen::Index ConvexSet::dim() const {
  return std::visit(
      [](const auto& s) -> Eigen::Index {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Ball>) return s.center.size();
        if constexpr (std::is_same_v<T, Box>) return s.lo.size();
        if constexpr (std::is_same_v<T, Halfspace>) return s.normal.size();
        if constexpr (std::is_same_v<T, HPolytope>) return s.halfspaces.front().normal.size();
        if constexpr (std::is_same_v<T, Translate>) return s.shift.size();
      },
      repr_);
}

SetKind ConvexSet::kind() const { return static_cast<SetKind>(repr_.index()); }

bool operator==(const ConvexSet& lhs, const ConvexSet& rhs) {
  if (lhs.kind() != rhs.kind() || lhs.dim() != rhs.dim()) return false;
  switch (lhs.kind()) {
    case SetKind::Ball:
      return lhs.as_ball().radius == rhs.as_ball().radius &&
             lhs.as_ball().center == rhs.as_ball().center;
    case SetKind::Box:
      return lhs.as_box().lo == rhs.as_box().lo && lhs.as_box().hi == rhs.as_box().hi;
    case SetKind::Halfspace:
      return lhs.as_halfspace().offset == rhs.as_halfspace().offset &&
             lhs.as_halfspace().normal == rhs.as_halfspace().normal;
    case SetKind::HPolytope: {
      const auto& a = lhs.as_polytope().halfspaces;
      const auto& b = rhs.as_polytope().halfspaces;
      if (a.size() != b.size()) return false;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].offset != b[i].offset || a[i].normal != b[i].normal) return false;
      }
      return true;
    }
    case SetKind::Translate: {
      const auto& a = lhs.as_translate();
      const auto& b = rhs.as_translate();
      return a.shift == b.shift && (a.base == b.base || *a.base == *b.base);
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Operations

double infeasibility(const HPolytope& poly, const Vec& x) {
  double worst = 0.0;
  for (const auto& h : poly.halfspaces) worst = std::max(worst, h.normal.dot(x) - h.offset);
  return worst;
}

ProjectionReport project(const ConvexSet& set, const Vec& x, const ProjectionConfig& cfg) {
  if (x.size() != set.dim()) {
    throw Error(ErrorCode::InvalidArgument, "project: dimension mismatch");
  }
  switch (set.kind()) {
    case SetKind::Ball: {
      const auto& b = set.as_ball();
      const Vec diff = x - b.center;
      const double n2 = diff.squaredNorm();
      if (n2 <= b.radius * b.radius) return {x, 0, 0.0};
      return {b.center + (b.radius / std::sqrt(n2)) * diff, 0, 0.0};
    }
    case SetKind::Box: {
      const auto& b = set.as_box();
      return {x.cwiseMax(b.lo).cwiseMin(b.hi), 0, 0.0};
    }
    case SetKind::Halfspace:
      return {project_halfspace(set.as_halfspace(), x), 0, 0.0};
    case SetKind::HPolytope:
      return project_polytope(set.as_polytope(), x, cfg);
    case SetKind::Translate: {
      const auto& t = set.as_translate();
      if (t.base->kind() != SetKind::HPolytope && t.base->kind() != SetKind::Translate) {
        return project(canonical(set), x, cfg);
      }
      const Vec mirrored = t.shift - x;
      auto inner = project(*t.base, mirrored, cfg);
      // Keep x bitwise when it is already inside.
      inner.point = inner.point == mirrored ? x : Vec(t.shift - inner.point);
      return inner;
    }
  }
  return {x, 0, 0.0};
}

Vec projection(const ConvexSet& set, const Vec& x, const ProjectionConfig& cfg) {
  return project(set, x, cfg).point;
}

double distance(const ConvexSet& set, const Vec& x, const ProjectionConfig& cfg) {
  return (projection(set, x, cfg) - x).norm();
}

bool contains(const ConvexSet& set, const Vec& x, double tol, const ProjectionConfig& cfg) {
  return distance(set, x, cfg) <= tol;
}

double support(const ConvexSet& set, const Vec& dir) {
  if (dir.size() != set.dim()) {
    throw Error(ErrorCode::InvalidArgument, "support: dimension mismatch");
  }
  switch (set.kind()) {
    case SetKind::Ball: {
      const auto& b = set.as_ball();
      return dir.dot(b.center) + b.radius * dir.norm();
    }
    case SetKind::Box: {
      const auto& b = set.as_box();
      double s = 0.0;
      for (Eigen::Index i = 0; i < dir.size(); ++i) {
        s += std::max(dir(i) * b.lo(i), dir(i) * b.hi(i));
      }
      return s;
    }
    case SetKind::Halfspace: {
      const auto& h = set.as_halfspace();
      const double along = dir.dot(h.normal);
      const double off = (dir - along * h.normal).norm();
      if (along < 0.0 || off > 1e-12 * std::max(1.0, dir.norm())) {
        throw Error(ErrorCode::Unbounded, "support: halfspace is unbounded in this direction");
      }
      return along * h.offset;
    }
    case SetKind::HPolytope: {
      // Dual LP: min <b, lambda> s.t. A' lambda = dir, lambda >= 0.
      const auto& hs = set.as_polytope().halfspaces;
      const auto m = static_cast<Eigen::Index>(hs.size());
      Eigen::MatrixXd M(dir.size(), m);
      Eigen::VectorXd c(m);
      for (Eigen::Index j = 0; j < m; ++j) {
        M.col(j) = hs[static_cast<std::size_t>(j)].normal;
        c(j) = hs[static_cast<std::size_t>(j)].offset;
      }
      const auto sol = detail::solve_standard_lp(M, dir, c);
      if (sol.status == detail::LpStatus::Infeasible) {
        throw Error(ErrorCode::Unbounded, "support: polytope is unbounded in this direction");
      }
      if (sol.status == detail::LpStatus::Unbounded) {
        throw Error(ErrorCode::InvalidArgument, "support: polytope is empty");
      }
      return sol.value;
    }
    case SetKind::Translate: {
      const auto& t = set.as_translate();
      return dir.dot(t.shift) + support(*t.base, -dir);
    }
  }
  return 0.0;
}

ConvexSet canonical(const ConvexSet& set) {
  if (set.kind() != SetKind::Translate) return set;
  const auto& t = set.as_translate();
  const ConvexSet base = canonical(*t.base);
  const Vec& s = t.shift;
  switch (base.kind()) {
    case SetKind::Ball:
      return ConvexSet::ball(s - base.as_ball().center, base.as_ball().radius);
    case SetKind::Box:
      return ConvexSet::box(s - base.as_box().hi, s - base.as_box().lo);
    case SetKind::Halfspace: {
      auto h = flip_through(base.as_halfspace(), s);
      return ConvexSet::halfspace(std::move(h.normal), h.offset);
    }
    case SetKind::HPolytope: {
      std::vector<Halfspace> hs;
      for (const auto& h : base.as_polytope().halfspaces) hs.push_back(flip_through(h, s));
      return ConvexSet::polytope_unchecked(std::move(hs));
    }
    case SetKind::Translate:
      break;
  }
  return base;
}

HausdorffResult hausdorff(const ConvexSet& a, const ConvexSet& b, std::uint64_t seed) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::InvalidArgument, "hausdorff: dimension mismatch");
  }
  if (a.kind() == SetKind::Translate && b.kind() == SetKind::Translate) {
    const auto& ta = a.as_translate();
    const auto& tb = b.as_translate();
    if (ta.base == tb.base || *ta.base == *tb.base) {
      const double v = (ta.shift - tb.shift).norm();
      return {v, v, false};
    }
  }
  const ConvexSet ca = canonical(a);
  const ConvexSet cb = canonical(b);
  if (ca.kind() != cb.kind()) {
    throw Error(ErrorCode::UnsupportedPair, "hausdorff: unsupported pair of set kinds");
  }
  switch (ca.kind()) {
    case SetKind::Ball: {
      const auto& x = ca.as_ball();
      const auto& y = cb.as_ball();
      const double v = (x.center - y.center).norm() + std::abs(x.radius - y.radius);
      return {v, v, false};
    }
    case SetKind::Box: {
      const auto& x = ca.as_box();
      const auto& y = cb.as_box();
      double ab = 0.0;
      double ba = 0.0;
      for (Eigen::Index i = 0; i < x.lo.size(); ++i) {
        const double e1 = std::max({0.0, y.lo(i) - x.lo(i), x.hi(i) - y.hi(i)});
        const double e2 = std::max({0.0, x.lo(i) - y.lo(i), y.hi(i) - x.hi(i)});
        ab += e1 * e1;
        ba += e2 * e2;
      }
      const double v = std::sqrt(std::max(ab, ba));
      return {v, v, false};
    }
    case SetKind::Halfspace: {
      const auto& x = ca.as_halfspace();
      const auto& y = cb.as_halfspace();
      if ((x.normal - y.normal).norm() > kUnitNormTol) {
        throw Error(ErrorCode::UnsupportedPair, "hausdorff: non-parallel halfspaces");
      }
      const double v = std::abs(x.offset - y.offset);
      return {v, v, false};
    }
    case SetKind::HPolytope:
      return hausdorff_sampled(ca, cb, seed);
    case SetKind::Translate:
      break;
  }
  throw Error(ErrorCode::UnsupportedPair, "hausdorff: unsupported pair of set kinds");
}

double normal_cone_violation(const ConvexSet& set, const Vec& y, const Vec& v) {
  if (v.squaredNorm() == 0.0) return 0.0;
  const Vec w = -v;
  return std::max(0.0, support(set, w) - w.dot(y));
}

std::vector<Vec> polytope_vertices(const HPolytope& poly) {
  const Eigen::Index d = poly.halfspaces.front().normal.size();
  const ConvexSet as_set = ConvexSet::polytope_unchecked(poly.halfspaces);
  for (Eigen::Index i = 0; i < d; ++i) {
    Vec e = Vec::Zero(d);
    e(i) = 1.0;
    support(as_set, e);  // throws Unbounded
    support(as_set, -e);
  }
  const std::size_t m = poly.halfspaces.size();
  std::vector<Vec> verts;
  std::vector<std::size_t> pick(static_cast<std::size_t>(d));
  // Enumerate d-subsets in lexicographic order.
  for (std::size_t i = 0; i < pick.size(); ++i) pick[i] = i;
  if (pick.size() > m) return verts;
  const double tol = 1e-9 * polytope_scale(poly, Vec::Zero(d));
  while (true) {
    Eigen::MatrixXd A(d, d);
    Eigen::VectorXd c(d);
    for (Eigen::Index r = 0; r < d; ++r) {
      A.row(r) = poly.halfspaces[pick[static_cast<std::size_t>(r)]].normal.transpose();
      c(r) = poly.halfspaces[pick[static_cast<std::size_t>(r)]].offset;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    if (lu.isInvertible()) {
      const Vec v = lu.solve(c);
      if (infeasibility(poly, v) <= tol) verts.push_back(v);
    }
    // next combination
    auto k = static_cast<std::ptrdiff_t>(pick.size()) - 1;
    while (k >= 0 && pick[static_cast<std::size_t>(k)] == m - pick.size() + static_cast<std::size_t>(k)) --k;
    if (k < 0) break;
    ++pick[static_cast<std::size_t>(k)];
    for (auto j = static_cast<std::size_t>(k) + 1; j < pick.size(); ++j) pick[j] = pick[j - 1] + 1;
  }
  return verts;
}

double farthest_distance(const ConvexSet& set, const Vec& p) {
  const ConvexSet c = canonical(set);
  switch (c.kind()) {
    case SetKind::Ball:
      return (p - c.as_ball().center).norm() + c.as_ball().radius;
    case SetKind::Box: {
      const auto& b = c.as_box();
      double acc = 0.0;
      for (Eigen::Index i = 0; i < p.size(); ++i) {
        const double r = std::max(std::abs(p(i) - b.lo(i)), std::abs(p(i) - b.hi(i)));
        acc += r * r;
      }
      return std::sqrt(acc);
    }
    case SetKind::Halfspace:
      throw Error(ErrorCode::Unbounded, "farthest_distance: halfspace is unbounded");
    case SetKind::HPolytope: {
      double best = 0.0;
      for (const auto& v : polytope_vertices(c.as_polytope())) best = std::max(best, (v - p).norm());
      return best;
    }
    case SetKind::Translate:
      break;
  }
  return 0.0;
}

}  // namespace sweep
