#include "sweep/movingset.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sweep/errors.hpp"

namespace sweep {

namespace {

Vec lerp(const Vec& x, const Vec& y, double lambda) { return x + lambda * (y - x); }

double lerp(double x, double y, double lambda) { return x + lambda * (y - x); }

bool same_normals(const std::vector<Halfspace>& a, const std::vector<Halfspace>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].normal != b[i].normal) return false;
  }
  return true;
}

bool compatible(const ConvexSet& x, const ConvexSet& y) {
  if (x.kind() != y.kind() || x.dim() != y.dim()) return false;
  switch (x.kind()) {
    case SetKind::Ball:
    case SetKind::Box:
      return true;
    case SetKind::Halfspace:
      return x.as_halfspace().normal == y.as_halfspace().normal;
    case SetKind::HPolytope:
      return same_normals(x.as_polytope().halfspaces, y.as_polytope().halfspaces);
    case SetKind::Translate: {
      const auto& tx = x.as_translate();
      const auto& ty = y.as_translate();
      return tx.base == ty.base || *tx.base == *ty.base;
    }
  }
  return false;
}

}  // namespace

ConvexSet interpolate(const ConvexSet& from, const ConvexSet& to, double lambda) {
  if (!compatible(from, to)) {
    throw Error(ErrorCode::InvalidArgument,
                "family segment: start and end sets must share kind, dimension and normals");
  }
  if (lambda <= 0.0) return from;
  if (lambda >= 1.0) return to;
  switch (from.kind()) {
    case SetKind::Ball:
      return ConvexSet::ball(lerp(from.as_ball().center, to.as_ball().center, lambda),
                             lerp(from.as_ball().radius, to.as_ball().radius, lambda));
    case SetKind::Box: {
      Vec lo = lerp(from.as_box().lo, to.as_box().lo, lambda);
      Vec hi = lerp(from.as_box().hi, to.as_box().hi, lambda);
      // Rounding can cross lo and hi on degenerate axes.
      hi = hi.cwiseMax(lo);
      return ConvexSet::box(std::move(lo), std::move(hi));
    }
    case SetKind::Halfspace:
      return ConvexSet::halfspace(from.as_halfspace().normal,
                                  lerp(from.as_halfspace().offset, to.as_halfspace().offset, lambda));
    case SetKind::HPolytope: {
      std::vector<Halfspace> hs = from.as_polytope().halfspaces;
      const auto& other = to.as_polytope().halfspaces;
      for (std::size_t i = 0; i < hs.size(); ++i) {
        hs[i].offset = lerp(hs[i].offset, other[i].offset, lambda);
      }
      return ConvexSet::polytope_unchecked(std::move(hs));
    }
    case SetKind::Translate:
      return ConvexSet::translate(from.as_translate().base,
                                  lerp(from.as_translate().shift, to.as_translate().shift, lambda));
  }
  return from;
}

MovingSet MovingSet::translate(ConvexSet base, BVPath path) {
  if (base.dim() != path.dim()) {
    throw Error(ErrorCode::InvalidArgument, "moving_set.path: dimension differs from base");
  }
  MovingSet ms;
  ms.a_ = path.a();
  ms.b_ = path.b();
  ms.base_ = std::make_shared<const ConvexSet>(std::move(base));
  ms.path_ = std::move(path);
  return ms;
}

MovingSet MovingSet::family(std::vector<FamilySegment> segments,
                            std::vector<FamilyOverride> overrides) {
  if (segments.empty()) {
    throw Error(ErrorCode::InvalidArgument, "moving_set.segments: must be nonempty");
  }
  const double a = segments.front().t0;
  const double b = segments.back().t1;
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw Error(ErrorCode::InvalidArgument, "moving_set.segments: domain must satisfy a < b");
  }
  const double tol = 1e-12 * (b - a);
  const Eigen::Index d = segments.front().start.dim();
  for (std::size_t j = 0; j < segments.size(); ++j) {
    auto& seg = segments[j];
    const std::string where = "moving_set.segments[" + std::to_string(j) + "]";
    if (!(seg.t0 < seg.t1)) throw Error(ErrorCode::InvalidArgument, where + ".t1: must exceed t0");
    if (j > 0) {
      if (std::abs(seg.t0 - segments[j - 1].t1) > tol) {
        throw Error(ErrorCode::InvalidArgument,
                    where + ".t0: segments must cover the domain without gaps or overlap");
      }
      seg.t0 = segments[j - 1].t1;
    }
    if (seg.start.dim() != d || seg.end.dim() != d) {
      throw Error(ErrorCode::InvalidArgument, where + ": dimension mismatch");
    }
    if (!compatible(seg.start, seg.end)) {
      throw Error(ErrorCode::InvalidArgument,
                  where + ".end: must share kind and normals with start");
    }
  }
  std::sort(overrides.begin(), overrides.end(),
            [](const FamilyOverride& x, const FamilyOverride& y) { return x.t < y.t; });
  for (std::size_t i = 0; i < overrides.size(); ++i) {
    auto& ov = overrides[i];
    const std::string where = "moving_set.jumps[" + std::to_string(i) + "]";
    if (ov.at.dim() != d) throw Error(ErrorCode::InvalidArgument, where + ".at: dimension mismatch");
    bool found = false;
    if (std::abs(ov.t - a) <= tol) {
      ov.t = a;
      found = true;
    }
    for (const auto& seg : segments) {
      if (std::abs(ov.t - seg.t1) <= tol) {
        ov.t = seg.t1;
        found = true;
      }
    }
    if (!found) {
      throw Error(ErrorCode::InvalidArgument, where + ".t: must be a segment boundary");
    }
    if (i > 0 && overrides[i - 1].t == ov.t) {
      throw Error(ErrorCode::InvalidArgument, where + ".t: duplicate jump time");
    }
  }
  MovingSet ms;
  ms.a_ = a;
  ms.b_ = b;
  ms.segments_ = std::move(segments);
  ms.overrides_ = std::move(overrides);
  return ms;
}

Eigen::Index MovingSet::dim() const {
  return is_translate() ? path_->dim() : segments_.front().start.dim();
}

const ConvexSet& MovingSet::base() const {
  if (!base_) throw Error(ErrorCode::InvalidArgument, "moving set is not in translate mode");
  return *base_;
}

const BVPath& MovingSet::path() const {
  if (!path_) throw Error(ErrorCode::InvalidArgument, "moving set is not in translate mode");
  return *path_;
}

ConvexSet MovingSet::set_at(double t, Side side) const {
  const double tol = time_tol();
  if (!(t >= a_ - tol && t <= b_ + tol)) {
    throw Error(ErrorCode::OutOfDomain,
                "set_at: t=" + std::to_string(t) + " outside [" + std::to_string(a_) + ", " +
                    std::to_string(b_) + "]");
  }
  if (is_translate()) return ConvexSet::translate(base_, path_->eval(t, side));

  const std::size_t n = segments_.size();
  // Boundary k sits at segments_[k].t0 (k < n) or at b (k == n).
  auto boundary_time = [&](std::size_t k) { return k < n ? segments_[k].t0 : segments_.back().t1; };
  auto value_at_boundary = [&](std::size_t k) -> ConvexSet {
    const double tb = boundary_time(k);
    for (const auto& ov : overrides_) {
      if (ov.t == tb) return ov.at;
    }
    return k < n ? segments_[k].start : segments_.back().end;
  };
  for (std::size_t k = 0; k <= n; ++k) {
    if (std::abs(t - boundary_time(k)) > tol) continue;
    switch (side) {
      case Side::Value:
        return value_at_boundary(k);
      case Side::Left:
        return k == 0 ? value_at_boundary(0) : segments_[k - 1].end;
      case Side::Right:
        return k < n ? segments_[k].start : value_at_boundary(n);
    }
  }
  for (const auto& seg : segments_) {
    if (t > seg.t0 && t < seg.t1) {
      return interpolate(seg.start, seg.end, (t - seg.t0) / (seg.t1 - seg.t0));
    }
  }
  throw Error(ErrorCode::OutOfDomain, "set_at: no segment owns t=" + std::to_string(t));
}

std::vector<double> MovingSet::breakpoints() const {
  std::vector<double> out;
  if (is_translate()) {
    for (const auto& bp : path_->breakpoints()) out.push_back(bp.t);
    return out;
  }
  out.push_back(a_);
  for (const auto& seg : segments_) out.push_back(seg.t1);
  return out;
}

bool MovingSet::right_continuous() const {
  if (is_translate()) return path_->right_continuous();
  for (double t : breakpoints()) {
    if (!(set_at(t, Side::Value) == set_at(t, Side::Right))) return false;
  }
  return true;
}

VariationResult MovingSet::variation(double s, double t, std::uint64_t seed) const {
  const double tol = time_tol();
  if (!(s >= a_ - tol && t <= b_ + tol && s <= t)) {
    throw Error(ErrorCode::OutOfDomain, "variation: need a <= s <= t <= b");
  }
  if (is_translate()) return {path_->variation(s, t), false};

  VariationResult res;
  auto dist = [&](const ConvexSet& x, const ConvexSet& y) {
    const auto h = hausdorff(x, y, seed);
    res.approximate = res.approximate || h.approximate;
    return h.value;
  };
  if (t - s <= tol) return res;

  for (double r : breakpoints()) {
    if (r < s - tol || r > t + tol) continue;
    const bool at_s = std::abs(r - s) <= tol;
    const bool at_t = std::abs(r - t) <= tol;
    const ConvexSet here = set_at(r, Side::Value);
    if (!at_s) res.value += dist(set_at(r, Side::Left), here);
    if (!at_t) res.value += dist(here, set_at(r, Side::Right));
  }

  constexpr int kMaxLevels = 16;
  constexpr double kRelTol = 1e-6;
  for (const auto& seg : segments_) {
    const double p = std::max(s, seg.t0);
    const double q = std::min(t, seg.t1);
    if (q - p <= tol) continue;
    auto at = [&](double x) {
      return interpolate(seg.start, seg.end, (x - seg.t0) / (seg.t1 - seg.t0));
    };
    double prev = dist(at(p), at(q));
    bool converged = false;
    for (int level = 1; level <= kMaxLevels; ++level) {
      const long pieces = 1L << level;
      double len = 0.0;
      ConvexSet last = at(p);
      for (long i = 1; i <= pieces; ++i) {
        const double x = i == pieces ? q : p + (q - p) * static_cast<double>(i) / pieces;
        ConvexSet next = at(x);
        len += dist(last, next);
        last = std::move(next);
      }
      const double change = std::abs(len - prev);
      prev = len;
      if (change <= kRelTol * std::max(len, 1e-300) || len == 0.0) {
        converged = true;
        break;
      }
    }
    if (!converged) res.approximate = true;
    res.value += prev;
  }
  return res;
}

std::vector<JumpRecord> MovingSet::jump_times(std::uint64_t seed) const {
  std::vector<JumpRecord> out;
  for (double t : breakpoints()) {
    ConvexSet left = set_at(t, Side::Left);
    ConvexSet at = set_at(t, Side::Value);
    ConvexSet right = set_at(t, Side::Right);
    if (left == at && at == right) continue;
    bool jumps = true;
    try {
      jumps = hausdorff(left, at, seed).value > 0.0 || hausdorff(at, right, seed).value > 0.0;
    } catch (const Error& err) {
      if (err.code() != ErrorCode::UnsupportedPair) throw;
    }
    if (jumps) out.push_back(JumpRecord{t, std::move(left), std::move(at), std::move(right)});
  }
  return out;
}

}  // namespace sweep
