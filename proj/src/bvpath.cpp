#include "sweep/bvpath.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sweep/errors.hpp"

namespace sweep {

BVPath::BVPath(double a, double b, std::vector<Breakpoint> breakpoints, bool right_continuous)
    : a_(a), b_(b), breakpoints_(std::move(breakpoints)), right_continuous_(right_continuous) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw Error(ErrorCode::InvalidArgument, "path.domain: need finite a < b");
  }
  if (breakpoints_.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "path.breakpoints: need at least the two endpoints");
  }
  const double tol = time_tol();
  if (std::abs(breakpoints_.front().t - a) > tol || std::abs(breakpoints_.back().t - b) > tol) {
    throw Error(ErrorCode::InvalidArgument,
                "path.breakpoints: first and last breakpoint must sit at the domain ends");
  }
  breakpoints_.front().t = a;
  breakpoints_.back().t = b;

  Eigen::Index dim = -1;
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    auto& bp = breakpoints_[i];
    const std::string where = "path.breakpoints[" + std::to_string(i) + "]";
    if (!std::isfinite(bp.t)) throw Error(ErrorCode::InvalidArgument, where + ".t: not finite");
    if (i > 0 && !(bp.t > breakpoints_[i - 1].t + tol)) {
      throw Error(ErrorCode::InvalidArgument, where + ".t: times must be strictly increasing");
    }
    if (bp.value.size() == 0) bp.value = bp.right.size() ? bp.right : bp.left;
    if (bp.right.size() == 0) bp.right = bp.value;
    if (bp.left.size() == 0) bp.left = bp.value;
    if (dim < 0) dim = bp.value.size();
    require_vector(bp.left, dim, where + ".left");
    require_vector(bp.value, dim, where + ".value");
    require_vector(bp.right, dim, where + ".right");
    if (right_continuous_ && bp.value != bp.right) {
      throw Error(ErrorCode::InvalidArgument,
                  where + ".value: right-continuous path needs value == right");
    }
  }
  breakpoints_.front().left = breakpoints_.front().value;
  breakpoints_.back().right = breakpoints_.back().value;
}

BVPath BVPath::piecewise_linear(const std::vector<double>& times, const std::vector<Vec>& values) {
  if (times.size() != values.size() || times.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "piecewise_linear: need matching times/values, >= 2");
  }
  std::vector<Breakpoint> bps;
  bps.reserve(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    bps.push_back({times[i], values[i], values[i], values[i]});
  }
  return BVPath(times.front(), times.back(), std::move(bps), true);
}

BVPath BVPath::constant(double a, double b, const Vec& value) {
  return piecewise_linear({a, b}, {value, value});
}

std::ptrdiff_t BVPath::breakpoint_index(double t) const {
  const auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), t,
                                   [](const Breakpoint& bp, double x) { return bp.t < x; });
  const double tol = time_tol();
  if (it != breakpoints_.end() && std::abs(it->t - t) <= tol) return it - breakpoints_.begin();
  if (it != breakpoints_.begin() && std::abs((it - 1)->t - t) <= tol) {
    return (it - 1) - breakpoints_.begin();
  }
  return -1;
}

Vec BVPath::eval(double t, Side side) const {
  const double tol = time_tol();
  if (!(t >= a_ - tol && t <= b_ + tol)) {
    throw Error(ErrorCode::OutOfDomain, "eval: t=" + std::to_string(t) + " outside the path domain");
  }
  const auto idx = breakpoint_index(t);
  if (idx >= 0) {
    const auto& bp = breakpoints_[static_cast<std::size_t>(idx)];
    switch (side) {
      case Side::Left: return bp.left;
      case Side::Value: return bp.value;
      case Side::Right: return bp.right;
    }
  }
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t,
                                   [](double x, const Breakpoint& bp) { return x < bp.t; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double lambda = (t - lo.t) / (hi.t - lo.t);
  return lo.right + lambda * (hi.left - lo.right);
}

double BVPath::variation(double s, double t) const {
  const double tol = time_tol();
  if (!(s >= a_ - tol && t <= b_ + tol && s <= t + tol)) {
    throw Error(ErrorCode::OutOfDomain, "variation: need a <= s <= t <= b");
  }
  s = std::clamp(s, a_, b_);
  t = std::clamp(t, a_, b_);
  if (t - s <= tol) return 0.0;

  double total = 0.0;
  Vec cur;
  std::size_t next = 0;  // first breakpoint strictly after s
  const auto is = breakpoint_index(s);
  if (is >= 0) {
    const auto& bp = breakpoints_[static_cast<std::size_t>(is)];
    total += (bp.right - bp.value).norm();
    cur = bp.right;
    next = static_cast<std::size_t>(is) + 1;
  } else {
    cur = eval(s);
    next = static_cast<std::size_t>(
        std::upper_bound(breakpoints_.begin(), breakpoints_.end(), s,
                         [](double x, const Breakpoint& bp) { return x < bp.t; }) -
        breakpoints_.begin());
  }
  const auto it_end = breakpoint_index(t);
  for (; next < breakpoints_.size() && breakpoints_[next].t < t - tol; ++next) {
    const auto& bp = breakpoints_[next];
    total += (bp.left - cur).norm() + (bp.value - bp.left).norm() + (bp.right - bp.value).norm();
    cur = bp.right;
  }
  if (it_end >= 0) {
    const auto& bp = breakpoints_[static_cast<std::size_t>(it_end)];
    total += (bp.left - cur).norm() + (bp.value - bp.left).norm();
  } else {
    total += (eval(t) - cur).norm();
  }
  return total;
}

std::vector<double> BVPath::jump_times() const {
  std::vector<double> out;
  for (const auto& bp : breakpoints_) {
    if (bp.left != bp.value || bp.value != bp.right) out.push_back(bp.t);
  }
  return out;
}

ArcLengthParam arc_length(const BVPath& path) {
  const double a = path.a();
  const double b = path.b();
  const auto& bps = path.breakpoints();

  // Cumulative variation at t-, t, t+ of every breakpoint.
  std::vector<double> c_left(bps.size());
  std::vector<double> c_value(bps.size());
  std::vector<double> c_right(bps.size());
  double c = 0.0;
  for (std::size_t i = 0; i < bps.size(); ++i) {
    if (i > 0) c += (bps[i].left - bps[i - 1].right).norm();
    c_left[i] = c;
    c += (bps[i].value - bps[i].left).norm();
    c_value[i] = c;
    c += (bps[i].right - bps[i].value).norm();
    c_right[i] = c;
  }
  const double total = c;

  auto scalar = [](double x) { return Vec::Constant(1, x); };

  if (total == 0.0) {
    return ArcLengthParam{BVPath::constant(a, b, scalar(a)),
                          BVPath::constant(a, b, bps.front().value), 0.0, 0.0};
  }

  const double k = (b - a) / total;
  auto sigma = [&](double cum) { return cum == total ? b : a + k * cum; };

  std::vector<Breakpoint> ell_bps;
  ell_bps.reserve(bps.size());
  for (std::size_t i = 0; i < bps.size(); ++i) {
    ell_bps.push_back({bps[i].t, scalar(sigma(c_left[i])), scalar(sigma(c_value[i])),
                       scalar(sigma(c_right[i]))});
  }
  BVPath ell(a, b, std::move(ell_bps), path.right_continuous());

  // Filled curve: nodes at every image value; coincident nodes keep the
  // later (right-hand) value.
  const double tol = path.time_tol();
  std::vector<std::pair<double, Vec>> nodes;
  auto push = [&](double s, const Vec& v) {
    if (!nodes.empty() && s - nodes.back().first <= tol) {
      nodes.back().second = v;
      return;
    }
    nodes.emplace_back(s, v);
  };
  for (std::size_t i = 0; i < bps.size(); ++i) {
    push(sigma(c_left[i]), bps[i].left);
    push(sigma(c_value[i]), bps[i].value);
    push(sigma(c_right[i]), bps[i].right);
  }
  nodes.front().first = a;
  nodes.back().first = b;
  std::vector<Breakpoint> filled_bps;
  filled_bps.reserve(nodes.size());
  for (auto& [s, v] : nodes) filled_bps.push_back({s, v, v, v});
  BVPath filled(a, b, std::move(filled_bps), true);

  return ArcLengthParam{std::move(ell), std::move(filled), total / (b - a), total};
}

BVPath compose(const BVPath& filled, const BVPath& ell) {
  if (ell.dim() != 1) {
    throw Error(ErrorCode::InvalidArgument, "compose: inner path must be scalar");
  }
  const double lo = filled.a();
  const double hi = filled.b();
  const double stol = filled.time_tol();
  const double ttol = ell.time_tol();
  for (const auto& bp : ell.breakpoints()) {
    for (double s : {bp.left(0), bp.value(0), bp.right(0)}) {
      if (s < lo - stol || s > hi + stol) {
        throw Error(ErrorCode::OutOfDomain, "compose: inner path leaves the outer domain");
      }
    }
  }
  auto clampd = [&](double s) { return std::clamp(s, lo, hi); };
  auto dir_side = [](double from, double to, bool approaching) {
    if (to > from) return approaching ? Side::Left : Side::Right;
    if (to < from) return approaching ? Side::Right : Side::Left;
    return Side::Value;
  };

  const auto& ebps = ell.breakpoints();
  const auto& fbps = filled.breakpoints();
  std::vector<Breakpoint> out;
  for (std::size_t i = 0; i < ebps.size(); ++i) {
    const auto& e = ebps[i];
    Breakpoint bp;
    bp.t = e.t;
    const Side left_side =
        i == 0 ? Side::Value : dir_side(ebps[i - 1].right(0), e.left(0), true);
    const Side right_side =
        i + 1 == ebps.size() ? Side::Value : dir_side(e.right(0), ebps[i + 1].left(0), false);
    bp.left = filled.eval(clampd(e.left(0)), left_side);
    bp.value = filled.eval(clampd(e.value(0)), Side::Value);
    bp.right = filled.eval(clampd(e.right(0)), right_side);
    out.push_back(std::move(bp));

    if (i + 1 == ebps.size()) break;
    // Preimages of outer breakpoints strictly inside this affine piece.
    const double s0 = e.right(0);
    const double s1 = ebps[i + 1].left(0);
    const double t0 = e.t;
    const double t1 = ebps[i + 1].t;
    if (std::abs(s1 - s0) <= stol) continue;
    const bool up = s1 > s0;
    std::vector<Breakpoint> inner;
    for (const auto& fb : fbps) {
      const bool inside = up ? (fb.t > s0 + stol && fb.t < s1 - stol)
                             : (fb.t < s0 - stol && fb.t > s1 + stol);
      if (!inside) continue;
      const double ts = t0 + (fb.t - s0) / (s1 - s0) * (t1 - t0);
      if (ts <= t0 + ttol || ts >= t1 - ttol) continue;
      inner.push_back({ts, up ? fb.left : fb.right, fb.value, up ? fb.right : fb.left});
    }
    if (!up) std::reverse(inner.begin(), inner.end());
    for (auto& bp2 : inner) out.push_back(std::move(bp2));
  }
  bool rc = true;
  for (const auto& bp : out) rc = rc && bp.value == bp.right;
  return BVPath(ell.a(), ell.b(), std::move(out), rc);
}

double lipschitz_constant(const BVPath& path) {
  const auto& bps = path.breakpoints();
  double lip = 0.0;
  for (std::size_t i = 0; i < bps.size(); ++i) {
    if (bps[i].left != bps[i].value || bps[i].value != bps[i].right) {
      return std::numeric_limits<double>::infinity();
    }
    if (i > 0) {
      lip = std::max(lip, (bps[i].left - bps[i - 1].right).norm() / (bps[i].t - bps[i - 1].t));
    }
  }
  return lip;
}

}  // namespace sweep
