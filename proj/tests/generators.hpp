#pragma once
// Random scenario builders shared by the property tests and the acceptance
// runner.

#include <algorithm>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "sweep/movingset.hpp"
#include "sweep/play.hpp"
#include "sweep/solver.hpp"

namespace gen {

using sweep::BVPath;
using sweep::Breakpoint;
using sweep::ConvexSet;
using sweep::JumpPrescription;
using sweep::MovingSet;
using sweep::Vec;

inline Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Interior breakpoints at random times; `jumps` of them carry a jump.
inline BVPath random_path(std::mt19937_64& rng, Eigen::Index d, int jumps, double a = 0.0,
                          double b = 1.0, bool right_continuous = true, double scale = 1.5) {
  const int interior = std::max(jumps, uniform_int(rng, 1, 5));
  std::vector<double> ts;
  while (static_cast<int>(ts.size()) < interior) {
    const double t = a + (b - a) * uniform(rng, 0.05, 0.95);
    bool ok = true;
    for (double s : ts) ok = ok && std::abs(s - t) > 0.02 * (b - a);
    if (ok) ts.push_back(t);
  }
  std::sort(ts.begin(), ts.end());
  std::vector<int> jump_at(ts.size(), 0);
  for (int j = 0; j < jumps; ++j) jump_at[static_cast<std::size_t>(j)] = 1;
  std::shuffle(jump_at.begin(), jump_at.end(), rng);

  std::vector<Breakpoint> bps;
  Vec start = oracle::random_vec(rng, d, scale);
  bps.push_back({a, start, start, start});
  for (std::size_t i = 0; i < ts.size(); ++i) {
    Breakpoint bp;
    bp.t = ts[i];
    bp.left = oracle::random_vec(rng, d, scale);
    if (jump_at[i]) {
      bp.value = oracle::random_vec(rng, d, scale);
      bp.right = right_continuous ? bp.value : Vec(oracle::random_vec(rng, d, scale));
    } else {
      bp.value = bp.left;
      bp.right = bp.left;
    }
    bps.push_back(bp);
  }
  Vec end = oracle::random_vec(rng, d, scale);
  bps.push_back({b, end, end, end});
  return BVPath(a, b, std::move(bps), right_continuous);
}

// Ball or box centred near the origin.
inline ConvexSet random_primitive(std::mt19937_64& rng, Eigen::Index d) {
  if (uniform_int(rng, 0, 1) == 0) {
    return ConvexSet::ball(oracle::random_vec(rng, d, 0.3), uniform(rng, 0.2, 1.0));
  }
  Vec lo(d), hi(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    lo(i) = uniform(rng, -1.0, -0.1);
    hi(i) = uniform(rng, 0.1, 1.0);
  }
  return ConvexSet::box(lo, hi);
}

// A point of `set` obtained by projecting a random point.
inline Vec random_member(std::mt19937_64& rng, const ConvexSet& set, double scale = 3.0) {
  return sweep::projection(set, oracle::random_vec(rng, set.dim(), scale));
}

struct SweepCase {
  MovingSet ms;
  std::vector<JumpPrescription> prescriptions;
  Vec y0;
  Vec y0_alt;
};

// Translate-mode scenario with up to three jumps and random prescriptions
// (projection, segment play, fixed target) at jump and continuity points.
inline SweepCase random_sweep_case(std::mt19937_64& rng) {
  const Eigen::Index d = uniform_int(rng, 1, 3);
  const int jumps = uniform_int(rng, 0, 3);
  const ConvexSet Z = random_primitive(rng, d);
  const BVPath u = random_path(rng, d, jumps);
  MovingSet ms = MovingSet::translate(Z, u);

  std::vector<double> times = u.jump_times();
  if (uniform_int(rng, 0, 1) == 1) times.push_back(uniform(rng, 0.1, 0.9));
  std::sort(times.begin(), times.end());
  std::vector<JumpPrescription> presc;
  for (double t : times) {
    if (!presc.empty() && std::abs(presc.back().t - t) < 1e-6) continue;
    JumpPrescription p;
    p.t = t;
    switch (uniform_int(rng, 0, 2)) {
      case 0: p.kind = sweep::JumpKind::Project; break;
      case 1:
        p.kind = sweep::JumpKind::SegmentPlay;
        p.substeps = 32;
        break;
      default:
        p.kind = sweep::JumpKind::FixedTarget;
        p.target = random_member(rng, ms.set_at(t));
        break;
    }
    presc.push_back(p);
  }
  const ConvexSet c0 = ms.set_at(ms.a());
  Vec y0 = random_member(rng, c0);
  Vec y1 = random_member(rng, c0);
  return SweepCase{std::move(ms), std::move(presc), std::move(y0), std::move(y1)};
}

// Unit-disk play input with `jumps` jumps and a curved history.
inline sweep::PlayInput random_disk_play(std::mt19937_64& rng, int jumps) {
  const BVPath u = random_path(rng, 2, jumps, 0.0, 1.0, true, 2.0);
  const ConvexSet Z = ConvexSet::ball(Vec::Zero(2), 1.0);
  return sweep::PlayInput{u, Z, random_member(rng, Z)};
}

}  // namespace gen
