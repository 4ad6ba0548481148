#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "oracles.hpp"
#include "sweep/errors.hpp"
#include "sweep/play.hpp"
#include "sweep/verify.hpp"

using namespace sweep;
using gen::vec;

namespace {

const ConvexSet kUnitInterval = ConvexSet::box(vec({-1}), vec({1}));
const ConvexSet kDisk = ConvexSet::ball(vec({0, 0}), 1.0);

SolverConfig steps(int n, int refine = 0) {
  SolverConfig cfg;
  cfg.base_steps = n;
  cfg.max_refine = refine;
  return cfg;
}

BVPath scalar_step() {
  return BVPath(0.0, 1.0,
                {{0.0, vec({0}), vec({0}), vec({0})},
                 {0.5, vec({0}), vec({1}), vec({1})},
                 {1.0, vec({1}), vec({1}), vec({1})}});
}

// Pushes z to the top of the disk, then jumps sideways.
BVPath disk_witness_input() {
  return BVPath(0.0, 1.0,
                {{0.0, vec({0, 0}), vec({0, 0}), vec({0, 0})},
                 {0.25, vec({0.3, 1.0}), vec({0.3, 1.0}), vec({0.3, 1.0})},
                 {0.5, vec({0, 2}), vec({3, 2}), vec({3, 2})},
                 {1.0, vec({3, 2}), vec({3, 2}), vec({3, 2})}});
}

double sup_between(const Trajectory& a, const Trajectory& b) {
  double worst = 0.0;
  for (const auto& r : a.rows) {
    const auto* m = b.find(r.t, r.side);
    if (m != nullptr) worst = std::max(worst, (m->y - r.y).norm());
  }
  return worst;
}

}  // namespace

TEST_CASE("scalar play of a ramp follows max(0, 2t - 1)") {
  const PlayInput in{BVPath::piecewise_linear({0, 1}, {vec({0}), vec({2})}), kUnitInterval, vec({0})};
  const auto traj = play(in, steps(256));
  const double h = 1.0 / 256;
  for (const auto& r : traj.rows) {
    CHECK(std::abs(r.y(0) - oracle::ramp_play_exact(r.t)) <= 2 * h);
    CHECK(contains(kUnitInterval, in.u.eval(r.t) - r.y, 1e-9));
  }
}

TEST_CASE("constant input leaves y at u - z0") {
  const PlayInput in{BVPath::constant(0, 1, vec({1, 2})), kDisk, vec({0.5, 0})};
  for (const auto& r : play(in, steps(16)).rows) CHECK(r.y == vec({0.5, 2}));
}

TEST_CASE("boundary start is pushed immediately") {
  const PlayInput in{BVPath::piecewise_linear({0, 1}, {vec({0}), vec({1})}), kUnitInterval, vec({1})};
  for (const auto& r : play(in, steps(32)).rows) CHECK(r.y(0) == doctest::Approx(r.t - 1.0));
}

TEST_CASE("monotone scalar inputs match the running-maximum formula") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const double s = gen::uniform(rng, 0.2, 1.0);
    std::vector<Breakpoint> bps;
    double level = gen::uniform(rng, -1, 1);
    bps.push_back({0.0, vec({level}), vec({level}), vec({level})});
    for (double t : {0.2, 0.45, 0.7}) {
      const double left = level + gen::uniform(rng, 0, 1);
      const double value = gen::uniform_int(rng, 0, 1) ? left + gen::uniform(rng, 0, 1) : left;
      bps.push_back({t, vec({left}), vec({value}), vec({value})});
      level = value;
    }
    const double end = level + gen::uniform(rng, 0, 1);
    bps.push_back({1.0, vec({end}), vec({end}), vec({end})});
    const BVPath u(0.0, 1.0, bps);
    const double z0 = gen::uniform(rng, -s, s);
    const PlayInput in{u, ConvexSet::box(vec({-s}), vec({s})), vec({z0})};
    const auto traj = play(in, steps(128));
    const double h = 1.0 / 128;
    const double y_a = u.eval(0)(0) - z0;
    for (const auto& r : traj.rows) {
      // u is nondecreasing, so sup_{r <= t} u = u(t) (or u(t-) on a left row).
      const double exact = std::max(y_a, u.eval(r.t, r.side)(0) - s);
      CHECK(std::abs(r.y(0) - exact) <= 2 * h);
    }
  }
}

TEST_CASE("solving in two pieces matches one solve") {
  const BVPath u = BVPath::piecewise_linear({0, 0.3, 0.5, 0.8, 1},
                                            {vec({0, 0}), vec({1, 1}), vec({2, -1}), vec({0, 0.5}), vec({1, 1})});
  const PlayInput in{u, kDisk, vec({0.2, 0.1})};
  const auto times = uniform_partition(0, 1, 40, {0.3, 0.5, 0.8});
  const auto whole = play_on(in, times);
  std::vector<double> first(times.begin(), std::find(times.begin(), times.end(), 0.5) + 1);
  std::vector<double> second(std::find(times.begin(), times.end(), 0.5), times.end());
  const BVPath u1 = BVPath::piecewise_linear({0, 0.3, 0.5}, {vec({0, 0}), vec({1, 1}), vec({2, -1})});
  const BVPath u2 = BVPath::piecewise_linear({0.5, 0.8, 1}, {vec({2, -1}), vec({0, 0.5}), vec({1, 1})});
  const auto head = play_on(PlayInput{u1, kDisk, in.z0}, first);
  const Vec yc = whole.find(0.5, Side::Value)->y;
  const auto tail = catching_up(MovingSet::translate(kDisk, u2), yc, second);
  for (const auto& r : head.rows) CHECK(r.y == whole.find(r.t, r.side)->y);
  for (const auto& r : tail.rows) CHECK(r.y == whole.find(r.t, r.side)->y);
}

TEST_CASE("extended play agrees with play on continuous inputs") {
  const BVPath u = BVPath::piecewise_linear({0, 0.4, 1}, {vec({0, 0}), vec({1.5, 1}), vec({-1, 2})});
  const PlayInput in{u, kDisk, vec({0, 0})};
  SolverConfig cfg = steps(64, 8);
  const auto p = play(in, cfg);
  const auto pb = play_bar(in, cfg);
  CHECK(sup_between(pb, p) <= 2 * cfg.tol_traj);
}

TEST_CASE("scalar jumps: extended play equals play") {
  const PlayInput in{scalar_step(), ConvexSet::box(vec({-0.25}), vec({0.25})), vec({0})};
  SolverConfig cfg = steps(32, 6);
  const auto p = play(in, cfg);
  const auto pb = play_bar(in, cfg);
  CHECK(sup_between(pb, p) <= 2 * cfg.tol_traj);
  CHECK(pb.find(0.5, Side::Value)->y(0) == doctest::Approx(0.75));
}

TEST_CASE("disk jump: extended play differs from play") {
  const PlayInput in{disk_witness_input(), kDisk, vec({0, 0})};
  SolverConfig cfg = steps(32, 8);
  const auto p = play(in, cfg);
  const auto pb = play_bar(in, cfg);
  CHECK(p.refinement.converged);
  CHECK(pb.refinement.converged);
  CHECK(sup_between(pb, p) > 10 * cfg.tol_traj);
}

TEST_CASE("segment play jump") {
  CHECK(segment_play_jump(kDisk, vec({1, 1}), vec({1, 1}), vec({0.5, 0.5}), 64) == vec({0.5, 0.5}));

  // Scalar monotone segments saturate like a projection.
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec um = oracle::random_vec(rng, 1, 2.0);
    const Vec up = oracle::random_vec(rng, 1, 4.0);
    const Vec ym = um - gen::random_member(rng, kUnitInterval);
    const Vec y = segment_play_jump(kUnitInterval, um, up, ym, 16);
    const Vec ref = projection(ConvexSet::translate(kUnitInterval, up), ym);
    CHECK(y(0) == doctest::Approx(ref(0)).epsilon(1e-14));
  }

  // Disk example: first-order self-consistency as substeps double.
  const Vec um = vec({0, 0}), up = vec({3, 0}), ym = vec({0, -1});
  double prev_change = 0.0;
  Vec prev = segment_play_jump(kDisk, um, up, ym, 256);
  for (int n = 512; n <= 4096; n *= 2) {
    const Vec cur = segment_play_jump(kDisk, um, up, ym, n);
    const double change = (cur - prev).norm();
    if (prev_change > 0) CHECK(change < 0.6 * prev_change);
    CHECK(contains(ConvexSet::translate(kDisk, up), cur, 1e-9));
    prev_change = change;
    prev = cur;
  }
  const auto adaptive = segment_play_adaptive(kDisk, um, up, ym);
  CHECK(adaptive.substeps <= (1 << 16));
  CHECK((adaptive.value - prev).norm() < 1e-4);
  CHECK_THROWS_AS(segment_play_jump(kDisk, um, up, vec({5, 5}), 8), Error);
}

TEST_CASE("segment play is nonexpansive in the starting state") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 30; ++trial) {
    const Vec um = oracle::random_vec(rng, 2, 1.0);
    const Vec up = oracle::random_vec(rng, 2, 3.0);
    const Vec y1 = um - gen::random_member(rng, kDisk);
    const Vec y2 = um - gen::random_member(rng, kDisk);
    const Vec g1 = segment_play_jump(kDisk, um, up, y1, 64);
    const Vec g2 = segment_play_jump(kDisk, um, up, y2, 64);
    CHECK((g1 - g2).norm() <= (y1 - y2).norm());
  }
}

TEST_CASE("rate independence is exact on matched partitions") {
  const PlayInput ramp{BVPath::piecewise_linear({0, 1}, {vec({0}), vec({2})}), kUnitInterval, vec({0})};
  for (const auto& psi : canned_reparametrizations(0, 1)) {
    CHECK(check_rate_independence(ramp, psi, steps(64)).discrepancy == 0.0);
  }
  const Reparametrization square{{0, 0.25, 0.5, 0.75, 1}, {0, 0.0625, 0.25, 0.5625, 1}};
  CHECK(check_rate_independence(ramp, square, steps(64)).discrepancy == 0.0);
  const PlayInput jumpy{disk_witness_input(), kDisk, vec({0.1, 0})};
  for (const auto& psi : canned_reparametrizations(0, 1)) {
    const auto rep = check_rate_independence(jumpy, psi, steps(32));
    CHECK(rep.discrepancy == 0.0);
    CHECK(rep.matched_rows > 30);
  }
}

TEST_CASE("invalid reparametrizations") {
  auto code = [](const Reparametrization& psi) {
    try {
      validate_reparametrization(psi, 0, 1);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Parse;
  };
  CHECK(code({{0, 0.5, 1}, {0, 0.7, 0.6}}) == ErrorCode::InvalidReparam);
  CHECK(code({{0, 1}, {0, 0.9}}) == ErrorCode::InvalidReparam);
  CHECK(code({{0, 0.5, 0.4, 1}, {0, 0.5, 0.6, 1}}) == ErrorCode::InvalidReparam);
}

TEST_CASE("play input validation") {
  const PlayInput bad{BVPath::constant(0, 1, vec({0})), kUnitInterval, vec({3})};
  try {
    play(bad, steps(8));
    FAIL("accepted z0 outside Z");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InfeasibleStart);
  }
}

TEST_CASE("segment-play sweeping and extended play agree on a disk with jumps") {
  std::mt19937_64 rng(53);
  SolverConfig cfg = steps(32, 8);
  for (int trial = 0; trial < 3; ++trial) {
    const PlayInput in = gen::random_disk_play(rng, gen::uniform_int(rng, 1, 3));
    const SolverConfig eq = equivalence_config(cfg);
    const auto seg = play_segment_jumps(in, eq);
    const auto bar = play_bar(in, eq);
    CHECK(sup_between(seg, bar) <= 2 * (cfg.tol_traj + cfg.segment_tol));
  }
}
