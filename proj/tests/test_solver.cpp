#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "sweep/errors.hpp"
#include "sweep/play.hpp"
#include "sweep/solver.hpp"
#include "sweep/verify.hpp"

using namespace sweep;
using gen::vec;

namespace {

// C(t) = [t, inf): t - {z <= 0}.
MovingSet dragging_halfspace() {
  return MovingSet::translate(ConvexSet::halfspace(vec({1}), 0.0),
                              BVPath::piecewise_linear({0, 1}, {vec({0}), vec({1})}));
}

// [0,1] until t = 0.5, [2,3] afterwards.
MovingSet interval_jump() {
  return MovingSet::translate(ConvexSet::box(vec({-1}), vec({0})),
                              BVPath(0.0, 1.0,
                                     {{0.0, vec({0}), vec({0}), vec({0})},
                                      {0.5, vec({0}), vec({2}), vec({2})},
                                      {1.0, vec({2}), vec({2}), vec({2})}}));
}

// C(0.5-) = [0,1], C(0.5) = {5}, C(0.5+) = [2,3].
MovingSet three_sided_jump() {
  return MovingSet::family(
      {{0.0, 0.5, ConvexSet::box(vec({0}), vec({1})), ConvexSet::box(vec({0}), vec({1}))},
       {0.5, 1.0, ConvexSet::box(vec({2}), vec({3})), ConvexSet::box(vec({2}), vec({3}))}},
      {{0.5, ConvexSet::box(vec({5}), vec({5}))}});
}

SolverConfig quick() {
  SolverConfig cfg;
  cfg.base_steps = 16;
  cfg.max_refine = 2;
  return cfg;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::Parse;
}

}  // namespace

TEST_CASE("catching-up: dragging halfspace gives y = t exactly") {
  const auto times = uniform_partition(0, 1, 100, {});
  const auto traj = catching_up(dragging_halfspace(), vec({0}), times);
  REQUIRE(traj.rows.size() == times.size());
  for (std::size_t k = 0; k < times.size(); ++k) CHECK(traj.rows[k].y(0) == times[k]);
}

TEST_CASE("catching-up: stationary ball keeps an interior start") {
  const auto ms = MovingSet::translate(ConvexSet::ball(vec({0, 0}), 1.0),
                                       BVPath::constant(0, 1, vec({0, 0})));
  const auto traj = catching_up(ms, vec({0.3, 0.1}), uniform_partition(0, 1, 50, {}));
  for (const auto& r : traj.rows) CHECK(r.y == vec({0.3, 0.1}));
  CHECK(traj.variation_total == 0.0);
}

TEST_CASE("catching-up: moving ball pushes a boundary point at unit speed") {
  const auto ms = MovingSet::translate(ConvexSet::ball(vec({0, 0}), 1.0),
                                       BVPath::piecewise_linear({0, 1}, {vec({0, 0}), vec({1, 0})}));
  const auto traj = catching_up(ms, vec({-1, 0}), uniform_partition(0, 1, 64, {}));
  for (const auto& r : traj.rows) {
    CHECK(r.y(0) == doctest::Approx(r.t - 1.0).epsilon(1e-12));
    CHECK(r.y(1) == doctest::Approx(0.0));
  }
}

TEST_CASE("catching-up rejects infeasible starts and snaps near-feasible ones") {
  const auto ms = dragging_halfspace();
  const auto times = uniform_partition(0, 1, 8, {});
  CHECK(code_of([&] { catching_up(ms, vec({-0.5}), times); }) == ErrorCode::InfeasibleStart);
  const auto traj = catching_up(ms, vec({-1e-11}), times);
  CHECK(traj.rows.front().y(0) == 0.0);
}

TEST_CASE("solve_prescribed without prescriptions equals catching-up") {
  const auto ms = MovingSet::translate(ConvexSet::ball(vec({0, 0}), 1.0),
                                       BVPath::piecewise_linear({0, 0.4, 1}, {vec({0, 0}), vec({1, 1}), vec({-1, 0.5})}));
  const auto traj = solve_prescribed(ms, {}, vec({0.2, 0.2}), quick());
  const auto ref = catching_up(ms, vec({0.2, 0.2}), traj.times(), quick());
  REQUIRE(traj.rows.size() == ref.rows.size());
  for (std::size_t k = 0; k < ref.rows.size(); ++k) CHECK(traj.rows[k].y == ref.rows[k].y);
}

TEST_CASE("prescribed jumps") {
  const auto ms = interval_jump();
  const auto proj = solve_prescribed(ms, {{0.5, JumpKind::Project}}, vec({0}), quick());
  CHECK(proj.find(0.5, Side::Left)->y(0) == 0.0);
  CHECK(proj.find(0.5, Side::Value)->y(0) == 2.0);

  const auto fixed =
      solve_prescribed(ms, {{0.5, JumpKind::FixedTarget, vec({3})}}, vec({0}), quick());
  CHECK(fixed.find(0.5, Side::Value)->y(0) == 3.0);
  for (const auto& r : fixed.rows) {
    if (r.t > 0.5) CHECK(r.y(0) == 3.0);
  }
  CHECK(code_of([&] {
          solve_prescribed(ms, {{0.5, JumpKind::FixedTarget, vec({7})}}, vec({0}), quick());
        }) == ErrorCode::PrescriptionInfeasible);
  CHECK(code_of([&] {
          solve_prescribed(ms, {{0.5, JumpKind::Project}, {0.5, JumpKind::Project}}, vec({0}),
                           quick());
        }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { solve_prescribed(ms, {}, vec({4}), quick()); }) ==
        ErrorCode::InfeasibleStart);
}

TEST_CASE("refinement report") {
  const auto ms = dragging_halfspace();
  SolverConfig cfg = quick();
  cfg.max_refine = 0;
  const auto once = solve_prescribed(ms, {}, vec({0}), cfg);
  CHECK(once.refinement.levels == 0);
  CHECK_FALSE(once.refinement.converged);
  CHECK(std::isnan(once.refinement.cauchy_gap));
  cfg.max_refine = 3;
  const auto more = solve_prescribed(ms, {}, vec({0}), cfg);
  CHECK(more.refinement.converged);
  CHECK(more.refinement.cauchy_gap == 0.0);
  CHECK(more.refinement.steps_final == 32);
}

TEST_CASE("truncate_jump_set") {
  const auto ms = interval_jump();
  const std::vector<JumpPrescription> presc = {{0.5, JumpKind::Project}};
  const auto same = truncate_jump_set(presc, ms, 0.0);
  CHECK(same.kept.size() == 1);
  CHECK(same.error_bound == 0.0);

  const auto cont = truncate_jump_set({{0.25, JumpKind::Project}}, ms, 0.1);
  CHECK(cont.kept.empty());
  CHECK(cont.dropped.size() == 1);
  CHECK(cont.error_bound == 0.0);

  // C = [0, 0.3] on [0, 0.5], [0, 0.05] afterwards. Scores: sup over C(t-)
  // of |target - x| = 0.3 at t = 0.25 and 0.05 at t = 0.75.
  const auto fam = MovingSet::family(
      {{0.0, 0.5, ConvexSet::box(vec({0}), vec({0.3})), ConvexSet::box(vec({0}), vec({0.3}))},
       {0.5, 1.0, ConvexSet::box(vec({0}), vec({0.05})), ConvexSet::box(vec({0}), vec({0.05}))}});
  const std::vector<JumpPrescription> two = {{0.25, JumpKind::FixedTarget, vec({0.0})},
                                             {0.75, JumpKind::FixedTarget, vec({0.05})}};
  CHECK(jump_score(two[0], fam) == doctest::Approx(0.3));
  CHECK(jump_score(two[1], fam) == doctest::Approx(0.05));
  const auto tr = truncate_jump_set(two, fam, 0.1);
  REQUIRE(tr.kept.size() == 1);
  CHECK(tr.kept[0].t == 0.25);
  REQUIRE(tr.dropped.size() == 1);
  CHECK(tr.dropped[0].t == 0.75);
  CHECK(tr.error_bound == doctest::Approx(0.05));

  const auto unbounded = MovingSet::translate(ConvexSet::halfspace(vec({1}), 0.0),
                                              BVPath::constant(0, 1, vec({0})));
  CHECK(code_of([&] {
          truncate_jump_set({{0.5, JumpKind::FixedTarget, vec({-1})}}, unbounded, 0.1);
        }) == ErrorCode::Unbounded);
}

TEST_CASE("general BV solver: double projection") {
  const auto ms = three_sided_jump();
  const auto traj = solve_general_bv(ms, {}, vec({1}), quick());
  CHECK(traj.find(0.5, Side::Left)->y(0) == 1.0);
  CHECK(traj.find(0.5, Side::Value)->y(0) == 5.0);
  CHECK(traj.find(0.5, Side::Right)->y(0) == 3.0);

  JumpPrescription left{0.5, JumpKind::FixedTarget, vec({5})};
  JumpPrescription right{0.5, JumpKind::Project};
  right.side = Side::Right;
  const auto alt = solve_general_bv(ms, {left, right}, vec({1}), quick());
  REQUIRE(alt.rows.size() == traj.rows.size());
  for (std::size_t k = 0; k < alt.rows.size(); ++k) CHECK(alt.rows[k].y == traj.rows[k].y);

  // Arbitrary start: projected onto C(a).
  const auto far = solve_general_bv(ms, {}, vec({-4}), quick());
  CHECK(far.rows.front().y(0) == 0.0);

  CHECK(code_of([&] { solve_prescribed(ms, {}, vec({1}), quick()); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("general BV solver reduces to the prescribed solver when right-continuous") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = gen::random_sweep_case(rng);
    const auto times = scenario_partition(c.ms, c.prescriptions, quick(), 1);
    const auto p = solve_prescribed_on(c.ms, c.prescriptions, c.y0, times, quick(), 1);
    const auto g = solve_general_bv_on(c.ms, c.prescriptions, c.y0, times, quick(), 1);
    REQUIRE(p.rows.size() == g.rows.size());
    for (std::size_t k = 0; k < p.rows.size(); ++k) {
      CHECK(p.rows[k].t == g.rows[k].t);
      CHECK(p.rows[k].y == g.rows[k].y);
    }
  }
}

TEST_CASE("random scenarios: feasibility, contraction, variation bound, density bound") {
  std::mt19937_64 rng(29);
  const SolverConfig cfg = quick();
  for (int trial = 0; trial < 30; ++trial) {
    const auto c = gen::random_sweep_case(rng);
    const auto times = scenario_partition(c.ms, c.prescriptions, cfg, 1);
    const auto ya = solve_prescribed_on(c.ms, c.prescriptions, c.y0, times, cfg, 1);
    const auto yb = solve_prescribed_on(c.ms, c.prescriptions, c.y0_alt, times, cfg, 1);
    CHECK(check_feasibility(ya, c.ms).passed);
    CHECK(check_contraction(ya, yb).passed);
    CHECK(check_variation_bound(ya, c.ms, c.prescriptions).passed);

    // Without prescriptions every step is dominated by the set's motion.
    const auto free = catching_up(c.ms, c.y0, times, cfg);
    for (std::size_t k = 1; k < free.rows.size(); ++k) {
      const auto& r0 = free.rows[k - 1];
      const auto& r1 = free.rows[k];
      const double dh = hausdorff(c.ms.set_at(r0.t, r0.side), c.ms.set_at(r1.t, r1.side)).value;
      CHECK(r1.step <= dh * (1 + 1e-12) + 1e-15);
    }
  }
}

TEST_CASE("refinement gaps shrink in most random scenarios") {
  std::mt19937_64 rng(31);
  const SolverConfig cfg;
  int monotone = 0;
  const int total = 30;
  for (int trial = 0; trial < total; ++trial) {
    const auto c = gen::random_sweep_case(rng);
    std::vector<double> gaps;
    Trajectory prev;
    for (int level = 0; level <= 3; ++level) {
      const auto times = scenario_partition(c.ms, c.prescriptions, cfg, level);
      auto cur = solve_prescribed_on(c.ms, c.prescriptions, c.y0, times, cfg, level);
      if (level > 0) gaps.push_back(sup_gap(prev, cur));
      prev = std::move(cur);
    }
    bool ok = true;
    for (std::size_t i = 1; i < gaps.size(); ++i) ok = ok && gaps[i] <= gaps[i - 1];
    monotone += ok ? 1 : 0;
  }
  CHECK(monotone >= (9 * total) / 10);
}

TEST_CASE("partitions nest under refinement") {
  const auto coarse = uniform_partition(0.0, 1.0, 10, {0.37});
  const auto fine = uniform_partition(0.0, 1.0, 20, {0.37});
  for (double t : coarse) CHECK(std::find(fine.begin(), fine.end(), t) != fine.end());
  CHECK(std::is_sorted(fine.begin(), fine.end()));
}
