#include <doctest.h>

#include "generators.hpp"
#include "sweep/errors.hpp"
#include "sweep/movingset.hpp"

using namespace sweep;
using gen::vec;

namespace {

const ConvexSet kInterval = ConvexSet::box(vec({-1}), vec({1}));

MovingSet step_translate(double size = 2.0) {
  return MovingSet::translate(kInterval, BVPath(0.0, 1.0,
                                                {{0.0, vec({0}), vec({0}), vec({0})},
                                                 {0.5, vec({0}), vec({size}), vec({size})},
                                                 {1.0, vec({size}), vec({size}), vec({size})}}));
}

}  // namespace

TEST_CASE("set_at") {
  const auto ramp = MovingSet::translate(kInterval, BVPath::piecewise_linear({0, 1}, {vec({0}), vec({1})}));
  const auto c = canonical(ramp.set_at(0.5));
  CHECK(c.as_box().lo(0) == doctest::Approx(-0.5));
  CHECK(c.as_box().hi(0) == doctest::Approx(1.5));

  const auto grow = MovingSet::family({{0.0, 1.0, ConvexSet::ball(vec({0, 0}), 1.0),
                                        ConvexSet::ball(vec({0, 0}), 2.0)}});
  CHECK(grow.set_at(0.0).as_ball().radius == 1.0);
  CHECK(grow.set_at(0.5).as_ball().radius == doctest::Approx(1.5));

  const auto step = step_translate();
  CHECK(step.set_at(0.5, Side::Left).as_translate().shift(0) == 0.0);
  CHECK(step.set_at(0.5, Side::Value).as_translate().shift(0) == 2.0);
  CHECK_THROWS_AS(step.set_at(2.0), Error);
}

TEST_CASE("moving variation") {
  const auto ramp = MovingSet::translate(kInterval, BVPath::piecewise_linear({0, 1}, {vec({0}), vec({1})}));
  CHECK(ramp.variation(0, 1).value == 1.0);
  const auto grow = MovingSet::family({{0.0, 1.0, ConvexSet::ball(vec({0, 0}), 1.0),
                                        ConvexSet::ball(vec({0, 0}), 2.0)}});
  CHECK(grow.variation(0, 1).value == doctest::Approx(1.0).epsilon(1e-6));
  const auto mixed = MovingSet::translate(
      kInterval, BVPath(0.0, 1.0,
                        {{0.0, vec({0}), vec({0}), vec({0})},
                         {0.5, vec({0}), vec({2}), vec({2})},
                         {1.0, vec({3}), vec({3}), vec({3})}}));
  CHECK(mixed.variation(0, 1).value == doctest::Approx(3.0));
}

TEST_CASE("jump times") {
  const auto ramp = MovingSet::translate(kInterval, BVPath::piecewise_linear({0, 1}, {vec({0}), vec({1})}));
  CHECK(ramp.jump_times().empty());
  const auto one = step_translate().jump_times();
  REQUIRE(one.size() == 1);
  CHECK(one[0].t == 0.5);
  const auto two = MovingSet::translate(
      kInterval, BVPath(0.0, 1.0,
                        {{0.0, vec({0}), vec({0}), vec({0})},
                         {0.3, vec({0}), vec({1}), vec({1})},
                         {0.6, vec({1}), vec({-1}), vec({-1})},
                         {1.0, vec({-1}), vec({-1}), vec({-1})}}));
  const auto recs = two.jump_times();
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].t < recs[1].t);
  for (const auto& r : recs) {
    bool is_break = false;
    for (double t : two.breakpoints()) is_break = is_break || t == r.t;
    CHECK(is_break);
  }
}

TEST_CASE("family mode with an explicit value at a jump") {
  const auto ms = MovingSet::family(
      {{0.0, 0.5, ConvexSet::box(vec({0}), vec({1})), ConvexSet::box(vec({0}), vec({1}))},
       {0.5, 1.0, ConvexSet::box(vec({2}), vec({3})), ConvexSet::box(vec({2}), vec({3}))}},
      {{0.5, ConvexSet::box(vec({5}), vec({5}))}});
  CHECK_FALSE(ms.right_continuous());
  CHECK(ms.set_at(0.5, Side::Left).as_box().hi(0) == 1.0);
  CHECK(ms.set_at(0.5, Side::Value).as_box().lo(0) == 5.0);
  CHECK(ms.set_at(0.5, Side::Right).as_box().lo(0) == 2.0);
  // d_H([0,1],{5}) + d_H({5},[2,3]) = 5 + 3
  CHECK(ms.variation(0, 1).value == doctest::Approx(8.0));
  CHECK(ms.jump_times().size() == 1);
}

TEST_CASE("translate variation is exact and additive") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index d = gen::uniform_int(rng, 1, 3);
    const BVPath u = gen::random_path(rng, d, gen::uniform_int(rng, 0, 3));
    const auto ms = MovingSet::translate(gen::random_primitive(rng, d), u);
    CHECK(ms.variation(0, 1).value == u.variation(0, 1));
    CHECK_FALSE(ms.variation(0, 1).approximate);
    // Additivity at a continuity point.
    double r = gen::uniform(rng, 0.05, 0.95);
    if (u.breakpoint_index(r) >= 0) r += 1e-3;
    const double whole = ms.variation(0, 1).value;
    CHECK(ms.variation(0, r).value + ms.variation(r, 1).value ==
          doctest::Approx(whole).epsilon(1e-9));
  }
}

TEST_CASE("family segments must cover the domain") {
  CHECK_THROWS_AS(MovingSet::family({{0.0, 0.4, kInterval, kInterval}, {0.5, 1.0, kInterval, kInterval}}),
                  Error);
}
