#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "oracles.hpp"
#include "sweep/errors.hpp"
#include "sweep/geometry.hpp"

using namespace sweep;
using gen::vec;

namespace {

ConvexSet triangle() {
  return ConvexSet::polytope({{vec({-1, 0}), 0.0},
                              {vec({0, -1}), 0.0},
                              {vec({1, 1}) / std::sqrt(2.0), 1.0 / std::sqrt(2.0)}});
}

std::vector<oracle::Plane> planes_of(const ConvexSet& s) {
  std::vector<oracle::Plane> out;
  for (const auto& h : s.as_polytope().halfspaces) out.push_back({h.normal, h.offset});
  return out;
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

// Random polytope with 1..4 halfspaces in dimension 1..3 around a known
// interior point.
ConvexSet random_polytope(std::mt19937_64& rng) {
  const Eigen::Index d = gen::uniform_int(rng, 1, 3);
  const int m = gen::uniform_int(rng, 1, 4);
  const Vec p = oracle::random_vec(rng, d, 1.0);
  std::vector<Halfspace> hs;
  for (int i = 0; i < m; ++i) {
    const Vec n = oracle::random_unit(rng, d);
    hs.push_back({n, n.dot(p) + gen::uniform(rng, 0.0, 1.0)});
  }
  return ConvexSet::polytope(hs);
}

}  // namespace

TEST_CASE("closed-form projections") {
  CHECK(projection(ConvexSet::ball(vec({0, 0}), 1.0), vec({2, 0})) == vec({1, 0}));
  CHECK(projection(ConvexSet::box(vec({0, 0}), vec({1, 1})), vec({0.5, 0.3})) == vec({0.5, 0.3}));
  const auto h = ConvexSet::halfspace(vec({0, 1}), 2.0);
  CHECK(projection(h, vec({3, 5})) == vec({3, 2}));
  const auto tr = ConvexSet::translate(ConvexSet::box(vec({-1}), vec({1})), vec({0.5}));
  CHECK(projection(tr, vec({3.0}))(0) == doctest::Approx(1.5));
  CHECK(projection(tr, vec({-3.0}))(0) == doctest::Approx(-0.5));
}

TEST_CASE("triangle projection matches the face-enumeration oracle") {
  const auto tri = triangle();
  const Vec p = projection(tri, vec({1, 1}));
  CHECK((p - vec({0.5, 0.5})).norm() < 1e-8);
  const auto ref = oracle::face_enumeration_projection(planes_of(tri), vec({1, 1}));
  REQUIRE(ref.has_value());
  CHECK((p - *ref).norm() < 1e-8);
}

TEST_CASE("support function") {
  CHECK(support(ConvexSet::ball(vec({0, 0}), 2.0), vec({0, 1})) == doctest::Approx(2.0));
  CHECK(support(ConvexSet::box(vec({-1, -1}), vec({1, 1})), vec({1, 1})) == doctest::Approx(2.0));
  const auto tri = triangle();
  CHECK(support(tri, vec({1, 2})) ==
        doctest::Approx(oracle::vertex_support(planes_of(tri), vec({1, 2}))));
  CHECK(support(tri, vec({1, 2})) == doctest::Approx(2.0));
  CHECK(code_of([] { support(ConvexSet::halfspace(vec({1, 0}), 0.0), vec({0, 1})); }) ==
        ErrorCode::Unbounded);
}

TEST_CASE("membership") {
  const auto ball = ConvexSet::ball(vec({0, 0}), 1.0);
  CHECK(contains(ball, vec({1, 0}), 0.0));
  CHECK_FALSE(contains(ball, vec({1.1, 0}), 0.05));
  CHECK(contains(triangle(), vec({0.2, 0.2}), 0.0));
}

TEST_CASE("hausdorff distances") {
  CHECK(hausdorff(ConvexSet::box(vec({0}), vec({1})), ConvexSet::box(vec({2}), vec({3}))).value ==
        doctest::Approx(2.0));
  const auto Z = ConvexSet::ball(vec({0.2, 0.1}), 0.7);
  const auto h = hausdorff(ConvexSet::translate(Z, vec({1, 2})), ConvexSet::translate(Z, vec({4, 6})));
  CHECK(h.value == doctest::Approx(5.0));
  CHECK_FALSE(h.approximate);
  CHECK(hausdorff(ConvexSet::ball(vec({0, 0}), 1.0), ConvexSet::ball(vec({0, 0}), 3.0)).value ==
        doctest::Approx(2.0));
  CHECK(code_of([] {
          hausdorff(ConvexSet::ball(vec({0}), 1.0), ConvexSet::halfspace(vec({1}), 0.0));
        }) == ErrorCode::UnsupportedPair);

  // Two bounded polytopes: the sampled value brackets the true distance.
  const auto tri = triangle();
  const auto shifted = ConvexSet::polytope({{vec({-1, 0}), -1.0},
                                            {vec({0, -1}), 0.0},
                                            {vec({1, 1}) / std::sqrt(2.0), 2.0 / std::sqrt(2.0)}});
  const auto hp = hausdorff(tri, shifted, 7);
  CHECK(hp.approximate);
  CHECK(hp.value <= 1.0 + 1e-9);
  CHECK(hp.upper_bound >= 1.0 - 1e-9);
}

TEST_CASE("normal cone violation") {
  const auto ball = ConvexSet::ball(vec({0, 0}), 1.0);
  CHECK(normal_cone_violation(ball, vec({1, 0}), vec({-2, 0})) == doctest::Approx(0.0));
  CHECK(normal_cone_violation(ball, vec({0, 0}), vec({1, 0})) == doctest::Approx(1.0));
  CHECK(normal_cone_violation(triangle(), vec({0.2, 0.2}), vec({0, 0})) == 0.0);
}

TEST_CASE("validation errors name the field") {
  try {
    ConvexSet::ball(vec({0, 0}), -1.0);
    FAIL("accepted a negative radius");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidArgument);
    CHECK(std::string(e.what()).find("radius") != std::string::npos);
  }
  CHECK(code_of([] { ConvexSet::box(vec({1}), vec({0})); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { ConvexSet::halfspace(vec({2, 0}), 0.0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] {
          ConvexSet::polytope({{vec({1}), -1.0}, {vec({-1}), -1.0}});
        }) == ErrorCode::InvalidArgument);
  // Flat sets are allowed.
  CHECK(projection(ConvexSet::ball(vec({1, 1}), 0.0), vec({3, 4})) == vec({1, 1}));
  CHECK(projection(ConvexSet::box(vec({0, 2}), vec({1, 2})), vec({3, 4})) == vec({1, 2}));
}

TEST_CASE("projection properties on random sets") {
  std::mt19937_64 rng(11);
  const ProjectionConfig cfg;
  for (int trial = 0; trial < 60; ++trial) {
    const ConvexSet set = trial % 3 == 0 ? random_polytope(rng) : gen::random_primitive(rng, gen::uniform_int(rng, 1, 3));
    const Eigen::Index d = set.dim();
    for (int q = 0; q < 10; ++q) {
      const Vec x1 = oracle::random_vec(rng, d, 3.0);
      const Vec x2 = oracle::random_vec(rng, d, 3.0);
      const Vec p1 = projection(set, x1);
      const Vec p2 = projection(set, x2);
      CHECK(contains(set, p1, cfg.tol_feas));
      CHECK((projection(set, p1) - p1).norm() <= 2 * cfg.tol_proj);
      CHECK((p1 - p2).norm() <= (x1 - x2).norm() + 2 * cfg.tol_proj);
      for (int k = 0; k < 100; ++k) {
        const Vec z = projection(set, oracle::random_vec(rng, d, 3.0));
        CHECK((x1 - p1).dot(z - p1) <= 1e-8);
        const Vec dir = oracle::random_unit(rng, d);
        if (set.kind() != SetKind::HPolytope) CHECK(support(set, dir) >= dir.dot(z) - 1e-12);
      }
    }
  }
}

TEST_CASE("polytope projection agrees with the oracle") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const ConvexSet poly = random_polytope(rng);
    const auto planes = planes_of(poly);
    for (int q = 0; q < 5; ++q) {
      const Vec x = oracle::random_vec(rng, poly.dim(), 3.0);
      const auto ref = oracle::face_enumeration_projection(planes, x);
      REQUIRE(ref.has_value());
      CHECK((projection(poly, x) - *ref).norm() <= 1e-8);
    }
  }
}

TEST_CASE("translates of a primitive keep interior points bitwise") {
  const auto Z = ConvexSet::ball(vec({0.1, -0.2}), 0.9);
  const auto C = ConvexSet::translate(Z, vec({0.3, 0.7}));
  const Vec inside = vec({0.25, 0.8});
  REQUIRE(contains(C, inside, 0.0));
  CHECK(projection(C, inside) == inside);
  CHECK(canonical(C).kind() == SetKind::Ball);
}
