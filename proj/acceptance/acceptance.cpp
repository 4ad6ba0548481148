// Acceptance runner: one PASS/FAIL line per criterion, exit status 0 iff all
// criteria pass.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "oracles.hpp"
#include "sweep/errors.hpp"
#include "sweep/play.hpp"
#include "sweep/solver.hpp"
#include "sweep/verify.hpp"

using namespace sweep;
using gen::vec;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string ratio(int ok, int total) { return std::to_string(ok) + "/" + std::to_string(total); }

double sup_matched(const Trajectory& a, const Trajectory& b) {
  double worst = 0.0;
  for (const auto& r : a.rows) {
    const auto* m = b.find(r.t, r.side);
    if (m == nullptr) throw Error(ErrorCode::MismatchedScenario, "unmatched row");
    worst = std::max(worst, (m->y - r.y).norm());
  }
  return worst;
}

// 1. Scalar play of u = 2t on Z = [-1, 1] against y = max(0, 2t - 1).
Outcome scalar_play() {
  const PlayInput in{BVPath::piecewise_linear({0, 1}, {vec({0}), vec({2})}),
                     ConvexSet::box(vec({-1}), vec({1})), vec({0})};
  auto error_at = [&](int steps) {
    SolverConfig cfg;
    cfg.base_steps = steps;
    cfg.max_refine = 0;
    const Trajectory traj = play(in, cfg);
    double worst = 0.0;
    constexpr int kSamples = 8;
    for (long k = 0; k < steps; ++k) {
      for (int j = 0; j < kSamples; ++j) {
        const double t = (static_cast<double>(k) + static_cast<double>(j) / kSamples) / steps;
        worst = std::max(worst, std::abs(traj.value_at(t)(0) - oracle::ramp_play_exact(t)));
      }
    }
    return std::max(worst, std::abs(traj.value_at(1.0)(0) - oracle::ramp_play_exact(1.0)));
  };
  const double e1 = error_at(1024);
  const double e2 = error_at(2048);
  const double r = e2 / e1;
  const bool ok = e1 <= 2.0 / 1024 && r >= 0.5 * 0.8 && r <= 0.5 * 1.2;
  return {ok, "sup error at 1024 steps " + fmt("%.4e", e1) + " (limit " + fmt("%.4e", 2.0 / 1024) +
                  "), error ratio 2048/1024 " + fmt("%.4f", r)};
}

// 2 and 3 share the randomized scenarios.
struct SweepStats {
  int contraction_ok = 0;
  int variation_ok = 0;
  int moreau_ok = 0;
  int total = 0;
  double worst_contraction = 0.0;
  double worst_moreau_excess = -1e300;
};

SweepStats sweep_stats() {
  SweepStats s;
  std::mt19937_64 rng(20240601);
  const SolverConfig cfg;
  for (int i = 0; i < 100; ++i) {
    const auto c = gen::random_sweep_case(rng);
    const int level = 2;
    const auto times = scenario_partition(c.ms, c.prescriptions, cfg, level);
    const auto ya = solve_prescribed_on(c.ms, c.prescriptions, c.y0, times, cfg, level);
    const auto yb = solve_prescribed_on(c.ms, c.prescriptions, c.y0_alt, times, cfg, level);
    const auto con = check_contraction(ya, yb);
    s.contraction_ok += con.passed ? 1 : 0;
    s.worst_contraction = std::max(s.worst_contraction, con.worst_violation);
    const auto var = check_variation_bound(ya, c.ms, c.prescriptions, cfg.seed);
    s.variation_ok += var.passed && !var.skipped ? 1 : 0;

    const auto free = catching_up(c.ms, c.y0, times, cfg);
    const auto budget = variation_budget(free, c.ms, {}, cfg.seed);
    const double excess = free.variation_total - budget.bound;
    s.worst_moreau_excess = std::max(s.worst_moreau_excess, excess);
    s.moreau_ok += excess <= budget.tolerance ? 1 : 0;
    ++s.total;
  }
  return s;
}

// 4. Rate independence on matched partitions.
Outcome rate_independence() {
  std::mt19937_64 rng(7);
  SolverConfig cfg;
  int ok = 0;
  int total = 0;
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Eigen::Index d = gen::uniform_int(rng, 1, 2);
    const BVPath u = gen::random_path(rng, d, gen::uniform_int(rng, 0, 3));
    const ConvexSet Z = gen::random_primitive(rng, d);
    const PlayInput in{u, Z, gen::random_member(rng, Z)};
    for (const auto& psi : canned_reparametrizations(0, 1)) {
      const auto rep = check_rate_independence(in, psi, cfg);
      worst = std::max(worst, rep.discrepancy);
      ok += rep.discrepancy == 0.0 ? 1 : 0;
      ++total;
    }
  }
  return {ok == total, ratio(ok, total) + " with discrepancy exactly 0, worst " + fmt("%.3e", worst)};
}

// 5. Segment-play sweeping versus extended play on the unit disk.
Outcome pipeline_equivalence() {
  std::mt19937_64 rng(99);
  const SolverConfig cfg;
  const double tol = 2.0 * (cfg.tol_traj + 1e-8);
  int ok = 0;
  double worst = 0.0;
  for (int i = 0; i < 25; ++i) {
    const PlayInput in = gen::random_disk_play(rng, gen::uniform_int(rng, 1, 3));
    const SolverConfig eq = equivalence_config(cfg);
    const Trajectory seg = play_segment_jumps(in, eq);
    const Trajectory bar = play_bar(in, eq);
    const bool seg_coarser = seg.rows.size() <= bar.rows.size();
    const double gap = seg_coarser ? sup_matched(seg, bar) : sup_matched(bar, seg);
    worst = std::max(worst, gap);
    ok += gap <= tol ? 1 : 0;
  }
  return {ok == 25, ratio(ok, 25) + " within " + fmt("%.4e", tol) + ", worst gap " + fmt("%.3e", worst)};
}

// 6. Double projection at jumps of sets that are not right-continuous.
Outcome double_projection() {
  std::mt19937_64 rng(61);
  SolverConfig cfg;
  cfg.max_refine = 2;
  int ok = 0;
  double worst = 0.0;
  auto random_box = [&](Eigen::Index d) {
    Vec lo = oracle::random_vec(rng, d, 2.0);
    Vec hi = lo;
    for (Eigen::Index i = 0; i < d; ++i) hi(i) += gen::uniform(rng, 0.0, 1.0);
    return ConvexSet::box(lo, hi);
  };
  for (int i = 0; i < 20; ++i) {
    const Eigen::Index d = gen::uniform_int(rng, 1, 2);
    const int jumps = gen::uniform_int(rng, 1, 3);
    std::vector<double> cuts;
    for (int j = 1; j <= jumps; ++j) cuts.push_back(static_cast<double>(j) / (jumps + 1) + gen::uniform(rng, -0.05, 0.05));
    std::vector<FamilySegment> segs;
    double t0 = 0.0;
    for (std::size_t j = 0; j <= cuts.size(); ++j) {
      const double t1 = j < cuts.size() ? cuts[j] : 1.0;
      segs.push_back({t0, t1, random_box(d), random_box(d)});
      t0 = t1;
    }
    std::vector<FamilyOverride> overrides;
    for (double t : cuts) overrides.push_back({t, random_box(d)});
    const MovingSet ms = MovingSet::family(segs, overrides);
    const Trajectory traj = solve_general_bv(ms, {}, oracle::random_vec(rng, d, 3.0), cfg);
    double local = 0.0;
    for (double t : cuts) {
      const auto* left = traj.find(t, Side::Left);
      const auto* at = traj.find(t, Side::Value);
      const auto* right = traj.find(t, Side::Right);
      if (left == nullptr || at == nullptr || right == nullptr) {
        local = INFINITY;
        continue;
      }
      local = std::max(local, (at->y - projection(ms.set_at(t, Side::Value), left->y)).norm());
      local = std::max(local, (right->y - projection(ms.set_at(t, Side::Right), at->y)).norm());
    }
    worst = std::max(worst, local);
    ok += local <= 1e-12 ? 1 : 0;
  }
  return {ok == 20, ratio(ok, 20) + " within 1e-12, worst " + fmt("%.3e", worst)};
}

// 7. Polytope projection against the face-enumeration oracle.
Outcome projection_oracle() {
  std::mt19937_64 rng(4242);
  int ok = 0;
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const Eigen::Index d = gen::uniform_int(rng, 1, 3);
    const int m = gen::uniform_int(rng, 1, 4);
    const Vec p = oracle::random_vec(rng, d, 1.0);
    std::vector<Halfspace> hs;
    std::vector<oracle::Plane> planes;
    for (int k = 0; k < m; ++k) {
      const Vec n = oracle::random_unit(rng, d);
      const double c = n.dot(p) + gen::uniform(rng, 0.0, 1.0);
      hs.push_back({n, c});
      planes.push_back({n, c});
    }
    const ConvexSet poly = ConvexSet::polytope(hs);
    const Vec x = oracle::random_vec(rng, d, 3.0);
    const auto ref = oracle::face_enumeration_projection(planes, x);
    if (!ref) continue;
    const double gap = (projection(poly, x) - *ref).norm();
    worst = std::max(worst, gap);
    ok += gap <= 1e-8 ? 1 : 0;
  }
  return {ok == 500, ratio(ok, 500) + " within 1e-8, worst " + fmt("%.3e", worst)};
}

// 8. Arc-length round trip and Lipschitz certificate.
Outcome arc_length_round_trip() {
  std::mt19937_64 rng(808);
  int ok = 0;
  double worst = 0.0;
  double worst_lip = -1e300;
  for (int i = 0; i < 200; ++i) {
    const Eigen::Index d = gen::uniform_int(rng, 1, 3);
    const double a = gen::uniform(rng, -1.0, 1.0);
    const double b = a + gen::uniform(rng, 0.2, 3.0);
    const BVPath f = gen::random_path(rng, d, gen::uniform_int(rng, 0, 3), a, b);
    const auto arc = arc_length(f);
    const BVPath g = compose(arc.filled, arc.ell);
    double err = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const double t = a + (b - a) * k / 999.0;
      for (Side side : {Side::Left, Side::Value, Side::Right}) {
        err = std::max(err, (g.eval(t, side) - f.eval(t, side)).norm());
      }
    }
    const double lip_excess = lipschitz_constant(arc.filled) - arc.lip_bound;
    worst = std::max(worst, err);
    worst_lip = std::max(worst_lip, lip_excess);
    ok += err <= 1e-9 && lip_excess <= 1e-9 ? 1 : 0;
  }
  return {ok == 200, ratio(ok, 200) + ", worst round-trip error " + fmt("%.3e", worst) +
                         ", worst Lipschitz excess " + fmt("%.3e", worst_lip)};
}

// 9. Truncation bound with ten geometrically shrinking jumps.
Outcome truncation() {
  std::mt19937_64 rng(919);
  const SolverConfig cfg;
  int ok = 0;
  int total = 0;
  double worst_ratio = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Eigen::Index d = gen::uniform_int(rng, 1, 3);
    const bool tiny = i % 4 == 3;
    const ConvexSet Z = tiny ? ConvexSet::ball(Vec::Zero(d), 1e-4) : gen::random_primitive(rng, d);
    std::vector<Breakpoint> bps;
    Vec cur = Vec::Zero(d);
    bps.push_back({0.0, cur, cur, cur});
    const double q = gen::uniform(rng, 0.3, 0.6);
    for (int k = 0; k < 10; ++k) {
      const double t = (k + 1) / 11.0;
      const Vec left = cur + oracle::random_vec(rng, d, 0.1);
      const Vec value = left + std::pow(q, k) * oracle::random_unit(rng, d);
      bps.push_back({t, left, value, value});
      cur = value;
    }
    bps.push_back({1.0, cur, cur, cur});
    const MovingSet ms = MovingSet::translate(Z, BVPath(0.0, 1.0, bps));
    std::vector<JumpPrescription> presc;
    for (int k = 0; k < 10; ++k) {
      JumpPrescription p;
      p.t = (k + 1) / 11.0;
      const int kind = tiny ? 2 : gen::uniform_int(rng, 0, 1);
      if (kind == 0) {
        p.kind = JumpKind::Project;
      } else if (kind == 1) {
        p.kind = JumpKind::SegmentPlay;
        p.substeps = 64;
      } else {
        p.kind = JumpKind::FixedTarget;
        p.target = gen::random_member(rng, ms.set_at(p.t));
      }
      presc.push_back(p);
    }
    const Vec y0 = gen::random_member(rng, ms.set_at(0.0));
    const auto times = scenario_partition(ms, presc, cfg, 1);
    const Trajectory full = solve_prescribed_on(ms, presc, y0, times, cfg, 1);
    for (double eps : {1e-2, 1e-3}) {
      const auto tr = truncate_jump_set(presc, ms, eps, cfg.seed);
      const Trajectory cut = solve_prescribed_on(ms, tr.kept, y0, times, cfg, 1);
      const double dist = sup_matched(full, cut);
      ++total;
      const bool fine = dist <= tr.error_bound;
      ok += fine ? 1 : 0;
      if (tr.error_bound > 0) worst_ratio = std::max(worst_ratio, dist / tr.error_bound);
      else if (dist > 0) worst_ratio = INFINITY;
    }
  }
  return {ok == total, ratio(ok, total) + " within the returned bound, worst distance/bound " +
                           fmt("%.3f", worst_ratio)};
}

int run_tool(const std::string& args) {
  const std::string cmd = std::string(SWEEPTOOL_PATH) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

// 10. Every checker rejects its corrupted fixture.
Outcome negative_controls() {
  int ok = 0;
  int total = 0;
  std::vector<std::string> misses;
  auto expect_fail = [&](const std::string& name, bool passed) {
    ++total;
    if (!passed) ++ok;
    else misses.push_back(name);
  };

  const MovingSet drag = MovingSet::translate(ConvexSet::halfspace(vec({1}), 0.0),
                                              BVPath::piecewise_linear({0, 1}, {vec({0}), vec({1})}));
  const auto times = uniform_partition(0, 1, 32, {});
  const Trajectory a = catching_up(drag, vec({0}), times);
  const Trajectory b = catching_up(drag, vec({0.5}), times);
  expect_fail("feasibility", check_feasibility(corrupt_for_feasibility(a, drag), drag).passed);
  expect_fail("vi_residual", vi_residual(corrupt_for_vi(a, {}), drag, {}).passed);
  expect_fail("contraction", check_contraction(a, corrupt_for_contraction(a, b)).passed);
  const auto var = check_variation_bound(a, drag, {});
  const auto budget = variation_budget(a, drag, {});
  expect_fail("variation_bound",
              check_variation_bound(corrupt_for_variation(a, budget.bound, var.tolerance_used), drag, {}).passed);

  const PlayInput disk{BVPath(0.0, 1.0,
                              {{0.0, vec({0, 0}), vec({0, 0}), vec({0, 0})},
                               {0.4, vec({0.5, 1.2}), vec({-1.5, 0.2}), vec({-1.5, 0.2})},
                               {1.0, vec({0, -1}), vec({0, -1}), vec({0, -1})}}),
                       ConvexSet::ball(vec({0, 0}), 1.0), vec({0, 0})};
  SolverConfig cfg;
  cfg.max_refine = 4;
  cfg.tol_traj = 1e-3;
  for (const auto& rep : check_play_properties(disk, cfg, true)) expect_fail(rep.name, rep.passed);

  namespace fs = std::filesystem;
  const fs::path out = fs::temp_directory_path() / "sweep_acceptance_corrupt";
  fs::remove_all(out);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(SCENARIO_DIR)) {
    if (e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    const fs::path dir = out / f.stem();
    const int clean = run_tool("run " + f.string() + " --out " + (out / "clean").string());
    const int rc = run_tool("run " + f.string() + " --out " + dir.string() + " --corrupt");
    ++total;
    bool all_failed = clean == 0 && rc == 1;
    std::ifstream in(dir / "reports.jsonl");
    std::string line;
    int lines = 0;
    while (std::getline(in, line)) {
      ++lines;
      all_failed = all_failed && line.find("\"passed\":false") != std::string::npos;
    }
    all_failed = all_failed && lines > 0;
    if (all_failed) ++ok;
    else misses.push_back("cli:" + f.stem().string());
  }
  fs::remove_all(out);
  std::string detail = ratio(ok, total) + " corrupted fixtures rejected (library checkers and CLI --corrupt exit 1)";
  for (const auto& m : misses) detail += " missed:" + m;
  return {ok == total && total > 0, detail};
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria;
  SweepStats stats;
  bool have_stats = false;
  auto get_stats = [&]() -> const SweepStats& {
    if (!have_stats) {
      stats = sweep_stats();
      have_stats = true;
    }
    return stats;
  };
  criteria.emplace_back("scalar play closed form", scalar_play);
  criteria.emplace_back("exact discrete contraction", [&] {
    const auto& s = get_stats();
    return Outcome{s.contraction_ok == s.total,
                   ratio(s.contraction_ok, s.total) + " nonincreasing with zero tolerance, worst increase " +
                       fmt("%.3e", s.worst_contraction)};
  });
  criteria.emplace_back("variation bound", [&] {
    const auto& s = get_stats();
    return Outcome{s.variation_ok == s.total && s.moreau_ok == s.total,
                   ratio(s.variation_ok, s.total) + " with prescriptions, " + ratio(s.moreau_ok, s.total) +
                       " pure catching-up (largest pV(y) - pV(C) " + fmt("%.3e", s.worst_moreau_excess) + ")"};
  });
  criteria.emplace_back("rate independence", rate_independence);
  criteria.emplace_back("segment-play vs extended-play equivalence", pipeline_equivalence);
  criteria.emplace_back("double-projection jump law", double_projection);
  criteria.emplace_back("polytope projection oracle", projection_oracle);
  criteria.emplace_back("arc-length round trip", arc_length_round_trip);
  criteria.emplace_back("truncation error bound", truncation);
  criteria.emplace_back("negative controls", negative_controls);

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("error: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %2zu  %s: %s [%.1fs]\n", out.passed ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), out.detail.c_str(), secs);
    failures += out.passed ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
