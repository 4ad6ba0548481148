#include "scenario.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>
#include <set>

#include "sweep/errors.hpp"
#include "sweep/verify.hpp"

namespace sweep {

namespace {

using io::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::Parse, where + ": " + what);
}

const std::set<std::string>& known_checks() {
  static const std::set<std::string> names = {"feasibility", "vi_residual", "contraction",
                                              "variation_bound", "play_properties"};
  return names;
}

Vec perturbation(Eigen::Index d, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> gauss;
  Vec v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = gauss(rng);
  return v;
}

std::vector<JumpPrescription> segment_prescriptions(const BVPath& u) {
  std::vector<JumpPrescription> out;
  for (double t : u.jump_times()) {
    JumpPrescription p;
    p.t = t;
    p.kind = JumpKind::SegmentPlay;
    out.push_back(p);
  }
  return out;
}

const char* mode_name(PlayMode m) {
  switch (m) {
    case PlayMode::P: return "P";
    case PlayMode::Pbar: return "Pbar";
    case PlayMode::SegmentJumpEquiv: return "segment_jump_equiv";
  }
  return "P";
}

}  // namespace

int exit_code_for(ErrorCode code) {
  return code == ErrorCode::Parse || code == ErrorCode::InvalidArgument ? 2 : 3;
}

Scenario parse_scenario(const json& j, std::string name) {
  if (!j.is_object()) fail("scenario", "expected a JSON object");
  Scenario sc;
  sc.name = std::move(name);
  if (!j.contains("schema_version")) fail("schema_version", "missing");
  if (!j["schema_version"].is_number_integer() || j["schema_version"].get<long long>() != 1) {
    fail("schema_version", "must be 1");
  }
  sc.is_play = j.contains("play");
  const std::set<std::string> sweep_keys = {"schema_version", "description", "moving_set", "y0",
                                            "y0_alt", "prescriptions", "config", "checks"};
  const std::set<std::string> play_keys = {"schema_version", "description", "play",
                                           "mode", "config", "checks"};
  const auto& allowed = sc.is_play ? play_keys : sweep_keys;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (allowed.count(it.key()) == 0) fail(it.key(), "unknown key for this scenario kind");
  }

  if (j.contains("config")) sc.config = io::parse_config(j["config"], "config");

  if (sc.is_play) {
    const auto& pj = j["play"];
    if (!pj.is_object()) fail("play", "expected an object");
    for (const char* key : {"u", "Z", "z0"}) {
      if (!pj.contains(key)) fail(std::string("play.") + key, "missing");
    }
    BVPath u = io::parse_path(pj["u"], "play.u");
    ConvexSet Z = io::parse_set(pj["Z"], "play.Z");
    Vec z0 = io::parse_vector(pj["z0"], "play.z0");
    if (z0.size() != Z.dim()) fail("play.z0", "dimension differs from Z");
    if (u.dim() != Z.dim()) fail("play.u", "dimension differs from Z");
    if (!u.right_continuous()) fail("play.u.right_continuous", "play inputs must be right-continuous");
    if (pj.contains("z0_alt")) {
      sc.play.z0_alt = io::parse_vector(pj["z0_alt"], "play.z0_alt");
      if (sc.play.z0_alt->size() != Z.dim()) fail("play.z0_alt", "dimension differs from Z");
    }
    sc.play.input = PlayInput{std::move(u), std::move(Z), std::move(z0)};
    if (j.contains("mode")) {
      if (!j["mode"].is_string()) fail("mode", "expected a string");
      const auto m = j["mode"].get<std::string>();
      if (m == "P") {
        sc.play.mode = PlayMode::P;
      } else if (m == "Pbar") {
        sc.play.mode = PlayMode::Pbar;
      } else if (m == "segment_jump_equiv") {
        sc.play.mode = PlayMode::SegmentJumpEquiv;
      } else {
        fail("mode", "unknown mode \"" + m + "\"");
      }
    }
  } else {
    if (!j.contains("moving_set")) fail("moving_set", "missing");
    if (!j.contains("y0")) fail("y0", "missing");
    sc.sweep.moving_set = io::parse_moving_set(j["moving_set"], "moving_set");
    sc.sweep.y0 = io::parse_vector(j["y0"], "y0");
    if (sc.sweep.y0.size() != sc.sweep.moving_set->dim()) fail("y0", "dimension differs from the moving set");
    if (j.contains("y0_alt")) {
      sc.sweep.y0_alt = io::parse_vector(j["y0_alt"], "y0_alt");
      if (sc.sweep.y0_alt->size() != sc.sweep.moving_set->dim()) {
        fail("y0_alt", "dimension differs from the moving set");
      }
    }
    if (j.contains("prescriptions")) {
      sc.sweep.prescriptions = io::parse_prescriptions(j["prescriptions"], "prescriptions");
      for (std::size_t i = 0; i < sc.sweep.prescriptions.size(); ++i) {
        const auto& p = sc.sweep.prescriptions[i];
        if (p.kind == JumpKind::FixedTarget && p.target.size() != sc.sweep.moving_set->dim()) {
          fail("prescriptions[" + std::to_string(i) + "].target",
               "dimension differs from the moving set");
        }
      }
    }
  }

  if (j.contains("checks")) {
    const auto& cj = j["checks"];
    if (!cj.is_array()) fail("checks", "expected an array of check names");
    for (std::size_t i = 0; i < cj.size(); ++i) {
      const std::string w = "checks[" + std::to_string(i) + "]";
      if (!cj[i].is_string()) fail(w, "expected a string");
      const auto c = cj[i].get<std::string>();
      if (known_checks().count(c) == 0) fail(w, "unknown check \"" + c + "\"");
      if (c == "play_properties" && !sc.is_play) fail(w, "play_properties needs a play scenario");
      sc.checks.push_back(c);
    }
  }
  return sc;
}

RunOutput run_scenario(const Scenario& sc, const RunOptions& opts) {
  const auto started = std::chrono::steady_clock::now();
  SolverConfig cfg = sc.config;
  if (opts.seed) cfg.seed = *opts.seed;

  std::optional<MovingSet> ms_holder;
  Trajectory traj;
  std::vector<JumpPrescription> applied;
  std::vector<double> exclude;
  std::function<Trajectory()> second_run;
  json summary;
  summary["scenario"] = sc.name;

  if (!sc.is_play) {
    const MovingSet& ms = *sc.sweep.moving_set;
    ms_holder = ms;
    const bool general =
        !ms.right_continuous() ||
        std::any_of(sc.sweep.prescriptions.begin(), sc.sweep.prescriptions.end(),
                    [](const JumpPrescription& p) { return p.side == Side::Right; });
    traj = general ? solve_general_bv(ms, sc.sweep.prescriptions, sc.sweep.y0, cfg)
                   : solve_prescribed(ms, sc.sweep.prescriptions, sc.sweep.y0, cfg);
    applied = sc.sweep.prescriptions;
    if (cfg.jump_truncation_eps > 0.0) {
      applied = truncate_jump_set(applied, ms, cfg.jump_truncation_eps, cfg.seed).kept;
    }
    for (const auto& p : applied) exclude.push_back(p.t);
    summary["kind"] = "sweep";
    summary["solver"] = general ? "general_bv" : "prescribed";
    second_run = [&, general] {
      Vec alt;
      if (sc.sweep.y0_alt) {
        alt = *sc.sweep.y0_alt;
      } else {
        alt = sc.sweep.y0 + perturbation(ms.dim(), cfg.seed);
        if (!general) alt = projection(ms.set_at(ms.a(), Side::Value), alt, cfg.proj);
      }
      const auto times = traj.times();
      const int level = traj.refinement.levels;
      return general ? solve_general_bv_on(ms, applied, alt, times, cfg, level)
                     : solve_prescribed_on(ms, applied, alt, times, cfg, level);
    };
  } else {
    const PlayInput& input = *sc.play.input;
    ms_holder = MovingSet::translate(input.Z, input.u);
    summary["kind"] = "play";
    summary["mode"] = mode_name(sc.play.mode);
    auto alt_input = [&] {
      PlayInput other = input;
      if (sc.play.z0_alt) {
        other.z0 = *sc.play.z0_alt;
      } else {
        other.z0 = projection(input.Z, input.z0 + perturbation(input.Z.dim(), cfg.seed), cfg.proj);
      }
      return other;
    };
    switch (sc.play.mode) {
      case PlayMode::P:
        traj = play(input, cfg);
        second_run = [&] { return play_on(alt_input(), traj.times(), cfg); };
        break;
      case PlayMode::Pbar:
        traj = play_bar(input, cfg);
        applied = segment_prescriptions(input.u);
        second_run = [&] {
          return play_bar_level(alt_input(), cfg, traj.refinement.levels).trajectory;
        };
        break;
      case PlayMode::SegmentJumpEquiv: {
        const SolverConfig eq = equivalence_config(cfg);
        traj = play_segment_jumps(input, eq);
        applied = segment_prescriptions(input.u);
        second_run = [&, eq] {
          const PlayInput other = alt_input();
          const Vec y0 = other.u.eval(other.u.a(), Side::Value) - other.z0;
          return solve_prescribed_on(*ms_holder, applied, y0, traj.times(), eq,
                                     traj.refinement.levels);
        };
        break;
      }
    }
    for (const auto& p : applied) exclude.push_back(p.t);
  }
  const MovingSet& ms = *ms_holder;

  std::vector<CheckReport> reports;
  for (const auto& name : sc.checks) {
    if (name == "feasibility") {
      reports.push_back(check_feasibility(
          opts.corrupt ? corrupt_for_feasibility(traj, ms, cfg.proj) : traj, ms, cfg.proj));
    } else if (name == "vi_residual") {
      reports.push_back(
          vi_residual(opts.corrupt ? corrupt_for_vi(traj, exclude) : traj, ms, exclude, cfg.proj));
    } else if (name == "contraction") {
      const Trajectory other = second_run();
      reports.push_back(check_contraction(
          traj, opts.corrupt ? corrupt_for_contraction(traj, other) : other));
    } else if (name == "variation_bound") {
      if (opts.corrupt) {
        try {
          const auto budget = variation_budget(traj, ms, applied, cfg.seed);
          reports.push_back(check_variation_bound(
              corrupt_for_variation(traj, budget.bound, budget.tolerance), ms, applied, cfg.seed));
        } catch (const Error& err) {
          if (err.code() != ErrorCode::Unbounded && err.code() != ErrorCode::UnsupportedPair) throw;
          reports.push_back(check_variation_bound(traj, ms, applied, cfg.seed));
        }
      } else {
        reports.push_back(check_variation_bound(traj, ms, applied, cfg.seed));
      }
    } else if (name == "play_properties") {
      for (auto& rep : check_play_properties(*sc.play.input, cfg, opts.corrupt)) {
        reports.push_back(std::move(rep));
      }
    }
  }

  RunOutput out;
  out.trajectory_csv = io::trajectory_csv(traj);
  json checks = json::array();
  for (const auto& rep : reports) {
    out.reports_jsonl += io::to_json(rep).dump() + "\n";
    out.all_passed = out.all_passed && rep.passed;
    checks.push_back({{"name", rep.name},
                      {"passed", rep.passed},
                      {"worst_violation", io::number_or_null(rep.worst_violation)}});
  }

  summary["d"] = ms.dim();
  summary["steps_final"] = traj.refinement.steps_final;
  summary["refine_levels"] = traj.refinement.levels;
  summary["cauchy_gap"] = io::number_or_null(traj.refinement.cauchy_gap);
  summary["converged"] = traj.refinement.converged;
  summary["variation_y"] = traj.variation_total;
  try {
    const auto var = ms.variation(ms.a(), ms.b(), cfg.seed);
    summary["variation_C"] = var.value;
    summary["variation_C_approximate"] = var.approximate;
  } catch (const Error& err) {
    if (err.code() != ErrorCode::UnsupportedPair) throw;
    summary["variation_C"] = nullptr;
    summary["variation_C_approximate"] = true;
  }
  summary["truncation_bound"] = traj.truncation_bound;
  summary["segment_unconverged"] = traj.segment_unconverged;
  summary["checks"] = checks;
  summary["all_passed"] = out.all_passed;
  if (opts.timing) {
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
    summary["wall_time_s"] = elapsed.count();
  }
  out.summary_json = summary.dump(2) + "\n";
  return out;
}

}  // namespace sweep
