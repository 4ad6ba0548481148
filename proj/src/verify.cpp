#include "sweep/verify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sweep/errors.hpp"

namespace sweep {

namespace {

CheckReport finish(CheckReport rep) {
  rep.passed = rep.worst_violation <= rep.tolerance_used;
  return rep;
}

bool near_any(const std::vector<double>& times, double t, double tol) {
  return std::any_of(times.begin(), times.end(),
                     [&](double x) { return std::abs(x - t) <= tol; });
}

bool is_jump_map_row(const TrajectoryRow& row, const std::vector<double>& exclude, double tol) {
  return row.side != Side::Left && near_any(exclude, row.t, tol);
}

Vec unit_or_first_axis(const Vec& v) {
  const double n = v.norm();
  if (n > 0.0) return v / n;
  Vec e = Vec::Zero(v.size());
  e(0) = 1.0;
  return e;
}

std::size_t middle_row(const Trajectory& traj) {
  if (traj.rows.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "corruption needs at least two rows");
  }
  return std::max<std::size_t>(1, traj.rows.size() / 2);
}

}  // namespace

void recompute_steps(Trajectory& traj) {
  traj.variation_total = 0.0;
  for (std::size_t k = 0; k < traj.rows.size(); ++k) {
    traj.rows[k].step = k == 0 ? 0.0 : (traj.rows[k].y - traj.rows[k - 1].y).norm();
    traj.variation_total += traj.rows[k].step;
  }
}

CheckReport check_feasibility(const Trajectory& traj, const MovingSet& ms,
                              const ProjectionConfig& cfg) {
  CheckReport rep;
  rep.name = "feasibility";
  rep.tolerance_used = cfg.tol_feas;
  for (const auto& row : traj.rows) {
    const double d = distance(ms.set_at(row.t, row.side), row.y, cfg);
    if (d > rep.worst_violation) {
      rep.worst_violation = d;
      rep.location = row.t;
    }
  }
  return finish(rep);
}

CheckReport vi_residual(const Trajectory& traj, const MovingSet& ms,
                        const std::vector<double>& exclude, const ProjectionConfig& cfg,
                        double tol_vi) {
  const double tol = ms.time_tol();
  const auto times = traj.times();
  for (double b : ms.breakpoints()) {
    if (!near_any(times, b, tol)) {
      throw Error(ErrorCode::MismatchedScenario,
                  "vi_residual: trajectory has no node at breakpoint t=" + std::to_string(b));
    }
  }
  CheckReport rep;
  rep.name = "vi_residual";
  double total = 0.0;
  double largest = 0.0;
  std::size_t checked = 0;
  for (std::size_t k = 1; k < traj.rows.size(); ++k) {
    const auto& row = traj.rows[k];
    if (is_jump_map_row(row, exclude, tol)) continue;
    const Vec& prev = traj.rows[k - 1].y;
    const Vec disp = row.y - prev;
    ++checked;
    if (disp.squaredNorm() == 0.0) continue;
    const Vec z = projection(ms.set_at(row.t, row.side), prev, cfg);
    const double term = std::max(0.0, (row.y - z).dot(disp));
    total += term;
    if (term > largest) {
      largest = term;
      rep.location = row.t;
    }
  }
  rep.worst_violation = total;
  rep.tolerance_used = static_cast<double>(checked) * tol_vi;
  rep.notes = "steps checked: " + std::to_string(checked);
  return finish(rep);
}

CheckReport check_contraction(const Trajectory& a, const Trajectory& b) {
  if (a.rows.size() != b.rows.size()) {
    throw Error(ErrorCode::MismatchedScenario, "contraction: trajectories differ in length");
  }
  CheckReport rep;
  rep.name = "contraction";
  rep.tolerance_used = 0.0;
  double prev = 0.0;
  for (std::size_t k = 0; k < a.rows.size(); ++k) {
    if (a.rows[k].t != b.rows[k].t || a.rows[k].side != b.rows[k].side) {
      throw Error(ErrorCode::MismatchedScenario, "contraction: partitions differ");
    }
    const double d = (a.rows[k].y - b.rows[k].y).norm();
    if (k > 0 && d - prev > rep.worst_violation) {
      rep.worst_violation = d - prev;
      rep.location = a.rows[k].t;
    }
    prev = d;
  }
  rep.notes = "final distance " + std::to_string(prev);
  return finish(rep);
}

VariationBudget variation_budget(const Trajectory& traj, const MovingSet& ms,
                                 const std::vector<JumpPrescription>& prescriptions,
                                 std::uint64_t seed) {
  VariationBudget out;
  const auto var = ms.variation(ms.a(), ms.b(), seed);
  out.approximate = var.approximate;
  out.bound = var.value;
  for (const auto& p : prescriptions) {
    const Side from = p.side == Side::Right ? Side::Value : Side::Left;
    const Side to = p.side == Side::Right ? Side::Right : Side::Value;
    const auto h = hausdorff(ms.set_at(p.t, from), ms.set_at(p.t, to), seed);
    out.approximate = out.approximate || h.approximate;
    out.bound += jump_score(p, ms, seed) - h.value;
  }
  double h_max = 0.0;
  const auto times = traj.times();
  for (std::size_t k = 1; k < times.size(); ++k) h_max = std::max(h_max, times[k] - times[k - 1]);
  out.tolerance = 1e-8 + 2.0 * h_max * var.value / (ms.b() - ms.a());
  return out;
}

CheckReport check_variation_bound(const Trajectory& traj, const MovingSet& ms,
                                  const std::vector<JumpPrescription>& prescriptions,
                                  std::uint64_t seed) {
  CheckReport rep;
  rep.name = "variation_bound";
  VariationBudget budget;
  try {
    budget = variation_budget(traj, ms, prescriptions, seed);
  } catch (const Error& err) {
    if (err.code() != ErrorCode::Unbounded && err.code() != ErrorCode::UnsupportedPair) throw;
    rep.skipped = true;
    rep.notes = std::string("skipped: ") + err.what();
    return rep;
  }
  rep.tolerance_used = budget.tolerance;
  rep.worst_violation = std::max(0.0, traj.variation_total - budget.bound);
  rep.location = ms.b();
  rep.notes = "variation_y=" + std::to_string(traj.variation_total) +
              " bound=" + std::to_string(budget.bound);
  if (budget.approximate) rep.notes += " (approximate Hausdorff)";
  return finish(rep);
}

SolverConfig equivalence_config(const SolverConfig& cfg) {
  SolverConfig out = cfg;
  if (out.segment_substeps <= 0) out.segment_substeps = cfg.segment_initial_substeps;
  return out;
}

std::vector<CheckReport> check_play_properties(const PlayInput& input, const SolverConfig& cfg,
                                               bool corrupt) {
  std::vector<CheckReport> out;
  const char* names[] = {"identity", "quadratic", "flat"};
  const auto psis = canned_reparametrizations(input.u.a(), input.u.b());
  for (std::size_t i = 0; i < psis.size(); ++i) {
    auto run = rate_independence_run(input, psis[i], cfg);
    if (corrupt) {
      run.reparam.rows[middle_row(run.reparam)].y(0) += 1.0;
      recompute_steps(run.reparam);
    }
    const auto ri = compare_rate_independence(run);
    CheckReport rep;
    rep.name = std::string("rate_independence:") + names[i];
    rep.worst_violation = ri.discrepancy;
    rep.location = ri.worst_time;
    rep.tolerance_used = 0.0;
    rep.notes = "matched rows: " + std::to_string(ri.matched_rows);
    out.push_back(finish(rep));
  }

  const SolverConfig eq = equivalence_config(cfg);
  const Trajectory seg = play_segment_jumps(input, eq);
  const Trajectory bar_clean = play_bar(input, eq);
  Trajectory bar = bar_clean;
  if (corrupt) {
    bar.rows[middle_row(bar)].y(0) += 1.0;
    recompute_steps(bar);
  }
  {
    const bool seg_coarser = seg.rows.size() <= bar.rows.size();
    const Trajectory& coarse = seg_coarser ? seg : bar;
    const Trajectory& fine = seg_coarser ? bar : seg;
    CheckReport rep;
    rep.name = "pipeline_equivalence";
    std::size_t j = 0;
    std::size_t matched = 0;
    for (const auto& r : coarse.rows) {
      while (j < fine.rows.size() && fine.rows[j].t < r.t) ++j;
      std::size_t m = j;
      while (m < fine.rows.size() && fine.rows[m].t == r.t && fine.rows[m].side != r.side) ++m;
      if (m >= fine.rows.size() || fine.rows[m].t != r.t) continue;
      ++matched;
      const double d = (fine.rows[m].y - r.y).norm();
      if (d > rep.worst_violation) {
        rep.worst_violation = d;
        rep.location = r.t;
      }
    }
    rep.tolerance_used = 2.0 * (cfg.tol_traj + cfg.segment_tol);
    rep.notes = "matched rows: " + std::to_string(matched) +
                ", segment levels: " + std::to_string(seg.refinement.levels) +
                ", extended-play levels: " + std::to_string(bar.refinement.levels);
    if (!seg.refinement.converged || !bar.refinement.converged) {
      rep.notes += " (refinement did not converge)";
    }
    out.push_back(finish(rep));
  }
  {
    CheckReport rep;
    rep.name = "pbar_variation_bound";
    const double bound = input.u.total_variation();
    rep.tolerance_used = 1e-9;
    const Trajectory pbar =
        corrupt ? corrupt_for_variation(bar_clean, bound, rep.tolerance_used) : bar_clean;
    rep.worst_violation = std::max(0.0, pbar.variation_total - bound);
    rep.location = input.u.b();
    rep.notes = "variation_pbar=" + std::to_string(pbar.variation_total) +
                " variation_u=" + std::to_string(bound);
    out.push_back(finish(rep));
  }
  return out;
}

Trajectory corrupt_for_feasibility(const Trajectory& traj, const MovingSet& ms,
                                   const ProjectionConfig& cfg) {
  Trajectory out = traj;
  auto& row = out.rows[middle_row(out)];
  const ConvexSet set = ms.set_at(row.t, row.side);
  const Eigen::Index d = row.y.size();
  for (double scale = 1.0; scale < 1e12; scale *= 2.0) {
    for (Eigen::Index i = 0; i < d; ++i) {
      for (double sign : {1.0, -1.0}) {
        Vec cand = row.y;
        cand(i) += sign * scale;
        if (distance(set, cand, cfg) > 0.1 + cfg.tol_feas) {
          row.y = cand;
          recompute_steps(out);
          return out;
        }
      }
    }
  }
  throw Error(ErrorCode::InvalidArgument, "corruption: could not leave the set");
}

Trajectory corrupt_for_vi(const Trajectory& traj, const std::vector<double>& exclude) {
  Trajectory out = traj;
  const double tol = out.rows.empty() ? 0.0 : 1e-12 * (out.rows.back().t - out.rows.front().t);
  const std::size_t mid = middle_row(out);
  std::size_t pick = 0;
  for (std::size_t off = 0; off < out.rows.size() && pick == 0; ++off) {
    for (std::size_t k : {mid + off, mid - std::min(mid, off)}) {
      if (k >= 1 && k < out.rows.size() && !is_jump_map_row(out.rows[k], exclude, tol)) {
        pick = k;
        break;
      }
    }
  }
  if (pick == 0) throw Error(ErrorCode::InvalidArgument, "corruption: no checkable step");
  auto& row = out.rows[pick];
  row.y += 0.1 * unit_or_first_axis(row.y - out.rows[pick - 1].y);
  recompute_steps(out);
  return out;
}

Trajectory corrupt_for_contraction(const Trajectory& a, const Trajectory& b) {
  Trajectory out = b;
  const std::size_t j = middle_row(out);
  const double before = (a.rows[j - 1].y - b.rows[j - 1].y).norm();
  out.rows[j].y = a.rows[j].y + (before + 0.1) * unit_or_first_axis(b.rows[j].y - a.rows[j].y);
  recompute_steps(out);
  return out;
}

Trajectory corrupt_for_variation(const Trajectory& traj, double bound, double tol) {
  Trajectory out = traj;
  const std::size_t k = middle_row(out);
  const double local =
      out.rows[k].step + (k + 1 < out.rows.size() ? out.rows[k + 1].step : 0.0);
  const double excess = std::max(0.0, bound + tol - out.variation_total);
  Vec e = Vec::Zero(out.rows[k].y.size());
  e(0) = 1.0;
  out.rows[k].y += (0.5 * excess + 2.0 * local + 1.0) * e;
  recompute_steps(out);
  return out;
}

}  // namespace sweep
