#include "sweep/solver.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>

#include "sweep/errors.hpp"
#include "sweep/play.hpp"

namespace sweep {

const char* to_string(JumpKind kind) {
  switch (kind) {
    case JumpKind::Project: return "project";
    case JumpKind::DoubleProject: return "double_project";
    case JumpKind::SegmentPlay: return "segment_play";
    case JumpKind::FixedTarget: return "fixed_target";
  }
  return "project";
}

namespace {

int side_rank(Side s) {
  switch (s) {
    case Side::Left: return 0;
    case Side::Value: return 1;
    case Side::Right: return 2;
  }
  return 1;
}

bool row_before(double t1, Side s1, double t2, Side s2) {
  return t1 < t2 || (t1 == t2 && side_rank(s1) < side_rank(s2));
}

struct NodePrescriptions {
  const JumpPrescription* at = nullptr;
  const JumpPrescription* right = nullptr;
};

// Validated prescriptions keyed by their (snapped) time.
std::map<double, NodePrescriptions> index_prescriptions(
    const MovingSet& ms, std::vector<JumpPrescription>& prescriptions, bool allow_right,
    const SolverConfig& cfg) {
  const double tol = ms.time_tol();
  const auto bps = ms.breakpoints();
  std::map<double, NodePrescriptions> out;
  for (std::size_t i = 0; i < prescriptions.size(); ++i) {
    auto& p = prescriptions[i];
    const std::string where = "prescriptions[" + std::to_string(i) + "]";
    if (!std::isfinite(p.t)) throw Error(ErrorCode::InvalidArgument, where + ".t: must be finite");
    for (double b : bps) {
      if (std::abs(p.t - b) <= tol) p.t = b;
    }
    if (p.side == Side::Left) {
      throw Error(ErrorCode::InvalidArgument, where + ".side: must be \"value\" or \"right\"");
    }
    if (p.side == Side::Right && !allow_right) {
      throw Error(ErrorCode::InvalidArgument,
                  where + ".side: right-side maps need a non-right-continuous solve");
    }
    const bool in_range = p.side == Side::Right ? (p.t >= ms.a() && p.t <= ms.b())
                                                : (p.t > ms.a() + tol && p.t <= ms.b());
    if (!in_range) {
      throw Error(ErrorCode::InvalidArgument, where + ".t: outside (a, b]");
    }
    if (p.kind == JumpKind::FixedTarget) {
      require_vector(p.target, ms.dim(), where + ".target");
      const ConvexSet dest = ms.set_at(p.t, p.side);
      if (!contains(dest, p.target, cfg.proj.tol_feas, cfg.proj)) {
        throw Error(ErrorCode::PrescriptionInfeasible,
                    where + ".target: outside C(t) at t=" + std::to_string(p.t));
      }
    }
    if (p.kind == JumpKind::SegmentPlay) {
      if (!ms.is_translate()) {
        throw Error(ErrorCode::InvalidArgument,
                    where + ".kind: segment_play needs a translate-mode moving set");
      }
      if (p.substeps < 0) throw Error(ErrorCode::InvalidArgument, where + ".substeps: negative");
    }
    auto& slot = out[p.t];
    const JumpPrescription*& ref = p.side == Side::Right ? slot.right : slot.at;
    if (ref != nullptr) {
      throw Error(ErrorCode::InvalidArgument, where + ".t: more than one prescription at this time");
    }
    ref = &p;
  }
  return out;
}

class Sweeper {
 public:
  Sweeper(const MovingSet& ms, const SolverConfig& cfg, int level)
      : ms_(ms), cfg_(cfg), level_(level) {}

  Trajectory run(const Vec& y_a, const std::vector<double>& times,
                 const std::map<double, NodePrescriptions>& presc) {
    check_partition(times, presc);
    const double tol = ms_.time_tol();
    const auto bps = ms_.breakpoints();
    auto is_anchor = [&](double t) {
      if (presc.count(t) != 0) return true;
      const auto it = std::lower_bound(bps.begin(), bps.end(), t - tol);
      return it != bps.end() && std::abs(*it - t) <= tol;
    };

    y_ = y_a;
    cur_ = ms_.set_at(times.front(), Side::Value);
    emit(times.front(), Side::Value);
    {
      const auto it = presc.find(times.front());
      const JumpPrescription* pr = it == presc.end() ? nullptr : it->second.right;
      ConvexSet right = ms_.set_at(times.front(), Side::Right);
      if (pr != nullptr || !(right == cur_)) {
        apply(pr, times.front(), Side::Value, Side::Right, right);
        emit(times.front(), Side::Right);
      }
    }
    for (std::size_t k = 1; k < times.size(); ++k) {
      const double t = times[k];
      if (!is_anchor(t)) {
        project_onto(ms_.set_at(t, Side::Value));
        emit(t, Side::Value);
        continue;
      }
      const auto it = presc.find(t);
      const JumpPrescription* pl = it == presc.end() ? nullptr : it->second.at;
      const JumpPrescription* pr = it == presc.end() ? nullptr : it->second.right;
      ConvexSet left = ms_.set_at(t, Side::Left);
      ConvexSet at = ms_.set_at(t, Side::Value);
      ConvexSet right = ms_.set_at(t, Side::Right);
      project_onto(left);
      if (pl != nullptr || !(left == at)) {
        emit(t, Side::Left);
        apply(pl, t, Side::Left, Side::Value, at);
      }
      emit(t, Side::Value);
      if (pr != nullptr || !(right == at)) {
        apply(pr, t, Side::Value, Side::Right, right);
        emit(t, Side::Right);
      }
    }
    traj_.refinement.steps_final = static_cast<int>(times.size()) - 1;
    return std::move(traj_);
  }

 private:
  void check_partition(const std::vector<double>& times,
                       const std::map<double, NodePrescriptions>& presc) const {
    const double tol = ms_.time_tol();
    if (times.size() < 2) throw Error(ErrorCode::InvalidArgument, "partition: needs two nodes");
    if (std::abs(times.front() - ms_.a()) > tol || std::abs(times.back() - ms_.b()) > tol) {
      throw Error(ErrorCode::InvalidArgument, "partition: must start at a and end at b");
    }
    for (std::size_t k = 1; k < times.size(); ++k) {
      if (!(times[k] > times[k - 1])) {
        throw Error(ErrorCode::InvalidArgument, "partition: times must increase strictly");
      }
    }
    auto has = [&](double t) {
      const auto it = std::lower_bound(times.begin(), times.end(), t - tol);
      return it != times.end() && std::abs(*it - t) <= tol;
    };
    for (double b : ms_.breakpoints()) {
      if (!has(b)) {
        throw Error(ErrorCode::InvalidArgument,
                    "partition: missing breakpoint t=" + std::to_string(b) + " of the moving set");
      }
    }
    for (const auto& [t, p] : presc) {
      if (!std::binary_search(times.begin(), times.end(), t)) {
        throw Error(ErrorCode::InvalidArgument,
                    "partition: missing prescription time t=" + std::to_string(t));
      }
    }
  }

  void project_onto(const ConvexSet& set) {
    if (set == cur_) return;
    y_ = projection(set, y_, cfg_.proj);
    cur_ = set;
  }

  void apply(const JumpPrescription* p, double t, Side from, Side to, const ConvexSet& dest) {
    if (p == nullptr || p->kind == JumpKind::Project || p->kind == JumpKind::DoubleProject) {
      project_onto(dest);
      return;
    }
    if (p->kind == JumpKind::FixedTarget) {
      y_ = p->target;
    } else {
      const Vec u_from = ms_.path().eval(t, from);
      const Vec u_to = ms_.path().eval(t, to);
      if (p->substeps > 0) {
        y_ = segment_play_jump(ms_.base(), u_from, u_to, y_, p->substeps, cfg_);
      } else if (cfg_.segment_substeps > 0) {
        const long n = std::min<long>(static_cast<long>(cfg_.segment_substeps) << level_,
                                      cfg_.segment_max_substeps);
        y_ = segment_play_jump(ms_.base(), u_from, u_to, y_, static_cast<int>(n), cfg_);
      } else {
        auto res = segment_play_adaptive(ms_.base(), u_from, u_to, y_, cfg_);
        if (!res.converged) ++traj_.segment_unconverged;
        y_ = std::move(res.value);
      }
    }
    cur_ = dest;
  }

  void emit(double t, Side side) {
    const double step = traj_.rows.empty() ? 0.0 : (y_ - traj_.rows.back().y).norm();
    traj_.rows.push_back(TrajectoryRow{t, side, y_, step});
    traj_.variation_total += step;
  }

  const MovingSet& ms_;
  const SolverConfig& cfg_;
  int level_;
  Vec y_;
  std::optional<ConvexSet> cur_;
  Trajectory traj_;
};

Vec start_value(const MovingSet& ms, const Vec& y0, const SolverConfig& cfg, bool strict) {
  require_vector(y0, ms.dim(), "y0");
  const ConvexSet start = ms.set_at(ms.a(), Side::Value);
  const Vec snapped = projection(start, y0, cfg.proj);
  if (strict) {
    const double dist = (snapped - y0).norm();
    if (dist > cfg.proj.tol_feas) {
      throw Error(ErrorCode::InfeasibleStart,
                  "y0: distance " + std::to_string(dist) + " to C(a) exceeds tol_feas");
    }
  }
  return snapped;
}

void check_config(const SolverConfig& cfg) {
  if (cfg.base_steps < 1) throw Error(ErrorCode::InvalidArgument, "config.base_steps: must be >= 1");
  if (cfg.max_refine < 0 || cfg.max_refine > 24) {
    throw Error(ErrorCode::InvalidArgument, "config.max_refine: must be in [0, 24]");
  }
  if (!(cfg.tol_traj > 0.0)) throw Error(ErrorCode::InvalidArgument, "config.tol_traj: must be > 0");
  if (!(cfg.jump_truncation_eps >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "config.jump_truncation_eps: must be >= 0");
  }
}

Trajectory solve_impl(const MovingSet& ms, std::vector<JumpPrescription> prescriptions,
                      const Vec& y0, const SolverConfig& cfg, bool general) {
  check_config(cfg);
  if (!general && !ms.right_continuous()) {
    throw Error(ErrorCode::InvalidArgument,
                "moving_set: not right-continuous; use the general BV solver");
  }
  // Validates and snaps prescription times before scoring.
  index_prescriptions(ms, prescriptions, general, cfg);
  double bound = 0.0;
  if (cfg.jump_truncation_eps > 0.0) {
    auto trunc = truncate_jump_set(prescriptions, ms, cfg.jump_truncation_eps, cfg.seed);
    prescriptions = std::move(trunc.kept);
    bound = trunc.error_bound;
  }
  const Vec start = start_value(ms, y0, cfg, !general);
  const auto kept = index_prescriptions(ms, prescriptions, general, cfg);
  Trajectory traj = refine_until_cauchy(
      [&](int level) {
        const auto times = scenario_partition(ms, prescriptions, cfg, level);
        return Sweeper(ms, cfg, level).run(start, times, kept);
      },
      cfg);
  traj.truncation_bound = bound;
  return traj;
}

}  // namespace

std::vector<double> Trajectory::times() const {
  std::vector<double> out;
  for (const auto& r : rows) {
    if (out.empty() || out.back() != r.t) out.push_back(r.t);
  }
  return out;
}

const TrajectoryRow* Trajectory::find(double t, Side side) const {
  auto it = std::lower_bound(rows.begin(), rows.end(), std::make_pair(t, side),
                             [](const TrajectoryRow& r, const std::pair<double, Side>& key) {
                               return row_before(r.t, r.side, key.first, key.second);
                             });
  if (it != rows.end() && it->t == t && it->side == side) return &*it;
  return nullptr;
}

Vec Trajectory::value_at(double t) const {
  if (rows.empty()) throw Error(ErrorCode::InvalidArgument, "value_at: empty trajectory");
  if (t < rows.front().t || t > rows.back().t) {
    throw Error(ErrorCode::OutOfDomain, "value_at: t outside the trajectory");
  }
  auto it = std::upper_bound(rows.begin(), rows.end(), t,
                             [](double x, const TrajectoryRow& r) { return x < r.t; });
  return std::prev(it)->y;
}

double sup_gap(const Trajectory& coarse, const Trajectory& fine) {
  double gap = 0.0;
  std::size_t j = 0;
  for (const auto& r : coarse.rows) {
    while (j < fine.rows.size() && row_before(fine.rows[j].t, fine.rows[j].side, r.t, r.side)) ++j;
    if (j < fine.rows.size() && fine.rows[j].t == r.t && fine.rows[j].side == r.side) {
      gap = std::max(gap, (fine.rows[j].y - r.y).norm());
    }
  }
  return gap;
}

Trajectory refine_until_cauchy(const std::function<Trajectory(int)>& solve,
                               const SolverConfig& cfg) {
  Trajectory current = solve(0);
  double gap = std::numeric_limits<double>::quiet_NaN();
  int level = 0;
  bool converged = false;
  while (level < cfg.max_refine) {
    Trajectory next = solve(level + 1);
    gap = sup_gap(current, next);
    current = std::move(next);
    ++level;
    if (gap <= cfg.tol_traj) {
      converged = true;
      break;
    }
  }
  current.refinement.levels = level;
  current.refinement.cauchy_gap = gap;
  current.refinement.converged = converged;
  current.refinement.steps_final = current.rows.empty() ? 0 : static_cast<int>(current.times().size()) - 1;
  return current;
}

std::vector<double> uniform_partition(double a, double b, long n, std::vector<double> anchors) {
  if (!(a < b) || n < 1) throw Error(ErrorCode::InvalidArgument, "partition: need a < b and n >= 1");
  const double tol = 1e-12 * (b - a);
  anchors.push_back(a);
  anchors.push_back(b);
  std::sort(anchors.begin(), anchors.end());
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n) + 1);
  for (long k = 0; k <= n; ++k) {
    grid.push_back(k == n ? b : a + ((b - a) * static_cast<double>(k)) / static_cast<double>(n));
  }
  std::vector<double> out;
  out.reserve(grid.size() + anchors.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < grid.size() || j < anchors.size()) {
    const bool take_anchor =
        j < anchors.size() && (i == grid.size() || anchors[j] <= grid[i] + tol);
    if (take_anchor) {
      const double t = anchors[j++];
      while (i < grid.size() && std::abs(grid[i] - t) <= tol) ++i;
      if (!out.empty() && std::abs(out.back() - t) <= tol) continue;
      out.push_back(t);
    } else {
      const double t = grid[i++];
      if (j < anchors.size() && std::abs(anchors[j] - t) <= tol) continue;
      if (!out.empty() && std::abs(out.back() - t) <= tol) continue;
      out.push_back(t);
    }
  }
  return out;
}

std::vector<double> scenario_partition(const MovingSet& ms,
                                       const std::vector<JumpPrescription>& prescriptions,
                                       const SolverConfig& cfg, int level) {
  std::vector<double> anchors = ms.breakpoints();
  for (const auto& p : prescriptions) anchors.push_back(p.t);
  const long n = static_cast<long>(cfg.base_steps) << level;
  return uniform_partition(ms.a(), ms.b(), n, std::move(anchors));
}

Trajectory catching_up(const MovingSet& ms, const Vec& y0, const std::vector<double>& times,
                       const SolverConfig& cfg) {
  const Vec start = start_value(ms, y0, cfg, true);
  return Sweeper(ms, cfg, 0).run(start, times, {});
}

Trajectory solve_prescribed(const MovingSet& ms, const std::vector<JumpPrescription>& prescriptions,
                            const Vec& y0, const SolverConfig& cfg) {
  return solve_impl(ms, prescriptions, y0, cfg, false);
}

Trajectory solve_general_bv(const MovingSet& ms, const std::vector<JumpPrescription>& prescriptions,
                            const Vec& y0, const SolverConfig& cfg) {
  return solve_impl(ms, prescriptions, y0, cfg, true);
}

Trajectory solve_prescribed_on(const MovingSet& ms,
                               const std::vector<JumpPrescription>& prescriptions, const Vec& y0,
                               const std::vector<double>& times, const SolverConfig& cfg,
                               int level) {
  if (!ms.right_continuous()) {
    throw Error(ErrorCode::InvalidArgument,
                "moving_set: not right-continuous; use the general BV solver");
  }
  auto copy = prescriptions;
  const auto presc = index_prescriptions(ms, copy, false, cfg);
  const Vec start = start_value(ms, y0, cfg, true);
  return Sweeper(ms, cfg, level).run(start, times, presc);
}

Trajectory solve_general_bv_on(const MovingSet& ms,
                               const std::vector<JumpPrescription>& prescriptions, const Vec& y0,
                               const std::vector<double>& times, const SolverConfig& cfg,
                               int level) {
  auto copy = prescriptions;
  const auto presc = index_prescriptions(ms, copy, true, cfg);
  const Vec start = start_value(ms, y0, cfg, false);
  return Sweeper(ms, cfg, level).run(start, times, presc);
}

double jump_score(const JumpPrescription& p, const MovingSet& ms, std::uint64_t seed) {
  const Side from = p.side == Side::Right ? Side::Value : Side::Left;
  const Side to = p.side == Side::Right ? Side::Right : Side::Value;
  const ConvexSet src = ms.set_at(p.t, from);
  switch (p.kind) {
    case JumpKind::Project:
    case JumpKind::SegmentPlay:
      return hausdorff(src, ms.set_at(p.t, to), seed).upper_bound;
    case JumpKind::DoubleProject:
      return hausdorff(ms.set_at(p.t, Side::Left), ms.set_at(p.t, Side::Value), seed).upper_bound +
             hausdorff(ms.set_at(p.t, Side::Value), ms.set_at(p.t, Side::Right), seed).upper_bound;
    case JumpKind::FixedTarget:
      return farthest_distance(src, p.target);
  }
  return 0.0;
}

TruncationResult truncate_jump_set(const std::vector<JumpPrescription>& prescriptions,
                                   const MovingSet& ms, double eps, std::uint64_t seed) {
  if (!(eps >= 0.0)) throw Error(ErrorCode::InvalidArgument, "jump_truncation_eps: must be >= 0");
  TruncationResult res;
  if (eps == 0.0) {
    res.kept = prescriptions;
    return res;
  }
  std::vector<std::pair<double, std::size_t>> scored;
  for (std::size_t i = 0; i < prescriptions.size(); ++i) {
    scored.emplace_back(jump_score(prescriptions[i], ms, seed), i);
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& x, const auto& y) { return x.first > y.first; });
  std::vector<bool> keep(prescriptions.size(), true);
  for (const auto& [score, i] : scored) {
    if (score >= eps) continue;
    const auto& p = prescriptions[i];
    const Side from = p.side == Side::Right ? Side::Value : Side::Left;
    const Side to = p.side == Side::Right ? Side::Right : Side::Value;
    res.error_bound +=
        score + hausdorff(ms.set_at(p.t, from), ms.set_at(p.t, to), seed).upper_bound;
    res.dropped.push_back(p);
    keep[i] = false;
  }
  for (std::size_t i = 0; i < prescriptions.size(); ++i) {
    if (keep[i]) res.kept.push_back(prescriptions[i]);
  }
  return res;
}

}  // namespace sweep
