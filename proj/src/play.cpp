#include "sweep/play.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "sweep/errors.hpp"

namespace sweep {

namespace {

Vec initial_state(const PlayInput& input, const SolverConfig& cfg) {
  require_vector(input.z0, input.Z.dim(), "play.z0");
  if (input.u.dim() != input.Z.dim()) {
    throw Error(ErrorCode::InvalidArgument, "play.u: dimension differs from Z");
  }
  if (!input.u.right_continuous()) {
    throw Error(ErrorCode::InvalidArgument, "play.u: input must be right-continuous");
  }
  const Vec z = projection(input.Z, input.z0, cfg.proj);
  if ((z - input.z0).norm() > cfg.proj.tol_feas) {
    throw Error(ErrorCode::InfeasibleStart, "play.z0: not in Z");
  }
  return input.u.eval(input.u.a(), Side::Value) - z;
}

MovingSet play_set(const PlayInput& input) { return MovingSet::translate(input.Z, input.u); }

// Node lookup in a sorted, deduplicated grid.
std::size_t nearest_node(const std::vector<double>& nodes, double x) {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), x);
  if (it == nodes.end()) return nodes.size() - 1;
  const auto i = static_cast<std::size_t>(it - nodes.begin());
  if (i > 0 && x - nodes[i - 1] < *it - x) return i - 1;
  return i;
}

void append_row(Trajectory& traj, double t, Side side, const Vec& y) {
  const double step = traj.rows.empty() ? 0.0 : (y - traj.rows.back().y).norm();
  traj.rows.push_back(TrajectoryRow{t, side, y, step});
  traj.variation_total += step;
}

int gap_substeps(const SolverConfig& cfg, int level) {
  const long base = cfg.segment_substeps > 0 ? cfg.segment_substeps : cfg.segment_initial_substeps;
  return static_cast<int>(std::min<long>(base << level, cfg.segment_max_substeps));
}

}  // namespace

Trajectory play(const PlayInput& input, const SolverConfig& cfg) {
  const Vec y0 = initial_state(input, cfg);
  return solve_prescribed(play_set(input), {}, y0, cfg);
}

Trajectory play_on(const PlayInput& input, const std::vector<double>& times,
                   const SolverConfig& cfg) {
  const Vec y0 = initial_state(input, cfg);
  return catching_up(play_set(input), y0, times, cfg);
}

Trajectory play_segment_jumps(const PlayInput& input, const SolverConfig& cfg) {
  const Vec y0 = initial_state(input, cfg);
  std::vector<JumpPrescription> presc;
  for (double t : input.u.jump_times()) {
    JumpPrescription p;
    p.t = t;
    p.kind = JumpKind::SegmentPlay;
    presc.push_back(p);
  }
  return solve_prescribed(play_set(input), presc, y0, cfg);
}

Vec segment_play_jump(const ConvexSet& Z, const Vec& u_minus, const Vec& u_plus,
                      const Vec& y_minus, int substeps, const SolverConfig& cfg) {
  if (substeps < 1) throw Error(ErrorCode::InvalidArgument, "segment_play: substeps must be >= 1");
  require_vector(u_minus, Z.dim(), "segment_play.u_minus");
  require_vector(u_plus, Z.dim(), "segment_play.u_plus");
  require_vector(y_minus, Z.dim(), "segment_play.y_minus");
  if (distance(Z, u_minus - y_minus, cfg.proj) > cfg.proj.tol_feas) {
    throw Error(ErrorCode::InfeasibleStart, "segment_play: u_minus - y_minus is not in Z");
  }
  if (u_minus == u_plus) return y_minus;
  const auto base = std::make_shared<const ConvexSet>(Z);
  const Vec delta = u_plus - u_minus;
  Vec y = y_minus;
  for (int k = 1; k <= substeps; ++k) {
    const Vec u = k == substeps ? u_plus
                                : Vec(u_minus + (static_cast<double>(k) / substeps) * delta);
    y = projection(ConvexSet::translate(base, u), y, cfg.proj);
  }
  return y;
}

SegmentResult segment_play_adaptive(const ConvexSet& Z, const Vec& u_minus, const Vec& u_plus,
                                    const Vec& y_minus, const SolverConfig& cfg) {
  SegmentResult res;
  int n = std::max(1, cfg.segment_initial_substeps);
  res.value = segment_play_jump(Z, u_minus, u_plus, y_minus, n, cfg);
  res.substeps = n;
  if (u_minus == u_plus) {
    res.converged = true;
    return res;
  }
  while (static_cast<long>(n) * 2 <= cfg.segment_max_substeps) {
    n *= 2;
    Vec next = segment_play_jump(Z, u_minus, u_plus, y_minus, n, cfg);
    res.change = (next - res.value).norm();
    res.value = std::move(next);
    res.substeps = n;
    if (res.change < cfg.segment_tol) {
      res.converged = true;
      break;
    }
  }
  return res;
}

namespace {

// Extended play at one refinement level.
class PlayBarSolver {
 public:
  PlayBarSolver(const PlayInput& input, const SolverConfig& cfg)
      : input_(input),
        cfg_(cfg),
        y0_(initial_state(input, cfg)),
        arc_(arc_length(input.u)),
        jumps_(input.u.jump_times()) {
    for (const auto& bp : input.u.breakpoints()) anchors_.push_back(bp.t);
  }

  PlayBarResult solve(int level) const {
    const BVPath& u = input_.u;
    const double a = u.a();
    const double b = u.b();
    const auto grid =
        uniform_partition(a, b, static_cast<long>(cfg_.base_steps) << level, anchors_);
    PlayBarResult out;
    if (arc_.total_variation == 0.0) {
      for (double t : grid) append_row(out.trajectory, t, Side::Value, y0_);
      out.trajectory.refinement.steps_final = static_cast<int>(grid.size()) - 1;
      out.arc.push_back(ArcSample{a, y0_});
      out.arc.push_back(ArcSample{b, y0_});
      return out;
    }

    std::vector<double> sigma;
    sigma.reserve(grid.size() * 2);
    for (double t : grid) sigma.push_back(arc_.ell.eval(t, Side::Value)[0]);
    for (const auto& bp : arc_.filled.breakpoints()) sigma.push_back(bp.t);
    const int m = gap_substeps(cfg_, level);
    for (double t : jumps_) {
      const double s0 = arc_.ell.eval(t, Side::Left)[0];
      const double s1 = arc_.ell.eval(t, Side::Value)[0];
      sigma.push_back(s0);
      for (int j = 1; j < m; ++j) sigma.push_back(s0 + (s1 - s0) * (static_cast<double>(j) / m));
    }
    std::sort(sigma.begin(), sigma.end());
    const double tol = u.time_tol();
    std::vector<double> nodes;
    nodes.reserve(sigma.size());
    for (double s : sigma) {
      if (nodes.empty() || s - nodes.back() > tol) nodes.push_back(s);
    }
    nodes.front() = a;
    nodes.back() = b;

    const MovingSet filled_set = MovingSet::translate(input_.Z, arc_.filled);
    const Trajectory inner = catching_up(filled_set, y0_, nodes, cfg_);
    out.arc.reserve(inner.rows.size());
    for (const auto& r : inner.rows) out.arc.push_back(ArcSample{r.t, r.y});

    auto y_at = [&](double s) -> const Vec& { return out.arc[nearest_node(nodes, s)].y; };
    for (double t : grid) {
      if (std::binary_search(jumps_.begin(), jumps_.end(), t)) {
        append_row(out.trajectory, t, Side::Left, y_at(arc_.ell.eval(t, Side::Left)[0]));
      }
      append_row(out.trajectory, t, Side::Value, y_at(arc_.ell.eval(t, Side::Value)[0]));
    }
    out.trajectory.refinement.steps_final = static_cast<int>(grid.size()) - 1;
    return out;
  }

 private:
  const PlayInput& input_;
  const SolverConfig& cfg_;
  Vec y0_;
  ArcLengthParam arc_;
  std::vector<double> jumps_;
  std::vector<double> anchors_;
};

}  // namespace

PlayBarResult play_bar_level(const PlayInput& input, const SolverConfig& cfg, int level) {
  return PlayBarSolver(input, cfg).solve(level);
}

PlayBarResult play_bar_detailed(const PlayInput& input, const SolverConfig& cfg) {
  const PlayBarSolver solver(input, cfg);
  std::vector<ArcSample> last_arc;
  PlayBarResult out;
  out.trajectory = refine_until_cauchy(
      [&](int level) {
        auto res = solver.solve(level);
        last_arc = std::move(res.arc);
        return std::move(res.trajectory);
      },
      cfg);
  out.arc = std::move(last_arc);
  return out;
}

Trajectory play_bar(const PlayInput& input, const SolverConfig& cfg) {
  return play_bar_detailed(input, cfg).trajectory;
}

double Reparametrization::operator()(double s) const {
  if (s <= times.front()) return values.front();
  if (s >= times.back()) return values.back();
  const auto it = std::upper_bound(times.begin(), times.end(), s);
  const auto j = static_cast<std::size_t>(it - times.begin()) - 1;
  if (values[j] == values[j + 1]) return values[j];
  const double lambda = (s - times[j]) / (times[j + 1] - times[j]);
  return values[j] + lambda * (values[j + 1] - values[j]);
}

void validate_reparametrization(const Reparametrization& psi, double a, double b) {
  const double tol = 1e-12 * (b - a);
  if (psi.times.size() < 2 || psi.times.size() != psi.values.size()) {
    throw Error(ErrorCode::InvalidReparam, "psi: need matching times and values, at least two");
  }
  for (std::size_t i = 0; i < psi.times.size(); ++i) {
    if (!std::isfinite(psi.times[i]) || !std::isfinite(psi.values[i])) {
      throw Error(ErrorCode::InvalidReparam, "psi: non-finite entry");
    }
    if (i > 0 && !(psi.times[i] > psi.times[i - 1])) {
      throw Error(ErrorCode::InvalidReparam, "psi.times: must increase strictly");
    }
    if (i > 0 && psi.values[i] < psi.values[i - 1]) {
      throw Error(ErrorCode::InvalidReparam, "psi.values: must be nondecreasing");
    }
  }
  if (std::abs(psi.times.front() - a) > tol || std::abs(psi.times.back() - b) > tol) {
    throw Error(ErrorCode::InvalidReparam, "psi.times: must span [a, b]");
  }
  if (std::abs(psi.values.front() - a) > tol || std::abs(psi.values.back() - b) > tol) {
    throw Error(ErrorCode::InvalidReparam, "psi: must map a to a and b to b");
  }
}

BVPath compose_reparametrized(const BVPath& u, const std::vector<double>& nodes,
                              const std::vector<double>& node_images) {
  std::vector<Breakpoint> bps;
  bps.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double tau = node_images[i];
    const bool flat_before = i > 0 && node_images[i - 1] == tau;
    const bool flat_after = i + 1 < nodes.size() && node_images[i + 1] == tau;
    Breakpoint bp;
    bp.t = nodes[i];
    bp.value = u.eval(tau, Side::Value);
    bp.left = flat_before ? bp.value : u.eval(tau, Side::Left);
    bp.right = flat_after ? bp.value : u.eval(tau, Side::Right);
    bps.push_back(std::move(bp));
  }
  bps.front().left = bps.front().value;
  bps.back().right = bps.back().value;
  return BVPath(nodes.front(), nodes.back(), std::move(bps), u.right_continuous());
}

RateIndependenceRun rate_independence_run(const PlayInput& input,
                                          const Reparametrization& psi_in,
                                          const SolverConfig& cfg) {
  const double a = input.u.a();
  const double b = input.u.b();
  validate_reparametrization(psi_in, a, b);
  Reparametrization psi = psi_in;
  psi.times.front() = a;
  psi.times.back() = b;
  psi.values.front() = a;
  psi.values.back() = b;

  std::vector<double> anchors = psi.values;
  for (const auto& bp : input.u.breakpoints()) anchors.push_back(bp.t);
  const std::vector<double> P = uniform_partition(a, b, cfg.base_steps, anchors);

  // psi-preimages of P; flat pieces contribute both of their endpoints.
  std::vector<double> nodes;
  std::vector<double> images;
  auto push = [&](double q, double tau) {
    if (!nodes.empty() && nodes.back() == q) return;
    if (!nodes.empty() && !(q > nodes.back())) {
      throw Error(ErrorCode::InvalidReparam, "psi: preimage nodes are not separable");
    }
    nodes.push_back(q);
    images.push_back(tau);
  };
  auto on_grid = [&](double v) {
    const std::size_t i = nearest_node(P, v);
    return P[i];
  };
  for (std::size_t j = 0; j + 1 < psi.times.size(); ++j) {
    const double s0 = psi.times[j];
    const double s1 = psi.times[j + 1];
    const double v0 = on_grid(psi.values[j]);
    const double v1 = on_grid(psi.values[j + 1]);
    if (v0 == v1) {
      push(s0, v0);
      push(s1, v1);
      continue;
    }
    auto lo = std::lower_bound(P.begin(), P.end(), v0);
    auto hi = std::upper_bound(P.begin(), P.end(), v1);
    for (auto it = lo; it != hi; ++it) {
      const double tau = *it;
      double q;
      if (tau == v0) {
        q = s0;
      } else if (tau == v1) {
        q = s1;
      } else {
        q = s0 + (tau - v0) * (s1 - s0) / (v1 - v0);
      }
      push(q, tau);
    }
  }

  const BVPath u_psi = compose_reparametrized(input.u, nodes, images);
  RateIndependenceRun run;
  run.direct = play_on(input, P, cfg);
  run.reparam = play_on(PlayInput{u_psi, input.Z, input.z0}, nodes, cfg);
  run.nodes = std::move(nodes);
  run.images = std::move(images);
  return run;
}

RateIndependenceReport compare_rate_independence(const RateIndependenceRun& run) {
  const auto& nodes = run.nodes;
  RateIndependenceReport rep;
  std::size_t k = 0;
  for (const auto& row : run.reparam.rows) {
    while (k + 1 < nodes.size() && nodes[k] < row.t) ++k;
    const TrajectoryRow* match = run.direct.find(run.images[k], row.side);
    if (match == nullptr) {
      throw Error(ErrorCode::MismatchedScenario,
                  "rate independence: no matching node for t=" + std::to_string(row.t));
    }
    ++rep.matched_rows;
    const double diff = (match->y - row.y).norm();
    if (diff > rep.discrepancy) {
      rep.discrepancy = diff;
      rep.worst_time = row.t;
    }
  }
  return rep;
}

RateIndependenceReport check_rate_independence(const PlayInput& input,
                                               const Reparametrization& psi,
                                               const SolverConfig& cfg) {
  return compare_rate_independence(rate_independence_run(input, psi, cfg));
}

std::vector<Reparametrization> canned_reparametrizations(double a, double b) {
  const double len = b - a;
  std::vector<Reparametrization> out;
  out.push_back(Reparametrization{{a, b}, {a, b}});
  Reparametrization quad;
  constexpr int kPieces = 8;
  for (int i = 0; i <= kPieces; ++i) {
    const double x = static_cast<double>(i) / kPieces;
    quad.times.push_back(i == kPieces ? b : a + len * x);
    quad.values.push_back(i == kPieces ? b : a + len * x * x);
  }
  out.push_back(std::move(quad));
  const double mid = a + 0.5 * len;
  out.push_back(Reparametrization{{a, a + len / 3.0, a + 2.0 * len / 3.0, b}, {a, mid, mid, b}});
  return out;
}

}  // namespace sweep
