#include "json_io.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "sweep/errors.hpp"

namespace sweep::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::Parse, where + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(where + "." + key, "missing");
  return *it;
}

// Rewrites domain-validation messages to carry the JSON location.
template <class F>
auto located(const std::string& where, F&& make) {
  try {
    return make();
  } catch (const Error& err) {
    if (err.code() == ErrorCode::InvalidArgument) {
      throw Error(ErrorCode::InvalidArgument, where + ": " + err.what());
    }
    throw;
  }
}

Side parse_side(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected \"left\", \"value\" or \"right\"");
  const auto s = j.get<std::string>();
  if (s == "left") return Side::Left;
  if (s == "value") return Side::Value;
  if (s == "right") return Side::Right;
  fail(where, "unknown side \"" + s + "\"");
}

int parse_int(const json& j, const std::string& where) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) fail(where, "expected an integer");
  const auto v = j.get<long long>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    fail(where, "integer out of range");
  }
  return static_cast<int>(v);
}

}  // namespace

double parse_number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

Vec parse_vector(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where, "expected a nonempty array of numbers");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = parse_number(j[i], where + "[" + std::to_string(i) + "]");
  }
  return v;
}

ConvexSet parse_set(const json& j, const std::string& where) {
  const auto& type_j = field(j, "type", where);
  if (!type_j.is_string()) fail(where + ".type", "expected a string");
  const auto type = type_j.get<std::string>();
  if (type == "ball") {
    Vec c = parse_vector(field(j, "center", where), where + ".center");
    const double r = parse_number(field(j, "radius", where), where + ".radius");
    return located(where, [&] { return ConvexSet::ball(std::move(c), r); });
  }
  if (type == "box") {
    Vec lo = parse_vector(field(j, "lo", where), where + ".lo");
    Vec hi = parse_vector(field(j, "hi", where), where + ".hi");
    return located(where, [&] { return ConvexSet::box(std::move(lo), std::move(hi)); });
  }
  if (type == "halfspace") {
    Vec n = parse_vector(field(j, "normal", where), where + ".normal");
    const double c = parse_number(field(j, "offset", where), where + ".offset");
    return located(where, [&] { return ConvexSet::halfspace(std::move(n), c); });
  }
  if (type == "hpolytope") {
    const auto& hs_j = field(j, "halfspaces", where);
    if (!hs_j.is_array() || hs_j.empty()) fail(where + ".halfspaces", "expected a nonempty array");
    std::vector<Halfspace> hs;
    for (std::size_t i = 0; i < hs_j.size(); ++i) {
      const std::string w = where + ".halfspaces[" + std::to_string(i) + "]";
      if (hs_j[i].contains("type") && hs_j[i]["type"] != "halfspace") {
        fail(w + ".type", "expected \"halfspace\"");
      }
      hs.push_back(Halfspace{parse_vector(field(hs_j[i], "normal", w), w + ".normal"),
                             parse_number(field(hs_j[i], "offset", w), w + ".offset")});
    }
    return located(where, [&] { return ConvexSet::polytope(std::move(hs)); });
  }
  if (type == "translate") {
    ConvexSet base = parse_set(field(j, "base", where), where + ".base");
    Vec shift = parse_vector(field(j, "shift", where), where + ".shift");
    return located(where, [&] { return ConvexSet::translate(std::move(base), std::move(shift)); });
  }
  fail(where + ".type", "unknown set type \"" + type + "\"");
}

BVPath parse_path(const json& j, const std::string& where) {
  const auto& dom = field(j, "domain", where);
  if (!dom.is_array() || dom.size() != 2) fail(where + ".domain", "expected [a, b]");
  const double a = parse_number(dom[0], where + ".domain[0]");
  const double b = parse_number(dom[1], where + ".domain[1]");
  const auto& bps_j = field(j, "breakpoints", where);
  if (!bps_j.is_array()) fail(where + ".breakpoints", "expected an array");
  std::vector<Breakpoint> bps;
  for (std::size_t i = 0; i < bps_j.size(); ++i) {
    const std::string w = where + ".breakpoints[" + std::to_string(i) + "]";
    const auto& bj = bps_j[i];
    Breakpoint bp;
    bp.t = parse_number(field(bj, "t", w), w + ".t");
    if (bj.contains("left")) bp.left = parse_vector(bj["left"], w + ".left");
    if (bj.contains("value")) bp.value = parse_vector(bj["value"], w + ".value");
    if (bj.contains("right")) bp.right = parse_vector(bj["right"], w + ".right");
    if (bp.left.size() == 0 && bp.value.size() == 0 && bp.right.size() == 0) {
      fail(w, "needs at least one of left, value, right");
    }
    bps.push_back(std::move(bp));
  }
  bool rc = true;
  if (j.contains("right_continuous")) {
    if (!j["right_continuous"].is_boolean()) fail(where + ".right_continuous", "expected a boolean");
    rc = j["right_continuous"].get<bool>();
  }
  return located(where, [&] { return BVPath(a, b, std::move(bps), rc); });
}

MovingSet parse_moving_set(const json& j, const std::string& where) {
  std::string mode = "translate";
  if (j.is_object() && j.contains("mode")) {
    if (!j["mode"].is_string()) fail(where + ".mode", "expected a string");
    mode = j["mode"].get<std::string>();
  }
  if (mode == "translate") {
    ConvexSet base = parse_set(field(j, "base", where), where + ".base");
    BVPath path = parse_path(field(j, "path", where), where + ".path");
    return located(where, [&] { return MovingSet::translate(std::move(base), std::move(path)); });
  }
  if (mode == "family") {
    const auto& segs_j = field(j, "segments", where);
    if (!segs_j.is_array() || segs_j.empty()) fail(where + ".segments", "expected a nonempty array");
    std::vector<FamilySegment> segs;
    for (std::size_t i = 0; i < segs_j.size(); ++i) {
      const std::string w = where + ".segments[" + std::to_string(i) + "]";
      const auto& sj = segs_j[i];
      segs.push_back(FamilySegment{parse_number(field(sj, "t0", w), w + ".t0"),
                                   parse_number(field(sj, "t1", w), w + ".t1"),
                                   parse_set(field(sj, "start", w), w + ".start"),
                                   parse_set(field(sj, "end", w), w + ".end")});
    }
    std::vector<FamilyOverride> overrides;
    if (j.contains("jumps")) {
      const auto& jj = j["jumps"];
      if (!jj.is_array()) fail(where + ".jumps", "expected an array");
      for (std::size_t i = 0; i < jj.size(); ++i) {
        const std::string w = where + ".jumps[" + std::to_string(i) + "]";
        overrides.push_back(FamilyOverride{parse_number(field(jj[i], "t", w), w + ".t"),
                                           parse_set(field(jj[i], "at", w), w + ".at")});
      }
    }
    return located(where, [&] { return MovingSet::family(std::move(segs), std::move(overrides)); });
  }
  fail(where + ".mode", "unknown mode \"" + mode + "\"");
}

std::vector<JumpPrescription> parse_prescriptions(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  std::vector<JumpPrescription> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string w = where + "[" + std::to_string(i) + "]";
    const auto& pj = j[i];
    JumpPrescription p;
    p.t = parse_number(field(pj, "t", w), w + ".t");
    const auto& kind_j = field(pj, "kind", w);
    if (!kind_j.is_string()) fail(w + ".kind", "expected a string");
    const auto kind = kind_j.get<std::string>();
    if (kind == "project") {
      p.kind = JumpKind::Project;
    } else if (kind == "double_project") {
      p.kind = JumpKind::DoubleProject;
    } else if (kind == "segment_play") {
      p.kind = JumpKind::SegmentPlay;
      if (pj.contains("substeps")) {
        p.substeps = parse_int(pj["substeps"], w + ".substeps");
        if (p.substeps < 1) fail(w + ".substeps", "must be a positive integer");
      }
    } else if (kind == "fixed_target") {
      p.kind = JumpKind::FixedTarget;
      p.target = parse_vector(field(pj, "target", w), w + ".target");
    } else {
      fail(w + ".kind", "unknown kind \"" + kind + "\"");
    }
    if (pj.contains("side")) {
      p.side = parse_side(pj["side"], w + ".side");
      if (p.side == Side::Left) fail(w + ".side", "must be \"value\" or \"right\"");
    }
    out.push_back(std::move(p));
  }
  return out;
}

SolverConfig parse_config(const json& j, const std::string& where) {
  SolverConfig cfg;
  if (j.is_null()) return cfg;
  if (!j.is_object()) fail(where, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = it.key();
    const std::string w = where + "." + key;
    const json& v = it.value();
    if (key == "base_steps") {
      cfg.base_steps = parse_int(v, w);
      if (cfg.base_steps < 1) fail(w, "must be >= 1");
    } else if (key == "max_refine") {
      cfg.max_refine = parse_int(v, w);
      if (cfg.max_refine < 0 || cfg.max_refine > 24) fail(w, "must be in [0, 24]");
    } else if (key == "tol_traj") {
      cfg.tol_traj = parse_number(v, w);
      if (!(cfg.tol_traj > 0.0)) fail(w, "must be > 0");
    } else if (key == "tol_feas") {
      cfg.proj.tol_feas = parse_number(v, w);
      if (!(cfg.proj.tol_feas >= 0.0)) fail(w, "must be >= 0");
    } else if (key == "tol_proj") {
      cfg.proj.tol_proj = parse_number(v, w);
      if (!(cfg.proj.tol_proj > 0.0)) fail(w, "must be > 0");
    } else if (key == "max_iter") {
      cfg.proj.max_iter = parse_int(v, w);
      if (cfg.proj.max_iter < 1) fail(w, "must be >= 1");
    } else if (key == "jump_truncation_eps") {
      cfg.jump_truncation_eps = parse_number(v, w);
      if (!(cfg.jump_truncation_eps >= 0.0)) fail(w, "must be >= 0");
    } else if (key == "segment_substeps") {
      cfg.segment_substeps = parse_int(v, w);
      if (cfg.segment_substeps < 0) fail(w, "must be >= 0");
    } else if (key == "segment_initial_substeps") {
      cfg.segment_initial_substeps = parse_int(v, w);
      if (cfg.segment_initial_substeps < 1) fail(w, "must be >= 1");
    } else if (key == "segment_tol") {
      cfg.segment_tol = parse_number(v, w);
      if (!(cfg.segment_tol > 0.0)) fail(w, "must be > 0");
    } else if (key == "segment_max_substeps") {
      cfg.segment_max_substeps = parse_int(v, w);
      if (cfg.segment_max_substeps < 1) fail(w, "must be >= 1");
    } else if (key == "seed") {
      if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
        fail(w, "expected a nonnegative integer");
      }
      cfg.seed = v.get<std::uint64_t>();
    } else {
      fail(w, "unknown configuration key");
    }
  }
  return cfg;
}

json number_or_null(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

json to_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number_or_null(v(i)));
  return out;
}

json to_json(const ConvexSet& set) {
  switch (set.kind()) {
    case SetKind::Ball:
      return {{"type", "ball"}, {"center", to_json(set.as_ball().center)},
              {"radius", set.as_ball().radius}};
    case SetKind::Box:
      return {{"type", "box"}, {"lo", to_json(set.as_box().lo)}, {"hi", to_json(set.as_box().hi)}};
    case SetKind::Halfspace:
      return {{"type", "halfspace"}, {"normal", to_json(set.as_halfspace().normal)},
              {"offset", set.as_halfspace().offset}};
    case SetKind::HPolytope: {
      json hs = json::array();
      for (const auto& h : set.as_polytope().halfspaces) {
        hs.push_back({{"normal", to_json(h.normal)}, {"offset", h.offset}});
      }
      return {{"type", "hpolytope"}, {"halfspaces", hs}};
    }
    case SetKind::Translate:
      return {{"type", "translate"}, {"base", to_json(*set.as_translate().base)},
              {"shift", to_json(set.as_translate().shift)}};
  }
  return nullptr;
}

json to_json(const CheckReport& rep) {
  json out;
  out["name"] = rep.name;
  out["passed"] = rep.passed;
  out["worst_violation"] = number_or_null(rep.worst_violation);
  out["location"] = number_or_null(rep.location);
  out["tolerance_used"] = number_or_null(rep.tolerance_used);
  out["notes"] = rep.notes;
  if (rep.skipped) out["skipped"] = true;
  return out;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string out = "t";
  const Eigen::Index d = traj.dim();
  for (Eigen::Index i = 0; i < d; ++i) out += ",y_" + std::to_string(i);
  out += ",step_displacement_norm,side\n";
  for (const auto& row : traj.rows) {
    out += format_double(row.t);
    for (Eigen::Index i = 0; i < d; ++i) out += "," + format_double(row.y(i));
    out += "," + format_double(row.step);
    out += ",";
    out += to_string(row.side);
    out += "\n";
  }
  return out;
}

}  // namespace sweep::io
