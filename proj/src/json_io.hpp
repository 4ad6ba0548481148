#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "sweep/bvpath.hpp"
#include "sweep/geometry.hpp"
#include "sweep/movingset.hpp"
#include "sweep/solver.hpp"
#include "sweep/verify.hpp"

namespace sweep::io {

using nlohmann::json;

// Parsers throw Error(Parse) for structural problems and
// Error(InvalidArgument) for values rejected by the domain types; both
// messages start with the JSON location of the offending field.
Vec parse_vector(const json& j, const std::string& where);
double parse_number(const json& j, const std::string& where);
ConvexSet parse_set(const json& j, const std::string& where);
BVPath parse_path(const json& j, const std::string& where);
MovingSet parse_moving_set(const json& j, const std::string& where);
std::vector<JumpPrescription> parse_prescriptions(const json& j, const std::string& where);
SolverConfig parse_config(const json& j, const std::string& where);

json to_json(const Vec& v);
json to_json(const ConvexSet& set);
json to_json(const CheckReport& rep);

/// JSON number, or null when not finite.
json number_or_null(double x);

/// Fixed-format CSV: t, y_0..y_{d-1}, step_displacement_norm, side.
std::string trajectory_csv(const Trajectory& traj);

std::string format_double(double x);

}  // namespace sweep::io
