#pragma once

#include <Eigen/Core>

#include <cmath>
#include <string>

namespace sweep {

/// State vector in R^d. The dimension is fixed per scenario at runtime.
using Vec = Eigen::VectorXd;

inline bool all_finite(const Vec& v) { return v.allFinite(); }

/// Throws InvalidArgument naming `what` if v has NaN/Inf entries or the wrong size.
void require_vector(const Vec& v, Eigen::Index dim, const std::string& what);

/// One-sided selector for values at a time instant.
enum class Side { Left, Value, Right };

const char* to_string(Side side);

}  // namespace sweep
