#include "sweep/sweep.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json_io.hpp"
#include "scenario.hpp"
#include "sweep/errors.hpp"

struct sw_set {
  sweep::ConvexSet set;
};

struct sw_scenario {
  sweep::Scenario scenario;
};

struct sw_result {
  sweep::RunOutput output;
};

namespace {

thread_local std::string g_last_error;

sw_status record(sw_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

sw_status status_for(sweep::ErrorCode code) {
  return sweep::exit_code_for(code) == 2 ? SW_INVALID_INPUT : SW_SOLVER_ERROR;
}

template <class F>
sw_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const sweep::Error& err) {
    return record(status_for(err.code()), std::string(sweep::to_string(err.code())) + ": " + err.what());
  } catch (const nlohmann::json::exception& err) {
    return record(SW_INVALID_INPUT, std::string("Parse: ") + err.what());
  } catch (const std::bad_alloc&) {
    return record(SW_SOLVER_ERROR, "out of memory");
  } catch (const std::exception& err) {
    return record(SW_SOLVER_ERROR, err.what());
  }
}

sweep::Vec to_vec(const double* x, size_t dim) {
  sweep::Vec v(static_cast<Eigen::Index>(dim));
  for (size_t i = 0; i < dim; ++i) v(static_cast<Eigen::Index>(i)) = x[i];
  return v;
}

sw_status check_dim(const sw_set* set, size_t dim) {
  if (static_cast<Eigen::Index>(dim) != set->set.dim()) {
    return record(SW_INVALID_INPUT, "dimension mismatch");
  }
  return SW_OK;
}

}  // namespace

extern "C" {

const char* sw_version(void) { return "1.0.0"; }

const char* sw_last_error(void) { return g_last_error.c_str(); }

sw_status sw_set_from_json(const char* json, sw_set** out) {
  if (json == nullptr || out == nullptr) return record(SW_NULL_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    const auto j = nlohmann::json::parse(json);
    *out = new sw_set{sweep::io::parse_set(j, "set")};
    return SW_OK;
  });
}

void sw_set_free(sw_set* set) { delete set; }

size_t sw_set_dim(const sw_set* set) {
  return set == nullptr ? 0 : static_cast<size_t>(set->set.dim());
}

sw_status sw_set_project(const sw_set* set, const double* x, size_t dim, double* out) {
  if (set == nullptr || x == nullptr || out == nullptr) {
    return record(SW_NULL_ARGUMENT, "null argument");
  }
  if (check_dim(set, dim) != SW_OK) return SW_INVALID_INPUT;
  return guarded([&] {
    const auto p = sweep::projection(set->set, to_vec(x, dim));
    for (size_t i = 0; i < dim; ++i) out[i] = p(static_cast<Eigen::Index>(i));
    return SW_OK;
  });
}

sw_status sw_set_support(const sw_set* set, const double* dir, size_t dim, double* out) {
  if (set == nullptr || dir == nullptr || out == nullptr) {
    return record(SW_NULL_ARGUMENT, "null argument");
  }
  if (check_dim(set, dim) != SW_OK) return SW_INVALID_INPUT;
  return guarded([&] {
    *out = sweep::support(set->set, to_vec(dir, dim));
    return SW_OK;
  });
}

sw_status sw_set_contains(const sw_set* set, const double* x, size_t dim, double tol, int* out) {
  if (set == nullptr || x == nullptr || out == nullptr) {
    return record(SW_NULL_ARGUMENT, "null argument");
  }
  if (check_dim(set, dim) != SW_OK) return SW_INVALID_INPUT;
  if (!(tol >= 0.0)) return record(SW_INVALID_INPUT, "tol: must be >= 0");
  return guarded([&] {
    *out = sweep::contains(set->set, to_vec(x, dim), tol) ? 1 : 0;
    return SW_OK;
  });
}

sw_status sw_set_hausdorff(const sw_set* a, const sw_set* b, uint64_t seed, double* value,
                           int* approximate) {
  if (a == nullptr || b == nullptr || value == nullptr) {
    return record(SW_NULL_ARGUMENT, "null argument");
  }
  return guarded([&] {
    const auto h = sweep::hausdorff(a->set, b->set, seed);
    *value = h.value;
    if (approximate != nullptr) *approximate = h.approximate ? 1 : 0;
    return SW_OK;
  });
}

sw_status sw_scenario_from_json(const char* json, const char* name, sw_scenario** out) {
  if (json == nullptr || out == nullptr) return record(SW_NULL_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    const auto j = nlohmann::json::parse(json);
    *out = new sw_scenario{sweep::parse_scenario(j, name == nullptr ? "scenario" : name)};
    return SW_OK;
  });
}

sw_status sw_scenario_from_file(const char* path, sw_scenario** out) {
  if (path == nullptr || out == nullptr) return record(SW_NULL_ARGUMENT, "null argument");
  *out = nullptr;
  std::ifstream in(path, std::ios::binary);
  if (!in) return record(SW_IO_ERROR, std::string("cannot read ") + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string stem = std::filesystem::path(path).stem().string();
  return sw_scenario_from_json(buf.str().c_str(), stem.c_str(), out);
}

void sw_scenario_free(sw_scenario* scenario) { delete scenario; }

sw_status sw_scenario_run(const sw_scenario* scenario, const sw_run_options* options,
                          sw_result** out) {
  if (scenario == nullptr || out == nullptr) return record(SW_NULL_ARGUMENT, "null argument");
  *out = nullptr;
  sweep::RunOptions opts;
  if (options != nullptr) {
    opts.corrupt = options->corrupt != 0;
    if (options->has_seed != 0) opts.seed = options->seed;
    opts.timing = options->timing != 0;
  }
  return guarded([&] {
    auto output = sweep::run_scenario(scenario->scenario, opts);
    const bool passed = output.all_passed;
    *out = new sw_result{std::move(output)};
    return passed ? SW_OK : SW_CHECK_FAILED;
  });
}

const char* sw_result_trajectory_csv(const sw_result* result) {
  return result == nullptr ? "" : result->output.trajectory_csv.c_str();
}

const char* sw_result_reports_jsonl(const sw_result* result) {
  return result == nullptr ? "" : result->output.reports_jsonl.c_str();
}

const char* sw_result_summary_json(const sw_result* result) {
  return result == nullptr ? "" : result->output.summary_json.c_str();
}

int sw_result_all_passed(const sw_result* result) {
  return result != nullptr && result->output.all_passed ? 1 : 0;
}

void sw_result_free(sw_result* result) { delete result; }

int sw_status_exit_code(sw_status status) {
  switch (status) {
    case SW_OK: return 0;
    case SW_CHECK_FAILED: return 1;
    case SW_INVALID_INPUT:
    case SW_IO_ERROR:
    case SW_NULL_ARGUMENT: return 2;
    case SW_SOLVER_ERROR: return 3;
  }
  return 3;
}

}  // extern "C"
