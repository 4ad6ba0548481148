#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json_io.hpp"
#include "sweep/errors.hpp"
#include "sweep/play.hpp"

namespace sweep {

enum class PlayMode { P, Pbar, SegmentJumpEquiv };

struct SweepSpec {
  std::optional<MovingSet> moving_set;
  Vec y0;
  std::optional<Vec> y0_alt;
  std::vector<JumpPrescription> prescriptions;
};

struct PlaySpec {
  std::optional<PlayInput> input;
  PlayMode mode = PlayMode::P;
  std::optional<Vec> z0_alt;
};

struct Scenario {
  std::string name;
  bool is_play = false;
  SweepSpec sweep;
  PlaySpec play;
  SolverConfig config;
  std::vector<std::string> checks;
};

/// Throws Error(Parse / InvalidArgument) naming the offending field.
Scenario parse_scenario(const io::json& j, std::string name);

struct RunOptions {
  bool corrupt = false;
  std::optional<std::uint64_t> seed;
  bool timing = false;
};

struct RunOutput {
  std::string trajectory_csv;
  std::string reports_jsonl;
  std::string summary_json;
  bool all_passed = true;
};

/// Solves and checks. Errors from the solver propagate as sweep::Error.
RunOutput run_scenario(const Scenario& sc, const RunOptions& opts);

/// 2 for malformed input, 3 for solver failures.
int exit_code_for(ErrorCode code);

}  // namespace sweep
