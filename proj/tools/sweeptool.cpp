// Command-line front end: runs scenario files through the C interface and
// writes trajectory.csv, reports.jsonl and summary.json per scenario.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "sweep/sweep.h"

namespace fs = std::filesystem;

namespace {

struct Flags {
  std::optional<std::uint64_t> seed;
  bool timing = false;
  bool corrupt = false;
};

struct Outcome {
  std::string stem;
  int exit_code = 0;
  std::string summary;
  std::string error;
};

void write_atomically(const fs::path& target, const std::string& content) {
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  fs::rename(tmp, target);
}

Outcome run_one(const fs::path& scenario, const fs::path& out_dir, const Flags& flags) {
  Outcome res;
  res.stem = scenario.stem().string();
  sw_scenario* sc = nullptr;
  sw_status st = sw_scenario_from_file(scenario.string().c_str(), &sc);
  if (st != SW_OK) {
    res.exit_code = sw_status_exit_code(st);
    res.error = sw_last_error();
    return res;
  }
  sw_run_options opts{};
  opts.corrupt = flags.corrupt ? 1 : 0;
  opts.has_seed = flags.seed ? 1 : 0;
  opts.seed = flags.seed.value_or(0);
  opts.timing = flags.timing ? 1 : 0;
  sw_result* result = nullptr;
  st = sw_scenario_run(sc, &opts, &result);
  sw_scenario_free(sc);
  if (result == nullptr) {
    res.exit_code = sw_status_exit_code(st);
    res.error = sw_last_error();
    return res;
  }
  try {
    fs::create_directories(out_dir);
    write_atomically(out_dir / "trajectory.csv", sw_result_trajectory_csv(result));
    write_atomically(out_dir / "reports.jsonl", sw_result_reports_jsonl(result));
    write_atomically(out_dir / "summary.json", sw_result_summary_json(result));
    res.summary = sw_result_summary_json(result);
    res.exit_code = sw_status_exit_code(st);
  } catch (const std::exception& err) {
    res.exit_code = 2;
    res.error = err.what();
  }
  sw_result_free(result);
  return res;
}

int cmd_run(const std::string& scenario, const std::string& out, const Flags& flags) {
  const Outcome res = run_one(scenario, out, flags);
  if (!res.error.empty()) std::cerr << "error: " << res.error << "\n";
  if (res.exit_code == 1) std::cerr << "check failed, see " << out << "/reports.jsonl\n";
  return res.exit_code;
}

int cmd_sweep(const std::string& batch, const std::string& out, int parallel,
              const Flags& flags) {
  std::vector<fs::path> files;
  std::error_code ec;
  if (!fs::is_directory(batch, ec)) {
    std::cerr << "error: batch directory " << batch << " not found\n";
    return 2;
  }
  for (const auto& entry : fs::directory_iterator(batch)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  std::vector<Outcome> outcomes(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      outcomes[i] = run_one(files[i], fs::path(out) / files[i].stem(), flags);
    }
  };
  const int workers = std::max(1, std::min<int>(parallel, static_cast<int>(files.size())));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  nlohmann::json index;
  index["scenarios"] = nlohmann::json::array();
  int exit_code = 0;
  for (const auto& o : outcomes) {
    nlohmann::json row;
    row["scenario"] = o.stem;
    row["exit_code"] = o.exit_code;
    if (!o.summary.empty()) row["summary"] = nlohmann::json::parse(o.summary);
    if (!o.error.empty()) {
      row["error"] = o.error;
      std::cerr << "error: " << o.stem << ": " << o.error << "\n";
    }
    index["scenarios"].push_back(row);
    exit_code = std::max(exit_code, o.exit_code);
  }
  try {
    fs::create_directories(out);
    write_atomically(fs::path(out) / "index.json", index.dump(2) + "\n");
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return std::max(exit_code, 2);
  }
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sweeping-process solver and invariant checker"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(sw_version()));

  Flags flags;
  std::uint64_t seed = 0;
  std::string scenario;
  std::string batch;
  std::string out = "out";
  int parallel = 1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", out, "Output directory")->capture_default_str();
    sub->add_option("--seed", seed, "Seed for direction sampling in approximate distances");
    sub->add_flag("--timing", flags.timing, "Record wall time in summary.json");
    sub->add_flag("--corrupt", flags.corrupt)->group("");
  };

  auto* run = app.add_subcommand("run", "Solve one scenario and run its checks");
  run->add_option("scenario", scenario, "Scenario JSON file")->required();
  add_common(run);

  auto* sweep = app.add_subcommand("sweep", "Run every *.json scenario in a directory");
  sweep->add_option("batch_dir", batch, "Directory of scenario files")->required();
  sweep->add_option("--parallel", parallel, "Scenarios solved concurrently")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_common(sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 2;
  }
  if ((run->parsed() ? run : sweep)->count("--seed") > 0) flags.seed = seed;

  try {
    if (run->parsed()) return cmd_run(scenario, out, flags);
    return cmd_sweep(batch, out, parallel, flags);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
}
