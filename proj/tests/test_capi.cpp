#include <doctest.h>

#include <cstring>
#include <string>

#include "sweep/sweep.h"

TEST_CASE("sets through the C interface") {
  sw_set* ball = nullptr;
  REQUIRE(sw_set_from_json(R"({"type":"ball","center":[0,0],"radius":1})", &ball) == SW_OK);
  CHECK(sw_set_dim(ball) == 2);
  const double x[2] = {2.0, 0.0};
  double p[2] = {0, 0};
  CHECK(sw_set_project(ball, x, 2, p) == SW_OK);
  CHECK(p[0] == doctest::Approx(1.0));
  CHECK(p[1] == doctest::Approx(0.0));
  double s = 0;
  const double dir[2] = {0.0, 1.0};
  CHECK(sw_set_support(ball, dir, 2, &s) == SW_OK);
  CHECK(s == doctest::Approx(1.0));
  int inside = -1;
  CHECK(sw_set_contains(ball, p, 2, 0.0, &inside) == SW_OK);
  CHECK(inside == 1);
  CHECK(sw_set_project(ball, x, 3, p) == SW_INVALID_INPUT);

  sw_set* big = nullptr;
  REQUIRE(sw_set_from_json(R"({"type":"ball","center":[0,0],"radius":3})", &big) == SW_OK);
  double h = 0;
  int approx = -1;
  CHECK(sw_set_hausdorff(ball, big, 0, &h, &approx) == SW_OK);
  CHECK(h == doctest::Approx(2.0));
  CHECK(approx == 0);
  sw_set_free(big);
  sw_set_free(ball);

  sw_set* bad = nullptr;
  CHECK(sw_set_from_json(R"({"type":"ball","center":[0],"radius":-2})", &bad) == SW_INVALID_INPUT);
  CHECK(bad == nullptr);
  CHECK(std::string(sw_last_error()).find("radius") != std::string::npos);
  CHECK(sw_set_from_json("{not json", &bad) == SW_INVALID_INPUT);
  CHECK(sw_set_from_json(nullptr, &bad) == SW_NULL_ARGUMENT);
}

TEST_CASE("scenarios through the C interface") {
  const char* doc = R"({
    "schema_version": 1,
    "moving_set": {"base": {"type": "box", "lo": [-1], "hi": [1]},
      "path": {"domain": [0, 1], "breakpoints": [{"t": 0, "value": [0]}, {"t": 1, "value": [2]}]}},
    "y0": [0.5],
    "config": {"base_steps": 8, "max_refine": 1},
    "checks": ["feasibility", "contraction"]
  })";
  sw_scenario* sc = nullptr;
  REQUIRE(sw_scenario_from_json(doc, "capi", &sc) == SW_OK);
  sw_result* res = nullptr;
  CHECK(sw_scenario_run(sc, nullptr, &res) == SW_OK);
  REQUIRE(res != nullptr);
  CHECK(sw_result_all_passed(res) == 1);
  CHECK(std::strncmp(sw_result_trajectory_csv(res), "t,y_0,", 6) == 0);
  CHECK(std::string(sw_result_summary_json(res)).find("\"capi\"") != std::string::npos);
  sw_result_free(res);

  sw_run_options opts{};
  opts.corrupt = 1;
  CHECK(sw_scenario_run(sc, &opts, &res) == SW_CHECK_FAILED);
  CHECK(sw_result_all_passed(res) == 0);
  sw_result_free(res);
  sw_scenario_free(sc);

  CHECK(sw_scenario_from_file("/nonexistent/file.json", &sc) == SW_IO_ERROR);
  CHECK(sw_status_exit_code(SW_OK) == 0);
  CHECK(sw_status_exit_code(SW_CHECK_FAILED) == 1);
  CHECK(sw_status_exit_code(SW_INVALID_INPUT) == 2);
  CHECK(sw_status_exit_code(SW_SOLVER_ERROR) == 3);
}
