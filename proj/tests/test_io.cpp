#include <doctest.h>

#include "commands.hpp"
#include "helpers.hpp"

using namespace pathspace;

TEST_CASE("step path JSON round trip") {
  StepPath x = testutil::scalar_step(Horizon::half_line(), {0.0, 0.5, 1.75}, {0.1, -2.0, 0.3});
  Json j = path_to_json(Path(x));
  Path back = path_from_json(j);
  const auto& sp = std::get<StepPath>(back);
  CHECK(sp.times == x.times);
  for (size_t i = 0; i < sp.values.size(); ++i) CHECK(sp.values[i] == x.values[i]);
}

TEST_CASE("piecewise-linear path JSON round trip keeps left values") {
  auto eta = testutil::eta_path(0.3);
  Json j = path_to_json(Path(eta));
  CHECK(j.contains("left_values"));
  Path back = path_from_json(j);
  const auto& pl = std::get<PiecewiseLinearPath>(back);
  CHECK(pl.knots == eta.knots);
  CHECK(pl.left[1] == eta.left[1]);
  CHECK(pl.right[1] == eta.right[1]);
}

TEST_CASE("malformed files are rejected with the offending field") {
  Json decreasing{{"horizon", {{"kind", "halfline"}}},
                  {"breakpoints", {0.0, 2.0, 1.0}},
                  {"values", {{0.0}, {1.0}, {2.0}}}};
  CHECK_THROWS_WITH_AS((void)path_from_json(decreasing), doctest::Contains("strictly increasing"), ValidationError);

  Json missing{{"horizon", {{"kind", "halfline"}}}};
  CHECK_THROWS_WITH_AS((void)path_from_json(missing), doctest::Contains("breakpoints"), ValidationError);

  Json zero_mass{{"atoms", Json::array()}};
  CHECK_THROWS_AS((void)measure_from_json(zero_mass), ValidationError);

  Json bad_horizon{{"kind", "weekly"}};
  CHECK_THROWS_AS((void)horizon_from_json(bad_horizon), ValidationError);
}

TEST_CASE("measure, family, region, expr round trips") {
  DiscreteMeasure mu({{{StatePoint(0.25)}, 0.5}, {{StatePoint(0.75)}, 0.5}}, 1);
  DiscreteMeasure mu2 = measure_from_json(measure_to_json(mu));
  CHECK(mu2.total_mass() == mu.total_mass());
  CHECK(mu2.atoms[0].point[0] == mu.atoms[0].point[0]);

  FunctionFamily fam = tent_family({StatePoint(0.0), StatePoint(1.0)}, {2.0});
  FunctionFamily fam2 = family_from_json(family_to_json(fam));
  REQUIRE(fam2.size() == fam.size());
  for (size_t i = 0; i < fam.size(); ++i) CHECK(fam2.members[i].key() == fam.members[i].key());
  CHECK(fam2.contains_one);

  RegionSpec region = RegionSpec::interval(0.0, 1.0, true);
  RegionSpec region2 = region_from_json(region_to_json(region));
  CHECK(region2.contains(StatePoint(0.5)));
  CHECK_FALSE(region2.contains(StatePoint(1.0)));

  AlgebraicExpr expr = AlgebraicExpr::sum(
      {AlgebraicExpr::scale(2.0, AlgebraicExpr::leaf(0)), AlgebraicExpr::product({AlgebraicExpr::leaf(1)})});
  AlgebraicExpr expr2 = expr_from_json(expr_to_json(expr));
  auto leaves = [](int j) { return j + 1.0; };
  CHECK(expr.eval(leaves) == expr2.eval(leaves));
}

TEST_CASE("tuple measures round trip") {
  DiscreteMeasure mu({{{StatePoint(0.0), StatePoint(1.0)}, 1.0}}, 2);
  DiscreteMeasure back = measure_from_json(measure_to_json(mu));
  CHECK(back.arity == 2);
  CHECK(back.atoms[0].point[1].scalar() == 1.0);
}

TEST_CASE("run_dist command emits value and witness") {
  StepPath x = StepPath::indicator(1.0);
  StepPath y = StepPath::indicator(1.1);
  Json config{{"x", path_to_json(Path(x))}, {"y", path_to_json(Path(y))}};
  Json report = run_dist(config);
  CHECK(report["result"]["value"].get<double>() == doctest::Approx(std::log(1.1)).epsilon(1e-12));
  CHECK(report["result"]["candidates_evaluated"].get<long>() >= 3);
  CHECK(report["config"] == config);  // reports embed their full config
}

TEST_CASE("run_modulus rejects delta >= T naming both fields") {
  StepPath x = StepPath::indicator(1.0);
  Json config{{"path", path_to_json(Path(x))}, {"T", 2.0}, {"deltas", {0.5, 2.5}}};
  try {
    run_modulus(config);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    std::string msg = e.what();
    CHECK(msg.find("2.5") != std::string::npos);
    CHECK(msg.find("T 2") != std::string::npos);
  }
}

TEST_CASE("run_simulate is deterministic at the byte level") {
  Json config{{"sampler_config",
               {{"sampler", "eta"}, {"N", 10}, {"seed", 7}, {"horizon", {{"kind", "halfline"}}}}}};
  std::string once = run_simulate(config).dump();
  std::string twice = run_simulate(config).dump();
  CHECK(once == twice);
}

TEST_CASE("run_tightness band check on eta") {
  Json config{{"check", "band"},
              {"sampler_config", {{"sampler", "eta"}, {"N", 500}, {"seed", 1}}},
              {"band", {0.25, 0.75}},
              {"T", 1.0}};
  Json report = run_tightness(config);
  CHECK(report["result"]["band_prob"].get<double>() == 0.0);
}

TEST_CASE("csv emission carries the same numbers as the json report") {
  Json config{{"check", "band"},
              {"sampler_config", {{"sampler", "eta"}, {"N", 100}, {"seed", 1}}},
              {"band", {0.0, 1.0}},
              {"T", 1.0}};
  Json report = run_tightness(config);
  std::string csv = report_to_csv(report);
  CHECK(csv.find("/result/band_prob") != std::string::npos);
  char expected[40];
  std::snprintf(expected, sizeof(expected), "%.17g", report["result"]["band_prob"].get<double>());
  CHECK(csv.find(expected) != std::string::npos);
}

TEST_CASE("unknown command is rejected") {
  CHECK_THROWS_AS(run_command("frobnicate", Json::object()), ValidationError);
}
