#include <doctest.h>

#include "helpers.hpp"
#include "io.hpp"

using namespace pathspace;

namespace {

SamplerConfig eta_config(int n, uint64_t seed) {
  SamplerConfig c;
  c.sampler = "eta";
  c.n = n;
  c.seed = seed;
  return c;
}

FunctionFamily id_family() { return FunctionFamily({BoundedFunction::coordinate(0, 2.0)}); }

}  // namespace

TEST_CASE("simulation is reproducible and schedule-independent") {
  ProcessEnsemble a = simulate(eta_config(64, 7));
  ProcessEnsemble b = simulate(eta_config(64, 7), 4);
  REQUIRE(a.size() == b.size());
  CHECK(ensemble_to_json(a).dump() == ensemble_to_json(b).dump());  // bitwise identical

  ProcessEnsemble c = simulate(eta_config(64, 8));
  CHECK(ensemble_to_json(a).dump() != ensemble_to_json(c).dump());
}

TEST_CASE("eta sampler matches the closed form") {
  ProcessEnsemble ens = simulate(eta_config(50, 3));
  for (const auto& p : ens.paths) {
    const auto& pl = std::get<PiecewiseLinearPath>(p);
    double omega = pl.knots[1];
    CHECK(omega > 0.0);
    CHECK(omega < 1.0);
    CHECK(path_eval(p, 0.0).scalar() == doctest::Approx(1.0 - omega).epsilon(1e-15));
    CHECK(path_eval(p, 2.0).scalar() == 0.5);  // value 1/2 from omega on
    CHECK(path_left_limit(p, omega).scalar() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("band containment") {
  // every eta path's pre-jump ramp exits any band strictly inside (0,1)
  ProcessEnsemble ens = simulate(eta_config(2000, 1));
  CHECK(band_prob(ens, 0.25, 0.75, 1.0).value == 0.0);
  CHECK(band_prob(ens, 0.0, 1.0, 1.0).value == 1.0);

  SamplerConfig shift;
  shift.sampler = "deterministic-shift";
  shift.n = 10;
  shift.seed = 1;
  shift.shift_c = 0.5;
  CHECK(band_prob(simulate(shift), 0.25, 0.75, 1.0).value == 1.0);
}

TEST_CASE("path_stays_in_band endpoint cases") {
  StepPath near_end = testutil::scalar_step(Horizon::half_line(), {0.0, 2.0}, {0.5, 5.0});
  CHECK(path_stays_in_band(Path(near_end), 0.0, 1.0, 1.9));
  CHECK_FALSE(path_stays_in_band(Path(near_end), 0.0, 1.0, 2.0));  // value at T counts

  // ramp approaching the cap: the left limit at the jump is 1, so any band
  // with b < 1 is exited even though the value 1 is never attained
  auto eta = testutil::eta_path(0.5);
  CHECK_FALSE(path_stays_in_band(Path(eta), 0.0, 0.99, 1.0));
  CHECK(path_stays_in_band(Path(eta), 0.0, 1.0, 1.0));
}

TEST_CASE("mpcc on a grid region") {
  std::vector<StatePoint> grid;
  for (int i = 1; i <= 19; ++i) grid.push_back(StatePoint(i * 0.05));
  RegionSpec region = RegionSpec::sample(grid);

  ProcessEnsemble ens = simulate(eta_config(500, 5));
  MpccResult res = mpcc_check({ens}, 0.1, 0.0, region, MetricSpec::euclidean());
  CHECK(res.inf_probability == 1.0);  // eta_0 = 1 - omega lies within 0.025 of the grid
  CHECK(res.pass);

  SamplerConfig shift;
  shift.sampler = "deterministic-shift";
  shift.n = 10;
  shift.seed = 1;
  shift.shift_c = 42.0;
  MpccResult out = mpcc_check({simulate(shift)}, 0.1, 0.0, region, MetricSpec::euclidean());
  CHECK(out.inf_probability == 0.0);
  CHECK_FALSE(out.pass);
}

TEST_CASE("lmtc closed form for eta") {
  TimeSchedule schedule({2.0, 5.0, 10.0, 20.0});
  LmtcProfile prof = lmtc_eta_closed_form(schedule, 0.1, 0.9);
  for (size_t k = 0; k < schedule.points.size(); ++k) {
    double T = schedule.points[k];
    CHECK(prof.values[k] == doctest::Approx(1.0 - 0.1 / T).epsilon(1e-12));  // exact integral
    CHECK(prof.values[k] >= 1.0 - 1.0 / T);
  }
  // single-time probability from the interval-length formula
  LmtcProfile single = lmtc_eta_closed_form(TimeSchedule({1e-9}), 0.1, 0.9);
  CHECK(single.values[0] >= 0.0);
}

TEST_CASE("lmtc MC mode agrees with the closed form") {
  TimeSchedule schedule({2.0, 5.0});
  ProcessEnsemble ens = simulate(eta_config(4000, 11));
  LmtcProfile mc = lmtc_mc(ens, schedule, 0.1, 0.9, 1e-3);
  LmtcProfile exact = lmtc_eta_closed_form(schedule, 0.1, 0.9);
  for (size_t k = 0; k < schedule.points.size(); ++k) {
    CHECK(std::abs(mc.values[k] - exact.values[k]) <= 3.0 * mc.stderrs[k] + 1e-6);
    CHECK(mc.stderrs[k] > 0.0);
  }
}

TEST_CASE("constant ensembles have trivial lmtc profile") {
  SamplerConfig shift;
  shift.sampler = "deterministic-shift";
  shift.n = 5;
  shift.seed = 1;
  shift.shift_c = 0.5;
  LmtcProfile prof = lmtc_mc(simulate(shift), TimeSchedule({1.0, 4.0}), 0.25, 0.75, 1e-3);
  CHECK(prof.values[0] == 1.0);
  CHECK(prof.values[1] == 1.0);
}

TEST_CASE("mcc probe certifies deltas") {
  SamplerConfig shift;
  shift.sampler = "deterministic-shift";
  shift.n = 20;
  shift.seed = 2;
  shift.shift_c = 0.0;
  MccResult constant = mcc_probe({simulate(shift)}, MetricSpec::euclidean(), 0.5, 1.0, {0.1, 0.2});
  REQUIRE(constant.certified_delta.has_value());
  CHECK(*constant.certified_delta == 0.1);

  // two jumps 0.3 apart: w' = 1 for every delta > 0.3, so no certification
  std::vector<Path> fixed(8, Path(testutil::scalar_step(Horizon::half_line(), {0.0, 0.5, 0.8}, {0.0, 1.0, 2.0})));
  SamplerConfig custom;
  custom.sampler = "custom-paths";
  custom.n = (int)fixed.size();
  custom.seed = 0;
  custom.custom = fixed;
  MccResult blocked = mcc_probe({simulate(custom)}, MetricSpec::euclidean(), 0.5, 1.0, {0.6, 0.9});
  CHECK_FALSE(blocked.certified_delta.has_value());
  CHECK(blocked.worst_exceedance[0] == 1.0);
}

TEST_CASE("fdd collects empirical tuples") {
  SamplerConfig shift;
  shift.sampler = "deterministic-shift";
  shift.n = 4;
  shift.seed = 9;
  shift.shift_c = 0.7;
  DiscreteMeasure one_point = fdd(simulate(shift), {1.0, 2.0});
  CHECK(one_point.arity == 2);
  REQUIRE(one_point.atoms.size() == 1);  // all paths identical -> atoms merge
  CHECK(one_point.atoms[0].weight == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(one_point.atoms[0].point[0].scalar() == 0.7);

  // eta at a late time is the constant 1/2
  DiscreteMeasure late = fdd(simulate(eta_config(50, 2)), {2.0});
  REQUIRE(late.atoms.size() == 1);
  CHECK(late.atoms[0].point[0].scalar() == 0.5);
  CHECK(late.atoms[0].weight == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fdd(simulate(eta_config(50, 2)), {2.0}).total_mass() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fdd commutes with coordinate pushforwards") {
  ProcessEnsemble ens = simulate(eta_config(200, 14));
  DiscreteMeasure joint = fdd(ens, {0.25, 0.75});
  DiscreteMeasure first = pushforward(joint, [](const std::vector<StatePoint>& xs) {
    return std::vector<StatePoint>{xs[0]};
  });
  DiscreteMeasure direct = fdd(ens, {0.25});
  CHECK(first.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
  BoundedFunction id = BoundedFunction::coordinate(0, 2.0);
  CHECK(integral(first, id) == doctest::Approx(integral(direct, id)).epsilon(1e-15));
}

TEST_CASE("fdc test on shrinking constants") {
  std::vector<ProcessEnsemble> seq;
  for (int n = 1; n <= 5; ++n) {
    SamplerConfig c;
    c.sampler = "deterministic-shift";
    c.n = 3;
    c.seed = 1;
    c.shift_c = 1.0 / n;
    seq.push_back(simulate(c));
  }
  SamplerConfig zero;
  zero.sampler = "deterministic-shift";
  zero.n = 3;
  zero.seed = 1;
  zero.shift_c = 0.0;
  ProcessEnsemble limit = simulate(zero);

  FdcOptions opts;
  opts.tol = 0.21;
  opts.window = 1;
  ConvergenceReport rep = fdc_test(seq, limit, id_family(), {{0.5}, {0.5, 1.5}}, opts);
  CHECK(rep.pass);  // final gap 1/5 = 0.2

  opts.tol = 0.1;
  CHECK_FALSE(fdc_test(seq, limit, id_family(), {{0.5}}, opts).pass);

  // a sequence equal to its limit has zero gaps
  std::vector<ProcessEnsemble> constant(3, limit);
  opts.tol = 0.0;
  opts.window = 2;
  CHECK(fdc_test(constant, limit, id_family(), {{1.0}}, opts).pass);
}

TEST_CASE("eta is not stationary") {
  ProcessEnsemble ens = simulate(eta_config(20000, 21));
  FdcOptions opts;
  opts.tol = 0.05;
  StationarityReport rep = stationarity_test(ens, id_family(), {0.0}, {0.5}, opts);
  CHECK_FALSE(rep.pass);
  REQUIRE(!rep.rows.empty());
  // analytic oracle: E[eta_0] = 1/2, E[eta_{1/2}] = 5/8
  CHECK(rep.rows[0].base_value == doctest::Approx(0.5).epsilon(0.02));
  CHECK(rep.rows[0].shifted_value == doctest::Approx(0.625).epsilon(0.02));

  SamplerConfig shift;
  shift.sampler = "deterministic-shift";
  shift.n = 5;
  shift.seed = 3;
  shift.shift_c = 0.4;
  StationarityReport flat = stationarity_test(simulate(shift), id_family(), {0.0, 1.0}, {0.5, 2.0}, opts);
  CHECK(flat.pass);
}

TEST_CASE("rap shifts paths by uniform times") {
  SamplerConfig ramp;
  ramp.sampler = "ramp";
  ramp.n = 20000;
  ramp.seed = 4;
  ramp.t_max = 50.0;
  ProcessEnsemble advanced = rap(simulate(ramp), 2.0, 99);
  double mean = 0.0;
  for (const auto& p : advanced.paths) mean += path_eval(p, 0.0).scalar();
  mean /= advanced.size();
  CHECK(mean == doctest::Approx(1.0).epsilon(0.02));  // E[U(0,2)] = 1

  SamplerConfig shift;
  shift.sampler = "deterministic-shift";
  shift.n = 4;
  shift.seed = 5;
  shift.shift_c = 0.3;
  ProcessEnsemble constant = rap(simulate(shift), 10.0, 1);
  for (const auto& p : constant.paths) CHECK(path_eval(p, 1.0).scalar() == 0.3);

  // interval-horizon input is rejected
  SamplerConfig bad = shift;
  bad.horizon = Horizon::interval(0.0, 1.0);
  CHECK_THROWS_AS(rap(simulate(bad), 1.0, 1), ValidationError);
}

TEST_CASE("rap closed forms obey the asymptotic-stationarity bound") {
  for (double T : {10.0, 100.0, 1000.0}) {
    double gap = rap_ramp_as_gap(T, 0.0, 1.0, 1.0);
    CHECK(gap == doctest::Approx(0.5 / T).epsilon(1e-12));  // exact value 1/(2T)
    CHECK(gap <= 2.0 / T);
  }
  // eta rap concentrates near 1/2 for large T
  ProcessEnsemble eta_rap = rap(simulate(eta_config(5000, 6)), 50.0, 7);
  long at_half = 0;
  for (const auto& p : eta_rap.paths) at_half += (path_eval(p, 0.0).scalar() == 0.5);
  CHECK((double)at_half / eta_rap.size() > 0.95);  // P(tau < omega) <= 1/T
}

TEST_CASE("as_test accepts rap sequences of a bounded deterministic process") {
  SamplerConfig ramp;
  ramp.sampler = "ramp";
  ramp.n = 2000;
  ramp.seed = 8;
  ramp.t_max = 3000.0;
  ProcessEnsemble base = simulate(ramp);

  FunctionFamily clipped(
      {BoundedFunction::trunc_poly({0.0, 1.0}, 1.0)});  // f = x clipped to [-1, 1]
  std::vector<ProcessEnsemble> seq;
  std::vector<double> gaps;
  int k = 0;
  for (double T : {10.0, 100.0, 1000.0}) seq.push_back(rap(base, T, 100 + (k++)));
  FdcOptions opts;
  opts.tol = 0.05;
  opts.window = 1;
  ConvergenceReport rep = as_test(seq, clipped, {0.0}, {1.0}, opts);
  CHECK(rep.pass);
  // gaps shrink roughly like 1/T
  CHECK(rep.functions[0].gaps[0] > rep.functions[0].gaps[2]);
}

TEST_CASE("transform_ensemble composes a function with step paths") {
  SamplerConfig walk;
  walk.sampler = "random-walk";
  walk.n = 10;
  walk.seed = 12;
  walk.t_max = 2.0;
  ProcessEnsemble ens = simulate(walk);
  BoundedFunction f = BoundedFunction::trunc_poly({0.0, 1.0}, 0.5);
  ProcessEnsemble composed = transform_ensemble(ens, f);
  for (int i = 0; i < composed.size(); ++i) {
    for (double t : {0.0, 0.7, 1.9}) {
      double expect = f(path_eval(ens.paths[i], t));
      CHECK(path_eval(composed.paths[i], t).scalar() == expect);
    }
  }
}

TEST_CASE("replica of a step ensemble") {
  FunctionFamily fam({BoundedFunction::one(), BoundedFunction::coordinate(0)});
  std::vector<StatePoint> sample;
  for (int i = 0; i <= 20; ++i) sample.push_back(StatePoint(i / 20.0));
  ReplicationBase base = build_base(RegionSpec::interval(0.0, 1.0), fam, StatePoint(0.0), sample);

  std::vector<Path> fixed{Path(testutil::scalar_step(Horizon::half_line(), {0.0, 1.0}, {0.25, 0.75}))};
  SamplerConfig custom;
  custom.sampler = "custom-paths";
  custom.n = 1;
  custom.seed = 0;
  custom.custom = fixed;
  ProcessEnsemble rep = replica_process(base, simulate(custom), 0.05);
  const auto& p = std::get<StepPath>(rep.paths[0]);
  CHECK(p.values[0].coords == std::vector<double>{1.0, 0.25});
  CHECK(p.values[1].coords == std::vector<double>{1.0, 0.75});
}
