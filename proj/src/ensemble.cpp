#include "ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "rng.hpp"

namespace pathspace {

namespace {

void parallel_for(size_t count, int workers, const std::function<void(size_t)>& body) {
  if (workers <= 1 || count < 2) {
    for (size_t i = 0; i < count; ++i) body(i);
    return;
  }
  const size_t nw = std::min<size_t>(workers, count);
  std::vector<std::thread> pool;
  pool.reserve(nw);
  for (size_t w = 0; w < nw; ++w) {
    pool.emplace_back([&, w]() {
      for (size_t i = w; i < count; i += nw) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

Path sample_eta(SplitRng& rng) {
  double omega = rng.next_open_unit();
  // ramp 1 - omega + t on [0, omega), then 1/2 forever
  return PiecewiseLinearPath(Horizon::half_line(), {0.0, omega},
                             {StatePoint(1.0 - omega), StatePoint(1.0)},
                             {StatePoint(1.0 - omega), StatePoint(0.5)});
}

Path sample_ramp(const SamplerConfig& c) {
  double end = c.horizon.halfline ? c.t_max : c.horizon.b;
  return PiecewiseLinearPath(c.horizon, {0.0, end}, {StatePoint(0.0), StatePoint(end)},
                             {StatePoint(0.0), StatePoint(end)});
}

Path sample_random_walk(const SamplerConfig& c, SplitRng& rng) {
  double end = c.horizon.halfline ? c.t_max : c.horizon.b;
  std::vector<double> times{0.0};
  std::vector<StatePoint> values{StatePoint(0.0)};
  double t = 0.0, v = 0.0;
  while (true) {
    t += rng.next_exponential(c.walk_rate);
    if (t >= end) break;
    v += c.walk_sigma * rng.next_normal();
    times.push_back(t);
    values.push_back(StatePoint(v));
  }
  return StepPath(c.horizon, std::move(times), std::move(values));
}

Path sample_poisson_jump(const SamplerConfig& c, SplitRng& rng) {
  double end = c.horizon.halfline ? c.t_max : c.horizon.b;
  std::vector<double> times{0.0};
  std::vector<StatePoint> values{StatePoint(0.0)};
  double t = 0.0, v = 0.0;
  while (true) {
    t += rng.next_exponential(c.jump_rate);
    if (t >= end) break;
    v += c.jump_scale * (rng.next_unit() < 0.5 ? -1.0 : 1.0);
    times.push_back(t);
    values.push_back(StatePoint(v));
  }
  return StepPath(c.horizon, std::move(times), std::move(values));
}

}  // namespace

TimeSchedule::TimeSchedule(std::vector<double> pts) : points(std::move(pts)) {
  require(!points.empty(), "TimeSchedule: must be non-empty");
  for (size_t i = 0; i < points.size(); ++i) {
    require(points[i] > 0, "TimeSchedule: entries must be positive");
    if (i) require(points[i] > points[i - 1], "TimeSchedule: entries must be strictly increasing");
  }
}

ProcessEnsemble simulate(const SamplerConfig& config, int workers) {
  require(config.n >= 1, "SamplerConfig.n: must be at least 1");
  ProcessEnsemble ens;
  ens.config = config;
  ens.paths.resize(config.n);

  if (config.sampler == "custom-paths") {
    require((int)config.custom.size() == config.n, "SamplerConfig.custom: path count must equal n");
    ens.paths = config.custom;
    return ens;
  }

  parallel_for(config.n, workers, [&](size_t i) {
    SplitRng rng(config.seed, i);
    if (config.sampler == "eta") {
      ens.paths[i] = sample_eta(rng);
    } else if (config.sampler == "deterministic-shift") {
      ens.paths[i] = StepPath::constant(config.horizon, StatePoint(config.shift_c));
    } else if (config.sampler == "ramp") {
      ens.paths[i] = sample_ramp(config);
    } else if (config.sampler == "random-walk") {
      ens.paths[i] = sample_random_walk(config, rng);
    } else if (config.sampler == "poisson-jump") {
      ens.paths[i] = sample_poisson_jump(config, rng);
    } else {
      fail("SamplerConfig.sampler: unknown sampler '" + config.sampler + "'");
    }
  });
  return ens;
}

// --- band containment ----------------------------------------------------------

namespace {

double scalar_at(const StatePoint& p) {
  require(!p.is_labeled() && p.coords.size() == 1, "band diagnostics: need scalar paths");
  return p.coords[0];
}

}  // namespace

bool path_stays_in_band(const Path& p, double a, double b, double T) {
  if (const auto* sp = std::get_if<StepPath>(&p)) {
    for (size_t i = 0; i < sp->times.size(); ++i) {
      if (sp->times[i] > T) break;
      double v = scalar_at(sp->values[i]);
      if (v < a || v > b) return false;
    }
    return true;
  }
  const auto& pl = std::get<PiecewiseLinearPath>(p);
  for (size_t i = 0; i < pl.knots.size(); ++i) {
    if (pl.knots[i] > T) break;
    double lo, hi;
    if (i + 1 == pl.knots.size() || pl.knots[i + 1] > T) {
      // segment truncated at T: both ends attained
      double p0 = scalar_at(pl.right[i]);
      double pT = scalar_at(pl.eval(T));
      lo = std::min(p0, pT);
      hi = std::max(p0, pT);
    } else {
      // full segment: right value attained, left limit approached
      double p0 = scalar_at(pl.right[i]);
      double q = scalar_at(pl.left[i + 1]);
      lo = std::min(p0, q);
      hi = std::max(p0, q);
    }
    if (lo < a || hi > b) return false;
  }
  return true;
}

Estimate band_prob(const ProcessEnsemble& ens, double a, double b, double T, int workers) {
  require(b > a, "band_prob: empty band");
  require(T > 0, "band_prob.T: must be positive");
  std::vector<char> inside(ens.paths.size());
  parallel_for(ens.paths.size(), workers, [&](size_t i) { inside[i] = path_stays_in_band(ens.paths[i], a, b, T); });
  long hits = 0;
  for (char c : inside) hits += c;
  Estimate e;
  e.n = ens.size();
  e.value = (double)hits / e.n;
  e.stderr_ = std::sqrt(e.value * (1.0 - e.value) / e.n);
  return e;
}

// --- MPCC ------------------------------------------------------------------------

namespace {

bool region_envelope_contains(const RegionSpec& region, double eps, const StatePoint& x, const MetricSpec& metric) {
  switch (region.kind) {
    case RegionSpec::Kind::Sample:
      return epsilon_envelope_contains(region.points, eps, x, metric);
    case RegionSpec::Kind::Box: {
      require(metric.kind == MetricSpec::Kind::Euclidean || metric.kind == MetricSpec::Kind::TruncatedEuclidean,
              "mpcc_check: box regions need a euclidean-type metric");
      require(!x.is_labeled() && x.coords.size() == region.lo.size(), "mpcc_check: point/box dimension mismatch");
      double s = 0.0;
      for (size_t i = 0; i < region.lo.size(); ++i) {
        double d = std::max({0.0, region.lo[i] - x.coords[i], x.coords[i] - region.hi[i]});
        s += d * d;
      }
      return std::sqrt(s) < eps;
    }
    default:
      fail("mpcc_check.region: must be a finite sample or a box");
  }
}

}  // namespace

MpccResult mpcc_check(const std::vector<ProcessEnsemble>& family, double eps, double t, const RegionSpec& region,
                      const MetricSpec& metric) {
  require(!family.empty(), "mpcc_check: family must be non-empty");
  require(eps > 0, "mpcc_check.eps: must be positive");
  MpccResult res;
  res.inf_probability = 1.0;
  for (const auto& ens : family) {
    long hits = 0;
    for (const auto& p : ens.paths) hits += region_envelope_contains(region, eps, path_eval(p, t), metric);
    double prob = (double)hits / ens.size();
    res.per_ensemble.push_back(prob);
    res.inf_probability = std::min(res.inf_probability, prob);
  }
  res.margin = res.inf_probability - (1.0 - eps);
  res.pass = res.margin >= 0.0;
  return res;
}

// --- LMTC ------------------------------------------------------------------------

namespace {

// P(eta_tau in [a,b]) for omega ~ U(0,1): flat part 1/2 after omega plus the
// ramp 1 - omega + tau before it
double eta_band_probability(double tau, double a, double b) {
  double flat = (a <= 0.5 && 0.5 <= b) ? std::min(tau, 1.0) : 0.0;
  double ramp = 0.0;
  if (tau < 1.0) {
    double lo = std::max(tau, 1.0 + tau - b);
    double hi = std::min(1.0, 1.0 + tau - a);
    ramp = std::max(0.0, hi - lo);
  }
  return flat + ramp;
}

// in-band tau-intervals of a scalar path over [0, T)
std::vector<std::pair<double, double>> band_occupation_intervals(const Path& p, double a, double b, double T) {
  std::vector<std::pair<double, double>> out;
  auto push = [&](double l, double r) {
    l = std::max(l, 0.0);
    r = std::min(r, T);
    if (r <= l) return;
    if (!out.empty() && out.back().second >= l)
      out.back().second = std::max(out.back().second, r);
    else
      out.emplace_back(l, r);
  };
  if (const auto* sp = std::get_if<StepPath>(&p)) {
    for (size_t i = 0; i < sp->times.size(); ++i) {
      if (sp->times[i] >= T) break;
      double v = scalar_at(sp->values[i]);
      if (v >= a && v <= b) {
        double end = (i + 1 < sp->times.size()) ? sp->times[i + 1] : T;
        push(sp->times[i], end);
      }
    }
    return out;
  }
  const auto& pl = std::get<PiecewiseLinearPath>(p);
  for (size_t i = 0; i < pl.knots.size(); ++i) {
    if (pl.knots[i] >= T) break;
    double t0 = pl.knots[i];
    double t1 = (i + 1 < pl.knots.size()) ? pl.knots[i + 1] : T;
    double v0 = scalar_at(pl.right[i]);
    double v1 = (i + 1 < pl.knots.size()) ? scalar_at(pl.left[i + 1]) : v0;
    if (v1 == v0) {
      if (v0 >= a && v0 <= b) push(t0, t1);
      continue;
    }
    // v(t) = v0 + (t - t0) * slope; solve a <= v(t) <= b
    double slope = (v1 - v0) / (t1 - t0);
    double ta = t0 + (a - v0) / slope;
    double tb = t0 + (b - v0) / slope;
    double lo = std::max(t0, std::min(ta, tb));
    double hi = std::min(t1, std::max(ta, tb));
    if (hi > lo) push(lo, hi);
  }
  return out;
}

long grid_points_inside(double l, double r, double h, long G) {
  // midpoints tau_g = (g + 0.5) h, count those with l <= tau_g < r
  long g_lo = (long)std::ceil(l / h - 0.5);
  while ((g_lo + 0.5) * h < l) ++g_lo;
  while (g_lo > 0 && (g_lo - 0.5) * h >= l) --g_lo;
  long g_hi = (long)std::floor(r / h - 0.5);
  while ((g_hi + 0.5) * h >= r) --g_hi;
  while (g_hi + 1 < G && (g_hi + 1.5) * h < r) ++g_hi;
  g_lo = std::max(g_lo, 0L);
  g_hi = std::min(g_hi, G - 1);
  return std::max(0L, g_hi - g_lo + 1);
}

}  // namespace

LmtcProfile lmtc_eta_closed_form(const TimeSchedule& schedule, double a, double b) {
  require(a < b, "lmtc.band: empty band");
  LmtcProfile prof;
  prof.closed_form = true;
  prof.schedule = schedule.points;
  for (double T : schedule.points) {
    // P(tau) is piecewise linear with kinks at {a, b, 1}
    std::vector<double> brk{0.0, std::min(a, T), std::min(b, T), std::min(1.0, T), T};
    std::sort(brk.begin(), brk.end());
    brk.erase(std::unique(brk.begin(), brk.end()), brk.end());
    double integral = 0.0;
    for (size_t i = 0; i + 1 < brk.size(); ++i) {
      double l = brk[i], r = brk[i + 1];
      integral += 0.5 * (eta_band_probability(l, a, b) + eta_band_probability(r, a, b)) * (r - l);
    }
    prof.values.push_back(integral / T);
    prof.stderrs.push_back(0.0);
  }
  return prof;
}

LmtcProfile lmtcmc_impl(const ProcessEnsemble& ens, const TimeSchedule& schedule, double a, double b,
                        double quad_step, int workers) {
  require(quad_step > 0, "lmtc.quad_step: must be positive");
  LmtcProfile prof;
  prof.closed_form = false;
  prof.schedule = schedule.points;
  const size_t n = ens.paths.size();
  for (double T : schedule.points) {
    const long G = std::max(1L, (long)std::llround(T / quad_step));
    const double h = T / (double)G;
    std::vector<double> per_path(n);
    parallel_for(n, workers, [&](size_t i) {
      long count = 0;
      for (auto [l, r] : band_occupation_intervals(ens.paths[i], a, b, T)) count += grid_points_inside(l, r, h, G);
      per_path[i] = (double)count / (double)G;
    });
    double mean = 0.0;
    for (double v : per_path) mean += v;
    mean /= (double)n;
    double var = 0.0;
    for (double v : per_path) var += (v - mean) * (v - mean);
    var = n > 1 ? var / (double)(n - 1) : 0.0;
    prof.values.push_back(mean);
    prof.stderrs.push_back(std::sqrt(var / (double)n));
  }
  return prof;
}

LmtcProfile lmtc_mc(const ProcessEnsemble& ens, const TimeSchedule& schedule, double a, double b, double quad_step,
                    int workers) {
  require(a < b, "lmtc.band: empty band");
  return lmtcmc_impl(ens, schedule, a, b, quad_step, workers);
}

// --- MCC ---------------------------------------------------------------------------

MccResult mcc_probe(const std::vector<ProcessEnsemble>& family, const MetricSpec& metric, double eps, double T,
                    const std::vector<double>& delta_grid, int workers) {
  require(!family.empty(), "mcc_probe: family must be non-empty");
  require(!delta_grid.empty(), "mcc_probe.delta_grid: must be non-empty");
  for (size_t i = 0; i < delta_grid.size(); ++i) {
    require(delta_grid[i] > 0, "mcc_probe.delta_grid: entries must be positive");
    if (i) require(delta_grid[i] > delta_grid[i - 1], "mcc_probe.delta_grid: must be increasing");
  }
  MccResult res;
  res.grid = delta_grid;
  for (double delta : delta_grid) {
    double worst = 0.0;
    for (const auto& ens : family) {
      std::vector<char> exceed(ens.paths.size());
      parallel_for(ens.paths.size(), workers, [&](size_t i) {
        const auto* sp = std::get_if<StepPath>(&ens.paths[i]);
        require(sp != nullptr, "mcc_probe: requires step-path ensembles");
        exceed[i] = modulus_w_prime(*sp, metric, delta, T) >= eps;
      });
      long count = 0;
      for (char c : exceed) count += c;
      worst = std::max(worst, (double)count / ens.size());
    }
    res.worst_exceedance.push_back(worst);
    if (!res.certified_delta && worst <= eps) res.certified_delta = delta;
  }
  return res;
}

ProcessEnsemble transform_ensemble(const ProcessEnsemble& ens, const BoundedFunction& f) {
  ProcessEnsemble out;
  out.config = ens.config;
  out.config.sampler = ens.config.sampler + "|transformed";
  out.paths.reserve(ens.paths.size());
  for (const auto& p : ens.paths) {
    const auto* sp = std::get_if<StepPath>(&p);
    require(sp != nullptr, "transform_ensemble: requires step-path ensembles");
    std::vector<StatePoint> values;
    values.reserve(sp->values.size());
    for (const auto& v : sp->values) values.push_back(StatePoint(f(v)));
    out.paths.push_back(StepPath(sp->horizon, sp->times, std::move(values)));
  }
  return out;
}

// --- finite-dimensional machinery ---------------------------------------------------

DiscreteMeasure fdd(const ProcessEnsemble& ens, const std::vector<double>& times) {
  require(!times.empty(), "fdd.times: must be non-empty");
  std::vector<DiscreteMeasure::Atom> atoms;
  atoms.reserve(ens.paths.size());
  const double w = ens.weight();
  for (const auto& p : ens.paths) {
    DiscreteMeasure::Atom a;
    a.weight = w;
    for (double t : times) a.point.push_back(path_eval(p, t));
    atoms.push_back(std::move(a));
  }
  return DiscreteMeasure(std::move(atoms), (int)times.size());
}

namespace {

std::vector<std::pair<std::string, TupleFunction>> budgeted_test_family(const FunctionFamily& D, int arity,
                                                                        const FdcOptions& opts) {
  FunctionFamily trimmed = D;
  if ((int)trimmed.members.size() > opts.max_family)
    trimmed.members.resize(opts.max_family);
  auto tuples = product_family(trimmed, arity);
  auto closed = multiplicative_closure(tuples, opts.max_factors);
  std::vector<std::pair<std::string, TupleFunction>> out;
  for (size_t i = 0; i < closed.size(); ++i) out.emplace_back("f" + std::to_string(i), closed[i]);
  return out;
}

}  // namespace

ConvergenceReport fdc_test(const std::vector<ProcessEnsemble>& seq, const ProcessEnsemble& limit,
                           const FunctionFamily& D, const std::vector<std::vector<double>>& t0_list,
                           const FdcOptions& opts) {
  require(!seq.empty(), "fdc_test: sequence must be non-empty");
  require(!t0_list.empty(), "fdc_test.t0_list: must be non-empty");
  require(opts.window >= 1 && opts.window <= (int)seq.size(), "fdc_test.window: must be within the sequence length");

  ConvergenceReport report;
  report.window = opts.window;
  report.tol = opts.tol;
  report.pass = true;
  for (const auto& t0 : t0_list) {
    auto family = budgeted_test_family(D, (int)t0.size(), opts);
    DiscreteMeasure limit_fdd = fdd(limit, t0);
    std::vector<DiscreteMeasure> seq_fdd;
    seq_fdd.reserve(seq.size());
    for (const auto& ens : seq) seq_fdd.push_back(fdd(ens, t0));
    for (const auto& [name, tf] : family) {
      ConvergenceReport::PerFunction pf;
      pf.name = "T0[" + std::to_string(t0.size()) + "]:" + name;
      double limit_value = integral(limit_fdd, tf);
      for (const auto& mu : seq_fdd) pf.gaps.push_back(std::abs(integral(mu, tf) - limit_value));
      pf.final_gap = *std::max_element(pf.gaps.end() - opts.window, pf.gaps.end());
      report.pass = report.pass && pf.final_gap <= opts.tol;
      report.functions.push_back(std::move(pf));
    }
  }
  return report;
}

StationarityReport stationarity_test(const ProcessEnsemble& ens, const FunctionFamily& D,
                                     const std::vector<double>& t0, const std::vector<double>& c_list,
                                     const FdcOptions& opts) {
  require(!c_list.empty(), "stationarity_test.c_list: must be non-empty");
  StationarityReport report;
  report.tol = opts.tol;
  report.pass = true;
  auto family = budgeted_test_family(D, (int)t0.size(), opts);
  DiscreteMeasure base = fdd(ens, t0);
  for (double c : c_list) {
    std::vector<double> shifted_times = t0;
    for (double& t : shifted_times) t += c;
    DiscreteMeasure shifted = fdd(ens, shifted_times);
    for (const auto& [name, tf] : family) {
      StationarityReport::Row row;
      row.function = name;
      row.shift = c;
      row.base_value = integral(base, tf);
      row.shifted_value = integral(shifted, tf);
      row.gap = std::abs(row.base_value - row.shifted_value);
      report.pass = report.pass && row.gap <= opts.tol;
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

ConvergenceReport as_test(const std::vector<ProcessEnsemble>& seq, const FunctionFamily& D,
                          const std::vector<double>& t0, const std::vector<double>& c_list, const FdcOptions& opts) {
  require(!seq.empty(), "as_test: sequence must be non-empty");
  require(opts.window >= 1 && opts.window <= (int)seq.size(), "as_test.window: must be within the sequence length");
  ConvergenceReport report;
  report.window = opts.window;
  report.tol = opts.tol;
  report.pass = true;
  auto family = budgeted_test_family(D, (int)t0.size(), opts);
  for (double c : c_list) {
    std::vector<double> shifted_times = t0;
    for (double& t : shifted_times) t += c;
    for (const auto& [name, tf] : family) {
      ConvergenceReport::PerFunction pf;
      pf.name = name + "@c=" + std::to_string(c);
      for (const auto& ens : seq) {
        double g = std::abs(integral(fdd(ens, t0), tf) - integral(fdd(ens, shifted_times), tf));
        pf.gaps.push_back(g);
      }
      pf.final_gap = *std::max_element(pf.gaps.end() - opts.window, pf.gaps.end());
      report.pass = report.pass && pf.final_gap <= opts.tol;
      report.functions.push_back(std::move(pf));
    }
  }
  return report;
}

// --- randomly advanced processes --------------------------------------------------

namespace {

Path advance_path(const Path& p, double tau) {
  if (const auto* sp = std::get_if<StepPath>(&p)) {
    std::vector<double> times{0.0};
    std::vector<StatePoint> values{sp->eval(tau)};
    for (size_t i = 0; i < sp->times.size(); ++i) {
      if (sp->times[i] > tau) {
        times.push_back(sp->times[i] - tau);
        values.push_back(sp->values[i]);
      }
    }
    return StepPath(sp->horizon, std::move(times), std::move(values));
  }
  const auto& pl = std::get<PiecewiseLinearPath>(p);
  std::vector<double> knots{0.0};
  StatePoint start = pl.eval(tau);
  std::vector<StatePoint> left{start}, right{start};
  for (size_t i = 0; i < pl.knots.size(); ++i) {
    if (pl.knots[i] > tau) {
      knots.push_back(pl.knots[i] - tau);
      left.push_back(pl.left[i]);
      right.push_back(pl.right[i]);
    }
  }
  return PiecewiseLinearPath(pl.horizon, std::move(knots), std::move(left), std::move(right));
}

}  // namespace

ProcessEnsemble rap(const ProcessEnsemble& ens, double T, uint64_t seed) {
  require(T > 0, "rap.T: must be positive");
  require(ens.config.horizon.halfline, "rap: requires half-line paths");
  ProcessEnsemble out;
  out.config = ens.config;
  out.config.sampler = ens.config.sampler + "|rap";
  out.config.seed = seed;
  out.paths.reserve(ens.paths.size());
  for (size_t i = 0; i < ens.paths.size(); ++i) {
    SplitRng rng(seed, i);
    double tau = T * rng.next_unit();
    out.paths.push_back(advance_path(ens.paths[i], tau));
  }
  return out;
}

double rap_ramp_expectation(double T, double t, double clip_bound) {
  require(T > 0, "rap.T: must be positive");
  require(clip_bound > 0, "rap.clip_bound: must be positive");
  // (1/T) int_0^T min(tau + t, B) dtau, ramp values nonnegative
  const double B = clip_bound;
  if (t >= B) return B;
  double s = std::min(B - t, T);  // clip kicks in after s
  double integral = s * t + 0.5 * s * s + (T - s) * B;
  return integral / T;
}

double rap_ramp_as_gap(double T, double t, double c, double clip_bound) {
  return std::abs(rap_ramp_expectation(T, t, clip_bound) - rap_ramp_expectation(T, t + c, clip_bound));
}

ProcessEnsemble replica_process(const ReplicationBase& base, const ProcessEnsemble& ens, double membership_tol) {
  ProcessEnsemble out;
  out.config = ens.config;
  out.config.sampler = ens.config.sampler + "|replica";
  out.paths.reserve(ens.paths.size());
  for (const auto& p : ens.paths) {
    const auto* sp = std::get_if<StepPath>(&p);
    require(sp != nullptr, "replica_process: requires step-path ensembles");
    out.paths.push_back(replica_step_path(base, *sp, membership_tol));
  }
  return out;
}

}  // namespace pathspace
