#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "family.hpp"
#include "measure.hpp"
#include "path.hpp"
#include "replication.hpp"
#include "skorokhod.hpp"

namespace pathspace {

struct SamplerConfig {
  std::string sampler;  // eta | deterministic-shift | ramp | random-walk | poisson-jump | custom-paths
  int n = 1;
  uint64_t seed = 0;
  Horizon horizon = Horizon::half_line();
  double t_max = 10.0;  // materialization window for half-line samplers
  double shift_c = 0.0;
  double walk_sigma = 1.0;
  double walk_rate = 1.0;
  double jump_rate = 1.0;
  double jump_scale = 1.0;
  std::vector<Path> custom;
};

// Seeded collection of sampled paths standing in for a process law; weights
// are uniform 1/N and per-path streams are derived by counter so parallel
// generation is schedule-independent.
struct ProcessEnsemble {
  SamplerConfig config;
  std::vector<Path> paths;

  int size() const { return (int)paths.size(); }
  double weight() const { return 1.0 / (double)paths.size(); }
};

struct TimeSchedule {
  std::vector<double> points;
  explicit TimeSchedule(std::vector<double> pts);
};

ProcessEnsemble simulate(const SamplerConfig& config, int workers = 1);

// --- containment / tightness diagnostics --------------------------------------

struct Estimate {
  double value = 0.0;
  double stderr_ = 0.0;
  int n = 0;
};

// whether the scalar path stays inside [a, b] for every t in [0, T]; exact
// per segment (step values, or endpoint/limit checks on linear pieces)
bool path_stays_in_band(const Path& p, double a, double b, double T);

// fraction of paths confined to the band on [0, T]
Estimate band_prob(const ProcessEnsemble& ens, double a, double b, double T, int workers = 1);

struct MpccResult {
  double inf_probability = 1.0;
  double margin = 0.0;  // inf_probability - (1 - eps)
  bool pass = false;
  std::vector<double> per_ensemble;
};

// inf_i P(X_t^i in A^eps) >= 1 - eps with A a finite sample or a box
MpccResult mpcc_check(const std::vector<ProcessEnsemble>& family, double eps, double t, const RegionSpec& region,
                      const MetricSpec& metric);

struct LmtcProfile {
  std::vector<double> schedule;
  std::vector<double> values;    // (1/T) int_0^T P(X_tau in [a,b]) dtau per T
  std::vector<double> stderrs;   // zero in closed form
  bool closed_form = false;
};

// exact profile for the eta process (uniform ramp-then-flat construction)
LmtcProfile lmtc_eta_closed_form(const TimeSchedule& schedule, double a, double b);
// Monte-Carlo profile: midpoint quadrature of the per-time containment
// indicator, counted per path in closed form over its in-band intervals
LmtcProfile lmtc_mc(const ProcessEnsemble& ens, const TimeSchedule& schedule, double a, double b, double quad_step,
                    int workers = 1);

struct MccResult {
  std::optional<double> certified_delta;
  std::vector<double> grid;
  std::vector<double> worst_exceedance;  // sup_i P(w' >= eps) per grid delta
};

MccResult mcc_probe(const std::vector<ProcessEnsemble>& family, const MetricSpec& metric, double eps, double T,
                    const std::vector<double>& delta_grid, int workers = 1);

// f o X for every path (step ensembles), used by the FMCC-style probes
ProcessEnsemble transform_ensemble(const ProcessEnsemble& ens, const BoundedFunction& f);

// --- finite-dimensional machinery ---------------------------------------------

// empirical law of (X_{t_1}, ..., X_{t_d}) with weight 1/N per path
DiscreteMeasure fdd(const ProcessEnsemble& ens, const std::vector<double>& times);

struct FdcOptions {
  int max_factors = 2;  // mc budget over the tuple family
  int max_family = 4;   // test functions drawn from D
  double tol = 1e-3;
  int window = 1;
};

// compares E^n[f o X^n_{T0}] against the limit ensemble over mc[Pi^{T0}(D)]
ConvergenceReport fdc_test(const std::vector<ProcessEnsemble>& seq, const ProcessEnsemble& limit,
                           const FunctionFamily& D, const std::vector<std::vector<double>>& t0_list,
                           const FdcOptions& opts);

struct StationarityReport {
  struct Row {
    std::string function;
    double shift = 0.0;
    double base_value = 0.0;
    double shifted_value = 0.0;
    double gap = 0.0;
  };
  std::vector<Row> rows;
  double tol = 0.0;
  bool pass = false;
};

StationarityReport stationarity_test(const ProcessEnsemble& ens, const FunctionFamily& D,
                                     const std::vector<double>& t0, const std::vector<double>& c_list,
                                     const FdcOptions& opts);

// asymptotic-stationarity check: the shift gaps along the sequence must fall
// below tol on the trailing window
ConvergenceReport as_test(const std::vector<ProcessEnsemble>& seq, const FunctionFamily& D,
                          const std::vector<double>& t0, const std::vector<double>& c_list, const FdcOptions& opts);

// --- randomly advanced processes ----------------------------------------------

// X^T(tau, omega)(t) = X_{tau + t}(omega) with tau uniform on [0, T]
ProcessEnsemble rap(const ProcessEnsemble& ens, double T, uint64_t seed);

// closed forms for the deterministic ramp x(s) = s under f = clip to [-b, b]:
// E^T[f(X^T_t)] = (1/T) int_0^T f(tau + t) dtau
double rap_ramp_expectation(double T, double t, double clip_bound);
double rap_ramp_as_gap(double T, double t, double c, double clip_bound);

// replica of a step-path ensemble (pointwise, anchor fallback off the cloud)
ProcessEnsemble replica_process(const ReplicationBase& base, const ProcessEnsemble& ens, double membership_tol);

}  // namespace pathspace
