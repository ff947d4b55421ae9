#pragma once

#include <optional>

#include "path.hpp"

namespace pathspace {

// Search control for the infimum over time changes.
struct SkoOptions {
  int matching_depth = 8;  // max matched jumps per side
  int refine_grid = 0;     // knot-perturbation grid per knot
  double tol = 1e-9;       // reporting tolerance
};

struct SkoResult {
  double value = 0.0;  // upper bound on the distance
  TimeChange witness;
  std::optional<double> certified_lower;
  long candidates_evaluated = 0;
};

// sup_{t in [a,b]} 1 ^ r(x(t), y(t)); exact on merged breakpoints for step
// paths, endpoint evaluation per merged segment for piecewise-linear ones.
double sup_band_dist(const Path& x, const Path& y, double a, double b, const MetricSpec& metric);

// r-modulus of continuity w'_{r,delta,T}: infimum over partitions
// 0 = t_0 < ... < T < t_n with min gap > delta of the largest within-interval
// oscillation. Exact for step paths via DP over jump-time boundaries.
double modulus_w_prime(const StepPath& x, const MetricSpec& metric, double delta, double T);

// Candidate time changes: identity, every order-preserving partial matching
// between the two jump sets (both orientations), optional grid perturbations.
std::vector<TimeChange> candidate_time_changes(const StepPath& x, const StepPath& y, const MetricSpec& metric,
                                               const SkoOptions& opts);

// Skorokhod J1 distance (interval or half-line per the paths' horizon):
// min over candidates of |||lambda||| v dist(x o lambda, y), where dist is the
// in-band sup (interval) or int_0^inf e^{-u} r_[0,u](x o lambda, y) du in
// closed form (half-line).
SkoResult sko_dist(const StepPath& x, const StepPath& y, const MetricSpec& metric, const SkoOptions& opts = {});

}  // namespace pathspace
