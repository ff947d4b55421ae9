#pragma once

#include <variant>
#include <vector>

#include "state.hpp"

namespace pathspace {

struct Horizon {
  bool halfline = true;
  double a = 0.0;
  double b = 0.0;

  static Horizon half_line() { return {true, 0.0, 0.0}; }
  static Horizon interval(double a, double b) {
    require(b > a, "Horizon.b: must exceed a");
    return {false, a, b};
  }

  double start() const { return a; }
  bool admits(double t) const { return halfline ? t >= a : (t >= a && t <= b); }
  friend bool operator==(const Horizon& x, const Horizon& y) {
    return x.halfline == y.halfline && x.a == y.a && (x.halfline || x.b == y.b);
  }
};

// Finite cadlag step path: value values[i] on [times[i], times[i+1]), the last
// value held to the end of the horizon.
struct StepPath {
  Horizon horizon;
  std::vector<double> times;
  std::vector<StatePoint> values;

  StepPath() = default;
  StepPath(Horizon h, std::vector<double> t, std::vector<StatePoint> v);

  size_t segments() const { return times.size(); }
  const StatePoint& eval(double t) const;
  const StatePoint& left_limit(double t) const;

  static StepPath constant(Horizon h, StatePoint v) { return StepPath(h, {h.start()}, {std::move(v)}); }
  // scalar indicator c0 before t1, c1 from t1 on
  static StepPath indicator(double t1, double c0 = 0.0, double c1 = 1.0) {
    return StepPath(Horizon::half_line(), {0.0, t1}, {StatePoint(c0), StatePoint(c1)});
  }
};

// Piecewise-linear cadlag path for euclidean states: linear from right[i] at
// knots[i] to left[i+1] at knots[i+1]; jumps where left[i] != right[i];
// constant right.back() after the last knot.
struct PiecewiseLinearPath {
  Horizon horizon;
  std::vector<double> knots;
  std::vector<StatePoint> left;
  std::vector<StatePoint> right;

  PiecewiseLinearPath() = default;
  PiecewiseLinearPath(Horizon h, std::vector<double> k, std::vector<StatePoint> l, std::vector<StatePoint> r);

  StatePoint eval(double t) const;
  StatePoint left_limit(double t) const;
};

using Path = std::variant<StepPath, PiecewiseLinearPath>;

const Horizon& path_horizon(const Path& p);
StatePoint path_eval(const Path& p, double t);
StatePoint path_left_limit(const Path& p, double t);
std::vector<double> jump_times(const Path& p, const MetricSpec& metric, double tol = 1e-12);

// Strictly increasing piecewise-linear self-map of the horizon. Interval case
// fixes both endpoints; half-line case extends beyond the last knot with the
// final segment slope.
struct TimeChange {
  Horizon horizon;
  std::vector<double> knots;
  std::vector<double> images;

  TimeChange() = default;
  TimeChange(Horizon h, std::vector<double> k, std::vector<double> im);

  static TimeChange identity(Horizon h) { return TimeChange(h, {h.start()}, {h.start()}); }

  double operator()(double t) const;
  double inverse_at(double s) const;
  TimeChange inverse() const;
};

// |||lambda||| = sup_{t>s} |ln((lambda(t)-lambda(s))/(t-s))|; exact as the max
// of |ln slope| over segments since chord slopes are convex combinations.
double time_change_norm(const TimeChange& tc);

TimeChange compose(const TimeChange& outer, const TimeChange& inner);  // t -> outer(inner(t))

// x o lambda: breakpoints move to inverse images, values are preserved.
StepPath compose_time_change(const StepPath& x, const TimeChange& tc);

// Restriction of a half-line path to [0, u] held constant at x(u) on (u, u+1].
StepPath restrict_extend(const StepPath& x, double u);

}  // namespace pathspace
