#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pathspace {

class FunctionFamily;

// A point of the state space: either a finite real vector or a label into a
// finite metric space given by a distance table.
struct StatePoint {
  std::vector<double> coords;
  int label = -1;

  StatePoint() = default;
  explicit StatePoint(double x) : coords{x} {}
  explicit StatePoint(std::vector<double> c) : coords(std::move(c)) {}
  static StatePoint labeled(int l) {
    StatePoint p;
    p.label = l;
    return p;
  }

  bool is_labeled() const { return label >= 0; }
  double scalar() const;
  void validate() const;

  friend bool operator==(const StatePoint& a, const StatePoint& b) {
    return a.label == b.label && a.coords == b.coords;
  }
};

// The pseudometric r used by moduli, band distances and tent functions.
struct MetricSpec {
  enum class Kind { Euclidean, TruncatedEuclidean, Table, RhoFamily };

  Kind kind = Kind::Euclidean;
  double cap = 1.0;
  std::vector<std::vector<double>> table;
  std::shared_ptr<const FunctionFamily> family;

  static MetricSpec euclidean() { return {}; }
  static MetricSpec truncated(double cap);
  static MetricSpec from_table(std::vector<std::vector<double>> t);
  static MetricSpec rho_of(std::shared_ptr<const FunctionFamily> fam);

  double operator()(const StatePoint& x, const StatePoint& y) const;
};

double metric_distance(const MetricSpec& m, const StatePoint& x, const StatePoint& y);

// Decidable region of the state space; stands in for the Borel set E0 and for
// the closed/open sets fed to the Portmanteau and tightness checks.
struct RegionSpec {
  enum class Kind { Box, Ball, Labels, Sample };

  Kind kind = Kind::Box;
  std::vector<double> lo, hi;
  bool open_bounds = false;
  StatePoint center;
  double radius = 0.0;
  MetricSpec ball_metric;
  std::vector<int> labels;
  std::vector<StatePoint> points;
  std::string description;

  static RegionSpec box(std::vector<double> lo, std::vector<double> hi, bool open = false);
  static RegionSpec interval(double lo, double hi, bool open = false);
  static RegionSpec ball(StatePoint center, double radius, MetricSpec m = {});
  static RegionSpec label_set(std::vector<int> labels);
  static RegionSpec sample(std::vector<StatePoint> pts);

  bool contains(const StatePoint& p) const;
};

// Errors raised on violated preconditions; messages name the offending field.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

[[noreturn]] inline void fail(const std::string& msg) { throw ValidationError(msg); }

inline void require(bool ok, const std::string& msg) {
  if (!ok) fail(msg);
}

}  // namespace pathspace
