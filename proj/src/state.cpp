#include "state.hpp"

#include <cmath>

namespace pathspace {

double StatePoint::scalar() const {
  require(!is_labeled() && coords.size() == 1, "StatePoint.coords: expected a 1-d point");
  return coords[0];
}

void StatePoint::validate() const {
  if (is_labeled()) {
    require(coords.empty(), "StatePoint: labeled point must not carry coords");
    return;
  }
  for (double c : coords)
    require(std::isfinite(c), "StatePoint.coords: entries must be finite");
}

MetricSpec MetricSpec::truncated(double cap) {
  require(cap > 0, "MetricSpec.cap: must be positive");
  MetricSpec m;
  m.kind = Kind::TruncatedEuclidean;
  m.cap = cap;
  return m;
}

MetricSpec MetricSpec::from_table(std::vector<std::vector<double>> t) {
  const size_t n = t.size();
  for (size_t i = 0; i < n; ++i) {
    require(t[i].size() == n, "MetricSpec.table: must be square");
    require(t[i][i] == 0.0, "MetricSpec.table: diagonal must be zero");
    for (size_t j = 0; j < n; ++j) {
      require(t[i][j] >= 0.0, "MetricSpec.table: entries must be nonnegative");
      require(t[i][j] == t[j][i], "MetricSpec.table: must be symmetric");
    }
  }
  MetricSpec m;
  m.kind = Kind::Table;
  m.table = std::move(t);
  return m;
}

MetricSpec MetricSpec::rho_of(std::shared_ptr<const FunctionFamily> fam) {
  require(fam != nullptr, "MetricSpec.family: must not be null");
  MetricSpec m;
  m.kind = Kind::RhoFamily;
  m.family = std::move(fam);
  return m;
}

double MetricSpec::operator()(const StatePoint& x, const StatePoint& y) const {
  return metric_distance(*this, x, y);
}

RegionSpec RegionSpec::box(std::vector<double> lo, std::vector<double> hi, bool open) {
  require(lo.size() == hi.size() && !lo.empty(), "RegionSpec.box: lo/hi dimension mismatch");
  RegionSpec r;
  r.kind = Kind::Box;
  r.lo = std::move(lo);
  r.hi = std::move(hi);
  r.open_bounds = open;
  return r;
}

RegionSpec RegionSpec::interval(double lo, double hi, bool open) {
  return box({lo}, {hi}, open);
}

RegionSpec RegionSpec::ball(StatePoint center, double radius, MetricSpec m) {
  require(radius > 0, "RegionSpec.radius: must be positive");
  RegionSpec r;
  r.kind = Kind::Ball;
  r.center = std::move(center);
  r.radius = radius;
  r.ball_metric = std::move(m);
  return r;
}

RegionSpec RegionSpec::label_set(std::vector<int> labels) {
  RegionSpec r;
  r.kind = Kind::Labels;
  r.labels = std::move(labels);
  return r;
}

RegionSpec RegionSpec::sample(std::vector<StatePoint> pts) {
  require(!pts.empty(), "RegionSpec.points: must be non-empty");
  RegionSpec r;
  r.kind = Kind::Sample;
  r.points = std::move(pts);
  return r;
}

bool RegionSpec::contains(const StatePoint& p) const {
  switch (kind) {
    case Kind::Box: {
      if (p.is_labeled() || p.coords.size() != lo.size()) return false;
      for (size_t i = 0; i < lo.size(); ++i) {
        if (open_bounds) {
          if (!(p.coords[i] > lo[i] && p.coords[i] < hi[i])) return false;
        } else {
          if (!(p.coords[i] >= lo[i] && p.coords[i] <= hi[i])) return false;
        }
      }
      return true;
    }
    case Kind::Ball:
      return ball_metric(p, center) <= radius;
    case Kind::Labels: {
      if (!p.is_labeled()) return false;
      for (int l : labels)
        if (l == p.label) return true;
      return false;
    }
    case Kind::Sample: {
      for (const auto& q : points)
        if (q == p) return true;
      return false;
    }
  }
  return false;
}

}  // namespace pathspace
