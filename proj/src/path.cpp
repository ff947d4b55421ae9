#include "path.hpp"

#include <algorithm>
#include <cmath>

namespace pathspace {

namespace {

void check_grid(const Horizon& h, const std::vector<double>& t, size_t nvalues, const char* what) {
  require(!t.empty(), std::string(what) + ": needs at least one breakpoint");
  require(t.size() == nvalues, std::string(what) + ": breakpoints/values size mismatch");
  require(t.front() == h.start(), std::string(what) + ": first breakpoint must equal horizon start");
  for (size_t i = 0; i + 1 < t.size(); ++i)
    require(t[i] < t[i + 1], std::string(what) + ": breakpoints must be strictly increasing");
  if (!h.halfline)
    require(t.back() <= h.b, std::string(what) + ": breakpoints must lie within the horizon");
}

// index of the segment containing t: largest i with times[i] <= t
size_t segment_of(const std::vector<double>& times, double t) {
  auto it = std::upper_bound(times.begin(), times.end(), t);
  return static_cast<size_t>(it - times.begin()) - 1;
}

}  // namespace

StepPath::StepPath(Horizon h, std::vector<double> t, std::vector<StatePoint> v)
    : horizon(h), times(std::move(t)), values(std::move(v)) {
  check_grid(horizon, times, values.size(), "StepPath");
  for (const auto& p : values) p.validate();
}

const StatePoint& StepPath::eval(double t) const {
  require(horizon.admits(t), "StepPath.eval: time outside horizon");
  return values[segment_of(times, t)];
}

const StatePoint& StepPath::left_limit(double t) const {
  require(horizon.admits(t) && t > horizon.start(), "StepPath.left_limit: time must be strictly inside the horizon");
  size_t i = segment_of(times, t);
  if (times[i] == t) return values[i - 1];  // i >= 1 since t > times[0]
  return values[i];
}

PiecewiseLinearPath::PiecewiseLinearPath(Horizon h, std::vector<double> k, std::vector<StatePoint> l,
                                         std::vector<StatePoint> r)
    : horizon(h), knots(std::move(k)), left(std::move(l)), right(std::move(r)) {
  check_grid(horizon, knots, right.size(), "PiecewiseLinearPath");
  require(left.size() == right.size(), "PiecewiseLinearPath: left/right size mismatch");
  size_t dim = right.front().coords.size();
  for (size_t i = 0; i < right.size(); ++i) {
    require(!right[i].is_labeled() && !left[i].is_labeled(),
            "PiecewiseLinearPath.values: only euclidean states are interpolable");
    require(right[i].coords.size() == dim && left[i].coords.size() == dim,
            "PiecewiseLinearPath.values: dimension mismatch");
    right[i].validate();
    left[i].validate();
  }
}

namespace {

StatePoint lerp(const StatePoint& p, const StatePoint& q, double w) {
  StatePoint out = p;
  for (size_t i = 0; i < out.coords.size(); ++i) out.coords[i] += w * (q.coords[i] - out.coords[i]);
  return out;
}

}  // namespace

StatePoint PiecewiseLinearPath::eval(double t) const {
  require(horizon.admits(t), "PiecewiseLinearPath.eval: time outside horizon");
  size_t i = segment_of(knots, t);
  if (i + 1 == knots.size()) return right[i];  // constant tail
  if (knots[i] == t) return right[i];
  double w = (t - knots[i]) / (knots[i + 1] - knots[i]);
  return lerp(right[i], left[i + 1], w);
}

StatePoint PiecewiseLinearPath::left_limit(double t) const {
  require(horizon.admits(t) && t > horizon.start(),
          "PiecewiseLinearPath.left_limit: time must be strictly inside the horizon");
  size_t i = segment_of(knots, t);
  if (knots[i] == t) return left[i];
  if (i + 1 == knots.size()) return right[i];
  double w = (t - knots[i]) / (knots[i + 1] - knots[i]);
  return lerp(right[i], left[i + 1], w);
}

const Horizon& path_horizon(const Path& p) {
  return std::visit([](const auto& x) -> const Horizon& { return x.horizon; }, p);
}

StatePoint path_eval(const Path& p, double t) {
  return std::visit([t](const auto& x) -> StatePoint { return x.eval(t); }, p);
}

StatePoint path_left_limit(const Path& p, double t) {
  return std::visit([t](const auto& x) -> StatePoint { return x.left_limit(t); }, p);
}

std::vector<double> jump_times(const Path& p, const MetricSpec& metric, double tol) {
  require(tol >= 0, "jump_times.tol: must be nonnegative");
  std::vector<double> out;
  const auto grid = std::visit([](const auto& x) {
    if constexpr (std::is_same_v<std::decay_t<decltype(x)>, StepPath>) return x.times;
    else return x.knots;
  }, p);
  for (size_t i = 1; i < grid.size(); ++i) {
    if (metric(path_eval(p, grid[i]), path_left_limit(p, grid[i])) > tol) out.push_back(grid[i]);
  }
  return out;
}

TimeChange::TimeChange(Horizon h, std::vector<double> k, std::vector<double> im)
    : horizon(h), knots(std::move(k)), images(std::move(im)) {
  check_grid(horizon, knots, images.size(), "TimeChange");
  require(images.front() == horizon.start(), "TimeChange.images: must start at horizon start");
  for (size_t i = 0; i + 1 < images.size(); ++i)
    require(images[i] < images[i + 1], "TimeChange.images: must be strictly increasing");
  if (!horizon.halfline) {
    if (knots.back() == horizon.b) {
      require(images.back() == horizon.b, "TimeChange.images: interval case must fix the right endpoint");
    } else {
      require(images.back() < horizon.b, "TimeChange.images: must lie within the horizon");
      knots.push_back(horizon.b);
      images.push_back(horizon.b);
    }
  }
}

namespace {

double final_slope(const std::vector<double>& knots, const std::vector<double>& images) {
  size_t n = knots.size();
  if (n < 2) return 1.0;
  return (images[n - 1] - images[n - 2]) / (knots[n - 1] - knots[n - 2]);
}

}  // namespace

double TimeChange::operator()(double t) const {
  require(horizon.admits(t), "TimeChange: time outside horizon");
  size_t i = segment_of(knots, t);
  if (knots[i] == t) return images[i];
  if (i + 1 == knots.size()) return images[i] + (t - knots[i]) * final_slope(knots, images);
  double slope = (images[i + 1] - images[i]) / (knots[i + 1] - knots[i]);
  return images[i] + (t - knots[i]) * slope;
}

double TimeChange::inverse_at(double s) const {
  require(horizon.admits(s), "TimeChange.inverse_at: time outside horizon");
  size_t i = segment_of(images, s);
  if (images[i] == s) return knots[i];
  if (i + 1 == images.size()) return knots[i] + (s - images[i]) / final_slope(knots, images);
  double slope = (images[i + 1] - images[i]) / (knots[i + 1] - knots[i]);
  return knots[i] + (s - images[i]) / slope;
}

TimeChange TimeChange::inverse() const { return TimeChange(horizon, images, knots); }

double time_change_norm(const TimeChange& tc) {
  double norm = 0.0;
  for (size_t i = 0; i + 1 < tc.knots.size(); ++i) {
    double slope = (tc.images[i + 1] - tc.images[i]) / (tc.knots[i + 1] - tc.knots[i]);
    norm = std::max(norm, std::abs(std::log(slope)));
  }
  return norm;
}

TimeChange compose(const TimeChange& outer, const TimeChange& inner) {
  require(outer.horizon == inner.horizon, "compose: time-change horizons differ");
  // knots: union of inner's knots with preimages of outer's knots
  std::vector<double> k = inner.knots;
  for (double s : outer.knots) k.push_back(inner.inverse_at(s));
  std::sort(k.begin(), k.end());
  k.erase(std::unique(k.begin(), k.end()), k.end());
  std::vector<double> im;
  im.reserve(k.size());
  for (double t : k) im.push_back(outer(inner(t)));
  return TimeChange(outer.horizon, std::move(k), std::move(im));
}

StepPath compose_time_change(const StepPath& x, const TimeChange& tc) {
  require(x.horizon == tc.horizon, "compose_time_change: horizon mismatch");
  std::vector<double> t;
  t.reserve(x.times.size());
  for (double s : x.times) t.push_back(tc.inverse_at(s));
  return StepPath(x.horizon, std::move(t), x.values);
}

StepPath restrict_extend(const StepPath& x, double u) {
  require(u > 0, "restrict_extend.u: must be positive");
  require(x.horizon.halfline, "restrict_extend: requires a half-line path");
  std::vector<double> t;
  std::vector<StatePoint> v;
  for (size_t i = 0; i < x.times.size() && x.times[i] <= u; ++i) {
    t.push_back(x.times[i]);
    v.push_back(x.values[i]);
  }
  return StepPath(Horizon::interval(0.0, u + 1.0), std::move(t), std::move(v));
}

}  // namespace pathspace
