#include "skorokhod.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace pathspace {

namespace {

std::vector<double> merged_event_times(const Path& x, const Path& y, double a, double b) {
  std::vector<double> e{a, b};
  auto add = [&](const Path& p) {
    std::visit(
        [&](const auto& q) {
          const auto& grid = [&]() -> const std::vector<double>& {
            if constexpr (std::is_same_v<std::decay_t<decltype(q)>, StepPath>) return q.times;
            else return q.knots;
          }();
          for (double t : grid)
            if (t > a && t < b) e.push_back(t);
        },
        p);
  };
  add(x);
  add(y);
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  return e;
}

bool is_step(const Path& p) { return std::holds_alternative<StepPath>(p); }

}  // namespace

double sup_band_dist(const Path& x, const Path& y, double a, double b, const MetricSpec& metric) {
  require(b > a, "sup_band_dist: empty interval");
  require(path_horizon(x).admits(a) && path_horizon(x).admits(b), "sup_band_dist: interval outside x horizon");
  require(path_horizon(y).admits(a) && path_horizon(y).admits(b), "sup_band_dist: interval outside y horizon");
  if (!is_step(x) || !is_step(y))
    require(metric.kind == MetricSpec::Kind::Euclidean || metric.kind == MetricSpec::Kind::TruncatedEuclidean,
            "sup_band_dist: piecewise-linear paths need a euclidean-type metric");
  auto events = merged_event_times(x, y, a, b);
  double sup = 0.0;
  for (size_t i = 0; i + 1 < events.size(); ++i) {
    // segment distance is constant (step) or convex in t (euclidean norm of a
    // linear function), so endpoint values and left limits dominate
    sup = std::max(sup, metric(path_eval(x, events[i]), path_eval(y, events[i])));
    sup = std::max(sup, metric(path_left_limit(x, events[i + 1]), path_left_limit(y, events[i + 1])));
  }
  sup = std::max(sup, metric(path_eval(x, b), path_eval(y, b)));
  return std::min(sup, 1.0);
}

// --- modulus of continuity ---------------------------------------------------

namespace {

// max pairwise oscillation among values active on [s, e); closed_end extends
// the window to include the value at e itself.
double oscillation(const StepPath& x, const MetricSpec& metric, double s, double e, bool closed_end) {
  std::vector<const StatePoint*> active;
  for (size_t i = 0; i < x.times.size(); ++i) {
    const double seg_start = x.times[i];
    if (closed_end ? seg_start > e : seg_start >= e) break;
    const double seg_end = (i + 1 < x.times.size()) ? x.times[i + 1] : std::numeric_limits<double>::infinity();
    if (seg_end <= s) continue;
    active.push_back(&x.values[i]);
  }
  double osc = 0.0;
  for (size_t i = 0; i < active.size(); ++i)
    for (size_t j = i + 1; j < active.size(); ++j) osc = std::max(osc, metric(*active[i], *active[j]));
  return osc;
}

}  // namespace

double modulus_w_prime(const StepPath& x, const MetricSpec& metric, double delta, double T) {
  require(delta > 0, "modulus.delta: must be positive");
  require(delta < T, "modulus: delta must be smaller than T");
  require(x.horizon.admits(T), "modulus.T: outside horizon");

  // candidate boundaries: 0 plus jump times in (0, T]
  std::vector<double> B{x.horizon.start()};
  for (size_t i = 1; i < x.times.size(); ++i) {
    if (x.times[i] <= T && metric(x.values[i], x.values[i - 1]) > 0.0) B.push_back(x.times[i]);
  }

  const size_t n = B.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> best(n, inf);
  best[0] = 0.0;
  for (size_t i = 1; i < n; ++i) {
    for (size_t j = 0; j < i; ++j) {
      if (!(B[i] - B[j] > delta)) continue;
      if (best[j] == inf) continue;
      best[i] = std::min(best[i], std::max(best[j], oscillation(x, metric, B[j], B[i], false)));
    }
  }
  // close with the final interval [B[i], t_n), t_n > T and t_n - B[i] > delta;
  // its infimum equals the oscillation over the closed window up to
  // max(T, B[i] + delta).
  double answer = inf;
  for (size_t i = 0; i < n; ++i) {
    if (best[i] == inf) continue;
    double window_end = std::max(T, B[i] + delta);
    answer = std::min(answer, std::max(best[i], oscillation(x, metric, B[i], window_end, true)));
  }
  return answer;
}

// --- candidate search ----------------------------------------------------------

namespace {

struct CandidateSet {
  std::vector<TimeChange> out;
  std::set<std::pair<std::vector<double>, std::vector<double>>> seen;

  void add(TimeChange tc) {
    if (seen.insert({tc.knots, tc.images}).second) out.push_back(std::move(tc));
  }
};

// piecewise-linear time change through the matched (domain, image) pairs
std::optional<TimeChange> through_pairs(const Horizon& h, const std::vector<std::pair<double, double>>& pairs) {
  std::vector<double> knots{h.start()}, images{h.start()};
  for (const auto& [d, im] : pairs) {
    if (d <= knots.back() || im <= images.back()) return std::nullopt;
    if (!h.halfline && (d >= h.b || im >= h.b)) return std::nullopt;
    knots.push_back(d);
    images.push_back(im);
  }
  if (h.halfline && knots.size() > 1) {
    // unit-slope tail keeps the norm at the matched segments
    knots.push_back(knots.back() + 1.0);
    images.push_back(images.back() + 1.0);
  }
  return TimeChange(h, std::move(knots), std::move(images));
}

void enumerate_matchings(const std::vector<double>& domain, const std::vector<double>& image, int depth,
                         const Horizon& h, CandidateSet& cands) {
  std::vector<std::pair<double, double>> current;
  auto rec = [&](auto&& self, size_t di, size_t ii) -> void {
    if (!current.empty()) {
      if (auto tc = through_pairs(h, current)) cands.add(*tc);
    }
    if ((int)current.size() >= depth) return;
    for (size_t i = di; i < domain.size(); ++i) {
      for (size_t j = ii; j < image.size(); ++j) {
        current.emplace_back(domain[i], image[j]);
        self(self, i + 1, j + 1);
        current.pop_back();
      }
    }
  };
  rec(rec, 0, 0);
}

}  // namespace

std::vector<TimeChange> candidate_time_changes(const StepPath& x, const StepPath& y, const MetricSpec& metric,
                                               const SkoOptions& opts) {
  require(opts.matching_depth >= 0, "SkoOptions.matching_depth: must be nonnegative");
  const Horizon h = x.horizon;
  CandidateSet cands;
  cands.add(TimeChange::identity(h));

  auto jx = jump_times(Path(x), metric, 0.0);
  auto jy = jump_times(Path(y), metric, 0.0);
  // evaluation composes x with lambda, so aligning means mapping y's jump
  // times (domain) onto x's (images); the mirror orientation keeps the set
  // closed under inversion.
  enumerate_matchings(jy, jx, opts.matching_depth, h, cands);
  enumerate_matchings(jx, jy, opts.matching_depth, h, cands);

  if (opts.refine_grid > 0) {
    size_t base_count = cands.out.size();
    for (size_t c = 1; c < base_count; ++c) {  // skip identity
      const TimeChange tc = cands.out[c];
      for (size_t k = 1; k + 1 < tc.knots.size(); ++k) {
        double lo = tc.knots[k - 1];
        double hi = (k + 1 < tc.knots.size()) ? tc.knots[k + 1] : tc.knots[k] + 1.0;
        double room = std::min(tc.knots[k] - lo, hi - tc.knots[k]);
        for (int g = 1; g <= opts.refine_grid; ++g) {
          double off = room * g / (opts.refine_grid + 1);
          for (double s : {tc.knots[k] - off, tc.knots[k] + off}) {
            auto knots = tc.knots;
            knots[k] = s;
            if (knots[k] <= knots[k - 1] || (k + 1 < knots.size() && knots[k] >= knots[k + 1])) continue;
            cands.add(TimeChange(h, knots, tc.images));
          }
        }
      }
    }
  }
  return std::move(cands.out);
}

namespace {

// int_0^inf e^{-u} r_[0,u](xl, y) du for step paths, in closed form: the
// running sup of the capped pointwise distance is a nondecreasing step
// function of u with breakpoints at merged jump times.
double discounted_band_integral(const StepPath& xl, const StepPath& y, const MetricSpec& metric) {
  std::vector<double> e{0.0};
  for (size_t i = 1; i < xl.times.size(); ++i) e.push_back(xl.times[i]);
  for (size_t i = 1; i < y.times.size(); ++i) e.push_back(y.times[i]);
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());

  double integral = 0.0;
  double running = 0.0;
  for (size_t i = 0; i < e.size(); ++i) {
    running = std::max(running, std::min(1.0, metric(xl.eval(e[i]), y.eval(e[i]))));
    if (running >= 1.0) {
      integral += std::exp(-e[i]);
      return integral;
    }
    if (i + 1 < e.size())
      integral += running * (std::exp(-e[i]) - std::exp(-e[i + 1]));
    else
      integral += running * std::exp(-e[i]);
  }
  return integral;
}

}  // namespace

SkoResult sko_dist(const StepPath& x, const StepPath& y, const MetricSpec& metric, const SkoOptions& opts) {
  require(x.horizon == y.horizon, "sko_dist: horizon mismatch");
  auto candidates = candidate_time_changes(x, y, metric, opts);

  SkoResult result;
  result.value = std::numeric_limits<double>::infinity();
  for (const auto& tc : candidates) {
    StepPath xl = compose_time_change(x, tc);
    double dist = x.horizon.halfline ? discounted_band_integral(xl, y, metric)
                                     : sup_band_dist(Path(xl), Path(y), x.horizon.a, x.horizon.b, metric);
    double value = std::max(time_change_norm(tc), dist);
    if (value < result.value) {
      result.value = value;
      result.witness = tc;
    }
    ++result.candidates_evaluated;
  }
  // On an interval, step-path optima align jumps exactly, so once every
  // matching is enumerated the candidate minimum attains the infimum.
  int jumps_x = (int)jump_times(Path(x), metric, 0.0).size();
  int jumps_y = (int)jump_times(Path(y), metric, 0.0).size();
  if (!x.horizon.halfline && jumps_x <= opts.matching_depth && jumps_y <= opts.matching_depth)
    result.certified_lower = result.value;
  return result;
}

}  // namespace pathspace
