#pragma once

#include <cmath>
#include <vector>

#include "ensemble.hpp"
#include "path.hpp"
#include "rng.hpp"

namespace testutil {

using namespace pathspace;

// the ramp-then-flat path of the eta process with a fixed jump time
inline PiecewiseLinearPath eta_path(double omega) {
  return PiecewiseLinearPath(Horizon::half_line(), {0.0, omega},
                             {StatePoint(1.0 - omega), StatePoint(1.0)},
                             {StatePoint(1.0 - omega), StatePoint(0.5)});
}

inline StepPath scalar_step(Horizon h, std::vector<double> times, std::vector<double> values) {
  std::vector<StatePoint> pts;
  pts.reserve(values.size());
  for (double v : values) pts.push_back(StatePoint(v));
  return StepPath(h, std::move(times), std::move(pts));
}

// random scalar step path with jumps at distinct interior times
inline StepPath random_step_path(SplitRng& rng, const Horizon& h, int max_jumps, double value_scale = 1.0) {
  double end = h.halfline ? 4.0 : h.b;
  int jumps = (int)(rng.next_unit() * (max_jumps + 1));
  std::vector<double> times{h.start()};
  for (int j = 0; j < jumps; ++j) {
    double t = h.start() + (end - h.start()) * rng.next_open_unit();
    times.push_back(t);
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  std::vector<double> values;
  values.push_back(value_scale * rng.next_unit());
  for (size_t i = 1; i < times.size(); ++i) {
    double v;
    do {
      v = value_scale * rng.next_unit();
    } while (v == values.back());
    values.push_back(v);
  }
  return scalar_step(h, std::move(times), std::move(values));
}

// random piecewise-linear time change fixing the horizon
inline TimeChange random_time_change(SplitRng& rng, const Horizon& h) {
  double end = h.halfline ? 4.0 : h.b;
  int knots = 1 + (int)(rng.next_unit() * 3);
  std::vector<double> k{h.start()}, im{h.start()};
  for (int j = 0; j < knots; ++j) {
    k.push_back(h.start() + (end - h.start()) * rng.next_open_unit());
    im.push_back(h.start() + (end - h.start()) * rng.next_open_unit());
  }
  std::sort(k.begin(), k.end());
  std::sort(im.begin(), im.end());
  k.erase(std::unique(k.begin(), k.end()), k.end());
  im.erase(std::unique(im.begin(), im.end()), im.end());
  size_t n = std::min(k.size(), im.size());
  k.resize(n);
  im.resize(n);
  return TimeChange(h, std::move(k), std::move(im));
}

}  // namespace testutil
