#pragma once

#include <cmath>
#include <cstdint>

namespace pathspace {

// Counter-based splittable generator. Every path derives its own stream from
// (seed, stream_index), so parallel generation is schedule-independent and a
// run is reproducible from the single top-level seed.
class SplitRng {
 public:
  static uint64_t mix(uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  SplitRng(uint64_t seed, uint64_t stream) : state_(mix(seed ^ mix(stream + 0x632BE59BD9B4E019ull))) {}

  uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // uniform on [0, 1)
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform on (0, 1)
  double next_open_unit() {
    double u;
    do {
      u = next_unit();
    } while (u == 0.0);
    return u;
  }

  double next_normal() {
    // Box-Muller; one draw per call keeps the stream usage obvious.
    double u1 = next_open_unit();
    double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  double next_exponential(double rate) { return -std::log(next_open_unit()) / rate; }

 private:
  uint64_t state_;
};

}  // namespace pathspace
