#pragma once

#include <cstdint>

#include "metallic/immersion.hpp"

namespace metallic {

// xorshift64* generator, fixed here (rather than std::mt19937) so that
// sampled points are bit-identical across platforms and standard libraries.
class Xorshift64Star {
 public:
  explicit Xorshift64Star(std::uint64_t seed)
      : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 2685821657736338717ull;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Uniform point in the domain box shrunk by the margin; pinned coordinates
// (lo == hi) are emitted exactly.
inline Vector sample_point(const ImmersionSpec& spec, Xorshift64Star& rng,
                           double margin = kDomainMargin) {
  Vector x(spec.chart_dim);
  for (int c = 0; c < spec.chart_dim; ++c) {
    double lo = spec.domain[c][0], hi = spec.domain[c][1];
    if (lo == hi) {
      x(c) = lo;
    } else {
      double a = lo + margin, b = hi - margin;
      x(c) = a + rng.uniform() * (b - a);
    }
  }
  return x;
}

inline std::vector<Vector> sample_points(const ImmersionSpec& spec, int count,
                                         std::uint64_t seed,
                                         double margin = kDomainMargin) {
  Xorshift64Star rng(seed);
  std::vector<Vector> pts;
  pts.reserve(count);
  for (int i = 0; i < count; ++i) pts.push_back(sample_point(spec, rng, margin));
  return pts;
}

}  // namespace metallic
