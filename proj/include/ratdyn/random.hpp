#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ratdyn/ext_complex.hpp"
#include "ratdyn/plane_map.hpp"

namespace ratdyn {

/// Seeded uniform sampler. The 64-bit Mersenne Twister sequence is fixed by
/// the standard and doubles are built from its top 53 bits, so draws are
/// identical across platforms (std::uniform_real_distribution is not).
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  Complexd uniform_box(double lo, double hi) {
    const double re = uniform(lo, hi);
    const double im = uniform(lo, hi);
    return {re, im};
  }

 private:
  std::mt19937_64 engine_;
};

/// Initial values uniform on the square [-2, 2]^2.
inline std::vector<ExtComplexd> sample_initial_values(std::uint64_t seed, std::size_t n) {
  Sampler s(seed);
  std::vector<ExtComplexd> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(s.uniform_box(-2.0, 2.0));
  return out;
}

/// Parameter quadruple with every component uniform on [lo, hi]^2, redrawn
/// until gamma and beta are nonzero.
inline MapParamsd sample_params(Sampler& s, double lo = 0.0, double hi = 1.0) {
  for (;;) {
    const Complexd a = s.uniform_box(lo, hi);
    const Complexd b = s.uniform_box(lo, hi);
    const Complexd g = s.uniform_box(lo, hi);
    const Complexd d = s.uniform_box(lo, hi);
    if (g != Complexd(0) && b != Complexd(0)) return MapParamsd(a, b, g, d);
  }
}

}  // namespace ratdyn
