#pragma once

#include <complex>
#include <vector>

#include "ratdyn/plane_map.hpp"

namespace testdata {

using C = ratdyn::Complexd;
using ratdyn::MapParamsd;

inline MapParamsd ex21() { return {{0.92735, 0.9174938}, {0.713574, 0.618337}, {0.343287, 0.9360273}, {0.124774, 0.7305853}}; }
inline MapParamsd ex22() { return {{0.27481, 0.24150174}, {0.243145, 0.154159}, {0.956416, 0.935661}, {0.818714, 0.728261}}; }
inline MapParamsd s31() { return {{0.27481, 0.241501}, {1.2431, 0.1542}, {0.956416, 0.935661}, {0.818714, 0.728261}}; }
inline MapParamsd s32() { return {{0.917193, 0.2858390}, {1.13764, 1.32155}, {0.993047, 0.33978}, {0.7572, 0.753729}}; }
inline MapParamsd s33() { return {{0.9172, 0.2858}, {1.1376, 1.3216}, {3.1376, 1.3216}, {-1.0828, 0.2858}}; }
inline MapParamsd ex41() {
  const C a(0.655098003973841, 0.162611735194631), b(0.118997681558377, 0.498364051982143);
  return {a, b, b, a};
}
inline MapParamsd ex42() { return {{0.1909, 0.4283}, {0.4820, 0.1206}, {0.5895, 0.2262}, {0.3846, 0.5830}}; }
inline MapParamsd inv_square() { return {0, 1, 1, 0}; }
inline MapParamsd case_a() { return {{0.3, 0.2}, {0.3, 0.2}, {0.7, 0.1}, {0.7, 0.1}}; }
inline MapParamsd case_d_chaotic() { return {{28, 68}, {66, 17}, {66, 17}, {28, 68}}; }
inline MapParamsd table_row(int i) {
  static const MapParamsd rows[] = {{{0.6849, 0.2083}, {0.6082, 0.3262}, {0.8808, 0.1334}, {0.1024, 0.9591}},
                                    {{0.8491, 0.9340}, {0.6787, 0.7577}, {0.7431, 0.3922}, {0.6555, 0.1712}},
                                    {{0.9322, 0.8351}, {0.8954, 0.5825}, {0.5827, 0.8549}, {0.0349, 0.8854}},
                                    {{0.5078, 0.5856}, {0.7629, 0.0830}, {0.6616, 0.5170}, {0.1710, 0.9386}}};
  return rows[i - 1];
}

inline const std::vector<C>& ex41_points() {
  static const std::vector<C> pts{{0.14044571, -0.62692799}, {0.02078534, 0.517795}, {2.994135, -1.828805},
                                  {0.27873451, -0.0515247}, {1.8686505, 1.9830857}};
  return pts;
}

// Durand-Kerner on a polynomial given in ascending powers with nonzero leading coefficient.
inline std::vector<C> durand_kerner(std::vector<C> c) {
  const std::size_t n = c.size() - 1;
  const C lead = c.back();
  for (auto& x : c) x /= lead;
  std::vector<C> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = std::pow(C(0.4, 0.9), static_cast<double>(i));
  for (int it = 0; it < 500; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      C p = 1.0, q = 1.0;
      p = c[n];
      for (std::size_t k = n; k-- > 0;) p = p * z[i] + c[k];
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) q *= z[i] - z[j];
      z[i] -= p / q;
    }
  }
  return z;
}

inline double set_distance(const std::vector<C>& a, const std::vector<C>& b) {
  double worst = 0;
  for (const auto& x : a) {
    double best = 1e300;
    for (const auto& y : b) best = std::min(best, std::abs(x - y));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace testdata
