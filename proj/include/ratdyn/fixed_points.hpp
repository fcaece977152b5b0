#pragma once

#include <complex>
#include <vector>

#include "ratdyn/plane_map.hpp"
#include "ratdyn/polynomial.hpp"

namespace ratdyn {

enum class Stability { Sink, Source, NonHyperbolic };

const char* to_string(Stability s);

/// One root of gamma z^3 + delta z^2 - alpha z - beta = 0 with its multiplier.
struct FixedPointRecord {
  Complexd z_bar;
  Complexd multiplier;        // f'(z_bar)
  double multiplier_abs = 0;  // |f'(z_bar)|
  Stability stability = Stability::NonHyperbolic;
  double residual = 0;        // |f(z_bar) - z_bar|
  double class_tol = 1e-9;
  int index = 0;              // 1-based position after lexicographic sort
  int multiplicity = 1;
  bool ill_conditioned = false;  // cubic discriminant below 1e-12
  bool spurious = false;         // z = 0 root of the beta = 0 family
};

Stability classify_multiplier(double multiplier_abs, double class_tol);

/// Coefficients of the fixed-point cubic, ascending powers.
Polynomiald fixed_point_cubic(const MapParamsd& p);

/// All fixed points, sorted by (re, im). Three for generic parameters; two when
/// the map is reduced to z -> k/z (the removable root is dropped).
std::vector<FixedPointRecord> fixed_points(const MapParamsd& p, double class_tol = 1e-9);

/// Multiplier and stability at a user-supplied fixed point.
FixedPointRecord classify_stability(const MapParamsd& p, Complexd z_bar, double class_tol = 1e-9);

/// Closed forms for the special families: A -> +-sqrt(alpha/gamma), C -> +-1,
/// D -> {1, (-(alpha+beta) +- sqrt(alpha^2 + 2 alpha beta - 3 beta^2)) / (2 beta)}.
std::vector<FixedPointRecord> special_case_fixed_points(const MapParamsd& p, const SpecialCaseTag& tag,
                                                        double class_tol = 1e-9);

/// |f'(1)| = |2 beta / (alpha + beta)| for the gamma=beta, delta=alpha family.
double case_d_unit_multiplier(const MapParamsd& p);

/// f'(z) = -2 - alpha/beta at both quadratic fixed points of the same family.
Complexd case_d_pair_multiplier(const MapParamsd& p);

}  // namespace ratdyn
