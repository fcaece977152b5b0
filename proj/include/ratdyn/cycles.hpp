#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ratdyn/ext_complex.hpp"
#include "ratdyn/plane_map.hpp"
#include "ratdyn/polynomial.hpp"

namespace ratdyn {

/// One full periodic cycle in canonical rotation (lexicographically smallest
/// point first, infinity last).
struct CycleRecord {
  std::vector<ExtComplexd> points;
  std::size_t prime_period = 0;
  double residual = 0;                  // max chordal(f(c_i), c_{i+1 mod p})
  std::optional<Complexd> multiplier;   // product of f' along the cycle
  bool refined = false;                 // Newton refinement was applied
};

struct CycleSettings {
  std::size_t n_transient = 1000;
  std::size_t n_probe = 4096;
  std::size_t max_period = 256;
  double match_tol = 1e-8;
};

std::optional<CycleRecord> detect_cycle(const MapParamsd& params, const ExtComplexd& z0,
                                        const CycleSettings& settings = {});

/// Recomputes residual, prime period and multiplier of a proposed cycle.
/// Throws NotACycle naming the first index whose image misses its successor.
CycleRecord verify_cycle(const MapParamsd& params, const std::vector<ExtComplexd>& points, double verify_tol);

/// Rotation of `points` starting at its lexicographically smallest entry.
std::vector<ExtComplexd> canonical_rotation(const std::vector<ExtComplexd>& points);

/// Distinct cycles, keeping the first of any group whose canonical points
/// agree within `tol` (chordal).
std::vector<CycleRecord> deduplicate_cycles(const std::vector<CycleRecord>& cycles, double tol = 1e-6);

/// Multiplier alpha delta / (beta gamma) of the {0, infinity} exchange.
Complexd zero_infinity_multiplier(const MapParamsd& params);

enum class SecondIterateStatus { Roots, IdenticallyPeriodic };

struct SecondIterateSet {
  SecondIterateStatus status = SecondIterateStatus::Roots;
  Polynomiald numerator;                  // of f(f(z)) - z, ascending powers
  std::vector<ExtComplexd> all_roots;     // with infinity appended for the degree deficit
  std::vector<ExtComplexd> remainder;     // after removing the fixed points
  std::vector<double> residuals;          // chordal(f(f(r)), r) per remainder entry
  double deflation_residual = 0;          // relative remainder of numerator / (z * cubic)
};

/// Solutions of f(f(z)) = z that are not fixed points.
SecondIterateSet second_iterate_fixed_set(const MapParamsd& params);

}  // namespace ratdyn
