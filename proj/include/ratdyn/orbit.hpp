#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ratdyn/ext_complex.hpp"
#include "ratdyn/fixed_points.hpp"
#include "ratdyn/plane_map.hpp"

namespace ratdyn {

enum class Termination { ConvergedToPoint, ConvergedToInfinity, PeriodicDetected, MaxIterations, HitIndeterminate };

struct TerminationReason {
  Termination kind = Termination::MaxIterations;
  std::size_t period = 0;  // set for PeriodicDetected

  std::string str() const;
  friend bool operator==(const TerminationReason&, const TerminationReason&) = default;
};

struct OrbitSettings {
  std::size_t max_iter = 10000;
  double conv_tol = 1e-10;        // chordal
  std::size_t record_stride = 0;  // 0 selects 1 up to 1e5 iterations and 10 above
  std::size_t window = 10;        // consecutive sub-tolerance steps
  std::size_t max_period = 256;
  std::size_t dense_tail = 1000;  // final points always recorded densely
  std::size_t period_check_interval = 16;

  std::size_t effective_stride() const {
    if (record_stride) return record_stride;
    return max_iter <= 100000 ? 1 : 10;
  }
};

/// A recorded trajectory. points[k] is the iterate with iteration number
/// indices[k]; points[0] is z0 and the tail is dense.
struct Orbit {
  Orbit(const MapParamsd& p, const ExtComplexd& start) : params(p), z0(start) {}

  MapParamsd params;
  ExtComplexd z0;
  std::vector<ExtComplexd> points;
  std::vector<std::size_t> indices;
  std::size_t stride = 1;
  std::size_t n_total = 0;
  TerminationReason termination;
  std::optional<ExtComplexd> limit;
  std::optional<std::size_t> convergence_iters;
  OrbitSettings settings;
};

Orbit iterate_orbit(const MapParamsd& params, const ExtComplexd& z0, const OrbitSettings& settings = {});

/// Orbits for several starts, computed concurrently and returned in input order.
std::vector<Orbit> iterate_orbits(const MapParamsd& params, const std::vector<ExtComplexd>& z0s,
                                  const OrbitSettings& settings = {});

enum class OrbitClassKind { ConvergentToFixedPoint, ConvergentToInfinity, Constant, Periodic, UnboundedOrChaotic };

const char* to_string(OrbitClassKind k);

struct OrbitClass {
  OrbitClassKind kind = OrbitClassKind::UnboundedOrChaotic;
  int fixed_point_index = 0;  // 1-based; 0 when the limit matches no supplied fixed point
  std::size_t period = 0;

  std::string str() const;
};

OrbitClass classify_orbit(const Orbit& orbit, const std::vector<FixedPointRecord>& fps, double tol = 1e-6);

/// Smallest iteration n with chordal(z_m, target) < tol for every recorded m >= n.
/// Exact when the orbit was recorded with stride 1.
std::size_t convergence_time(const Orbit& orbit, const ExtComplexd& target, double tol);

/// Smallest p in [1, max_period] such that chordal(z_i, z_{i+p}) < tol for the
/// last 3p comparisons available in `points` (fewer when the span is short,
/// but never fewer than p). Returns 0 when no period is found.
std::size_t find_period(std::span<const ExtComplexd> points, std::size_t max_period, double tol);

/// Chordal distance from z to the nearer of 0 and infinity, and which one.
struct TrivialCycleSide {
  double distance = 2.0;
  bool near_zero = false;
};
TrivialCycleSide trivial_cycle_side(const ExtComplexd& z);

}  // namespace ratdyn
