#include "ratdyn/orbit.hpp"

#include <algorithm>
#include <cmath>

#include "ratdyn/parallel.hpp"

namespace ratdyn {

std::string TerminationReason::str() const {
  switch (kind) {
    case Termination::ConvergedToPoint: return "ConvergedToPoint";
    case Termination::ConvergedToInfinity: return "ConvergedToInfinity";
    case Termination::PeriodicDetected: return "PeriodicDetected(" + std::to_string(period) + ")";
    case Termination::MaxIterations: return "MaxIterations";
    case Termination::HitIndeterminate: return "HitIndeterminate";
  }
  return "?";
}

const char* to_string(OrbitClassKind k) {
  switch (k) {
    case OrbitClassKind::ConvergentToFixedPoint: return "ConvergentToFixedPoint";
    case OrbitClassKind::ConvergentToInfinity: return "ConvergentToInfinity";
    case OrbitClassKind::Constant: return "Constant";
    case OrbitClassKind::Periodic: return "Periodic";
    case OrbitClassKind::UnboundedOrChaotic: return "UnboundedOrChaotic";
  }
  return "?";
}

std::string OrbitClass::str() const {
  switch (kind) {
    case OrbitClassKind::ConvergentToFixedPoint:
      return "ConvergentToFixedPoint(" + std::to_string(fixed_point_index) + ")";
    case OrbitClassKind::Periodic: return "Periodic(" + std::to_string(period) + ")";
    default: return to_string(kind);
  }
}

TrivialCycleSide trivial_cycle_side(const ExtComplexd& z) {
  const ExtComplexd zero(Complexd(0));
  const double d0 = chordal_distance(z, zero);
  const double dinf = chordal_distance(z, ExtComplexd::infinity());
  return d0 <= dinf ? TrivialCycleSide{d0, true} : TrivialCycleSide{dinf, false};
}

std::size_t find_period(std::span<const ExtComplexd> points, std::size_t max_period, double tol) {
  const std::size_t n = points.size();
  for (std::size_t p = 1; p <= max_period && 2 * p <= n; ++p) {
    const std::size_t checks = std::min(3 * p, n - p);
    bool ok = true;
    for (std::size_t k = 0; k < checks && ok; ++k) {
      const std::size_t j = n - 1 - k;
      ok = chordal_distance(points[j], points[j - p]) < tol;
    }
    if (ok) return p;
  }
  return 0;
}

namespace {

double cycle_diameter(std::span<const ExtComplexd> cycle) {
  double d = 0;
  for (std::size_t i = 0; i < cycle.size(); ++i)
    for (std::size_t j = i + 1; j < cycle.size(); ++j) d = std::max(d, chordal_distance(cycle[i], cycle[j]));
  return d;
}

// Fixed point that z is converging to, if Newton on the cubic lands on a
// genuine fixed point within `tol` of z.
std::optional<ExtComplexd> nearby_fixed_point(const MapParamsd& p, const Polynomiald& cubic, const ExtComplexd& z,
                                              double tol) {
  if (z.is_infinite()) return std::nullopt;
  const Complexd root = newton_polish(cubic, z.value(), 2, 50);
  if (!std::isfinite(root.real()) || !std::isfinite(root.imag())) return std::nullopt;
  const ExtComplexd limit(root);
  if (!(chordal_distance(z, limit) < tol)) return std::nullopt;
  try {
    const ExtComplexd image = eval_map(p, limit);
    if (!(chordal_distance(image, limit) < 1e-8)) return std::nullopt;
  } catch (const Error&) {
    return std::nullopt;
  }
  return limit;
}

}  // namespace

Orbit iterate_orbit(const MapParamsd& params, const ExtComplexd& z0, const OrbitSettings& settings) {
  if (settings.max_iter < 1) throw Error(ErrorKind::InvalidArgument, "max_iter must be at least 1");
  if (!(settings.conv_tol > 0)) throw Error(ErrorKind::InvalidArgument, "conv_tol must be positive");

  Orbit orbit(params, z0);
  orbit.settings = settings;
  orbit.stride = settings.effective_stride();
  const std::size_t window = std::max<std::size_t>(settings.window, 1);
  const std::size_t dense = std::max(settings.dense_tail, window);
  const std::size_t keep = std::max(dense, 4 * settings.max_period + window);
  const double tol = settings.conv_tol;
  const double collapse = std::sqrt(tol);
  const Polynomiald cubic = fixed_point_cubic(params);

  std::vector<ExtComplexd> hist{z0};
  std::vector<std::size_t> hist_idx{0};
  orbit.points.push_back(z0);
  orbit.indices.push_back(0);

  ExtComplexd z = z0;
  std::size_t small_steps = 0;
  std::size_t trivial_run = 0;
  std::size_t trivial_start = 0;
  bool trivial_exact = false;
  bool prev_near_zero = false;
  std::size_t near_inf_run = 0;

  auto start_trivial = [&](std::size_t n, const ExtComplexd& w, bool near_zero) {
    trivial_run = 1;
    trivial_start = n;
    trivial_exact = w.is_zero() || w.is_infinite();
    prev_near_zero = near_zero;
  };
  {
    const auto side = trivial_cycle_side(z0);
    if (side.distance < tol) start_trivial(0, z0, side.near_zero);
  }

  std::size_t n = 0;
  bool done = false;
  while (!done && n < settings.max_iter) {
    ExtComplexd next;
    try {
      next = eval_map(params, z);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::IndeterminateValue) throw;
      orbit.termination = {Termination::HitIndeterminate, 0};
      break;
    }
    ++n;
    const double step = chordal_distance(next, z);
    z = next;

    hist.push_back(z);
    hist_idx.push_back(n);
    if (hist.size() > 2 * keep) {
      hist.erase(hist.begin(), hist.end() - static_cast<std::ptrdiff_t>(keep));
      hist_idx.erase(hist_idx.begin(), hist_idx.end() - static_cast<std::ptrdiff_t>(keep));
    }
    if (n % orbit.stride == 0) {
      orbit.points.push_back(z);
      orbit.indices.push_back(n);
    }

    // Alternation between neighbourhoods of 0 and infinity.
    const auto side = trivial_cycle_side(z);
    if (side.distance < tol) {
      if (trivial_run > 0 && side.near_zero != prev_near_zero) {
        ++trivial_run;
        prev_near_zero = side.near_zero;
      } else {
        start_trivial(n, z, side.near_zero);
      }
    } else {
      trivial_run = 0;
    }
    if (trivial_run >= window) {
      if (trivial_exact) {
        orbit.termination = {Termination::PeriodicDetected, 2};
      } else {
        orbit.termination = {Termination::ConvergedToInfinity, 0};
        orbit.limit = ExtComplexd::infinity();
      }
      orbit.convergence_iters = trivial_start;
      break;
    }

    // Resting at infinity (only possible for maps with a finite image of infinity
    // that returns there, kept for completeness).
    near_inf_run = chordal_distance(z, ExtComplexd::infinity()) < tol && trivial_run == 0 ? near_inf_run + 1 : 0;
    if (near_inf_run >= window) {
      orbit.termination = {Termination::ConvergedToInfinity, 0};
      orbit.limit = ExtComplexd::infinity();
      orbit.convergence_iters = n + 1 - window;
      break;
    }

    small_steps = step < tol ? small_steps + 1 : 0;
    if (small_steps >= window) {
      if (auto limit = nearby_fixed_point(params, cubic, z, tol)) {
        orbit.termination = {Termination::ConvergedToPoint, 0};
        orbit.limit = *limit;
        orbit.convergence_iters = n;
        done = true;
        continue;
      }
    }

    if (trivial_run == 0 && small_steps == 0 && n % settings.period_check_interval == 0 &&
        side.distance >= collapse) {
      const std::size_t p = find_period(hist, settings.max_period, tol);
      if (p >= 2) {
        std::span<const ExtComplexd> cyc(hist.data() + hist.size() - p, p);
        // A 'cycle' that collapses onto a point is slow convergence to a fixed point.
        if (cycle_diameter(cyc) >= collapse) {
          orbit.termination = {Termination::PeriodicDetected, p};
          orbit.convergence_iters = n >= 4 * p ? n - 4 * p : 0;
          done = true;
        }
      }
    }
  }
  if (n >= settings.max_iter && !done && orbit.termination.kind == Termination::MaxIterations) {
    orbit.termination = {Termination::MaxIterations, 0};
  }
  orbit.n_total = n;

  // Dense tail: every iterate among the last `dense` not already recorded.
  const std::size_t first_dense = n + 1 > dense ? n + 1 - dense : 0;
  for (std::size_t k = 0; k < hist.size(); ++k) {
    if (hist_idx[k] > orbit.indices.back() && hist_idx[k] >= first_dense) {
      orbit.points.push_back(hist[k]);
      orbit.indices.push_back(hist_idx[k]);
    }
  }
  return orbit;
}

std::vector<Orbit> iterate_orbits(const MapParamsd& params, const std::vector<ExtComplexd>& z0s,
                                  const OrbitSettings& settings) {
  return parallel_map(z0s.size(), [&](std::size_t i) { return iterate_orbit(params, z0s[i], settings); });
}

OrbitClass classify_orbit(const Orbit& orbit, const std::vector<FixedPointRecord>& fps, double tol) {
  OrbitClass c;
  const bool constant = std::all_of(orbit.points.begin(), orbit.points.end(),
                                    [&](const ExtComplexd& z) { return chordal_distance(z, orbit.z0) < tol; });
  if (constant) {
    c.kind = OrbitClassKind::Constant;
    return c;
  }
  switch (orbit.termination.kind) {
    case Termination::ConvergedToPoint: {
      c.kind = OrbitClassKind::ConvergentToFixedPoint;
      double best = tol;
      for (const auto& fp : fps) {
        if (fp.spurious) continue;
        const double d = chordal_distance(*orbit.limit, ExtComplexd(fp.z_bar));
        if (d < best) {
          best = d;
          c.fixed_point_index = fp.index;
        }
      }
      break;
    }
    case Termination::ConvergedToInfinity:
      c.kind = OrbitClassKind::ConvergentToInfinity;
      break;
    case Termination::PeriodicDetected:
      c.kind = OrbitClassKind::Periodic;
      c.period = orbit.termination.period;
      break;
    case Termination::MaxIterations:
    case Termination::HitIndeterminate:
      c.kind = OrbitClassKind::UnboundedOrChaotic;
      break;
  }
  return c;
}

std::size_t convergence_time(const Orbit& orbit, const ExtComplexd& target, double tol) {
  if (orbit.points.empty() || !(chordal_distance(orbit.points.back(), target) < tol)) {
    throw Error(ErrorKind::NotConverged, "final recorded point is not within tol of the target");
  }
  for (std::size_t k = orbit.points.size(); k-- > 0;) {
    if (!(chordal_distance(orbit.points[k], target) < tol)) return orbit.indices[k + 1];
  }
  return orbit.indices.front();
}

}  // namespace ratdyn
