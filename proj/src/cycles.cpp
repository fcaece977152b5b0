#include "ratdyn/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ratdyn/fixed_points.hpp"

namespace ratdyn {

std::vector<ExtComplexd> canonical_rotation(const std::vector<ExtComplexd>& points) {
  if (points.empty()) return {};
  const auto first = std::min_element(points.begin(), points.end(),
                                      [](const auto& a, const auto& b) { return lexicographic_less(a, b); });
  std::vector<ExtComplexd> out(first, points.end());
  out.insert(out.end(), points.begin(), first);
  return out;
}

Complexd zero_infinity_multiplier(const MapParamsd& p) {
  if (p.beta() == Complexd(0) || p.gamma() == Complexd(0)) {
    throw Error(ErrorKind::InvalidArgument, "the {0, inf} exchange needs beta != 0 and gamma != 0");
  }
  return p.alpha() * p.delta() / (p.beta() * p.gamma());
}

namespace {

bool is_trivial_pair(const std::vector<ExtComplexd>& pts) {
  return pts.size() == 2 && ((pts[0].is_zero() && pts[1].is_infinite()) || (pts[0].is_infinite() && pts[1].is_zero()));
}

std::optional<Complexd> cycle_multiplier(const MapParamsd& p, const std::vector<ExtComplexd>& pts) {
  if (is_trivial_pair(pts)) {
    if (p.beta() == Complexd(0) || p.degenerate()) return std::nullopt;
    return zero_infinity_multiplier(p);
  }
  Complexd m(1);
  for (const auto& z : pts) {
    if (z.is_infinite() || z.is_zero()) return std::nullopt;
    try {
      m *= eval_derivative(p, z);
    } catch (const Error&) {
      return std::nullopt;
    }
  }
  return m;
}

double near_singular_distance(const MapParamsd& p, const ExtComplexd& z) {
  if (z.is_infinite()) return 0;
  double d = std::abs(z.value()) > 1e6 ? 0 : std::numeric_limits<double>::infinity();
  for (const Complexd& pole : poles(p)) d = std::min(d, std::abs(z.value() - pole));
  return d;
}

// Newton on g(z) = f^p(z) - z from c0, with g'(z) = prod f'(z_i) - 1.
std::optional<Complexd> refine_cycle_point(const MapParamsd& p, Complexd c0, std::size_t period) {
  Complexd z = c0;
  for (int step = 0; step < 30; ++step) {
    Complexd w = z;
    Complexd deriv(1);
    for (std::size_t i = 0; i < period; ++i) {
      deriv *= eval_derivative(p, ExtComplexd(w));
      const ExtComplexd next = eval_map(p, ExtComplexd(w));
      if (next.is_infinite()) return std::nullopt;
      w = next.value();
    }
    const Complexd denom = deriv - Complexd(1);
    if (std::abs(denom) < 1e-12) return std::nullopt;
    const Complexd dz = (w - z) / denom;
    z -= dz;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return std::nullopt;
    if (std::abs(dz) <= 4 * std::numeric_limits<double>::epsilon() * (1 + std::abs(z))) break;
  }
  return z;
}

std::vector<ExtComplexd> orbit_points(const MapParamsd& p, const ExtComplexd& start, std::size_t count) {
  std::vector<ExtComplexd> out{start};
  while (out.size() < count) out.push_back(eval_map(p, out.back()));
  return out;
}

double closure_residual(const MapParamsd& p, const std::vector<ExtComplexd>& pts, std::size_t* worst = nullptr) {
  double res = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double d = chordal_distance(eval_map(p, pts[i]), pts[(i + 1) % pts.size()]);
    if (d > res) {
      res = d;
      if (worst) *worst = i;
    }
  }
  return res;
}

}  // namespace

CycleRecord verify_cycle(const MapParamsd& params, const std::vector<ExtComplexd>& points, double verify_tol) {
  if (points.empty()) throw Error(ErrorKind::InvalidArgument, "empty cycle");
  std::size_t worst = 0;
  double res;
  try {
    res = closure_residual(params, points, &worst);
  } catch (const Error& e) {
    throw Error(ErrorKind::NotACycle, std::string("map undefined on a cycle point: ") + e.what());
  }
  if (!(res < verify_tol)) {
    throw Error(ErrorKind::NotACycle, "f(c[" + std::to_string(worst) + "]) misses c[" +
                                          std::to_string((worst + 1) % points.size()) +
                                          "] by chordal distance " + std::to_string(res));
  }
  const std::size_t n = points.size();
  std::size_t prime = n;
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d) continue;
    bool repeats = true;
    for (std::size_t i = 0; i < n && repeats; ++i) repeats = chordal_distance(points[i], points[(i + d) % n]) < verify_tol;
    if (repeats) {
      prime = d;
      break;
    }
  }
  CycleRecord rec;
  rec.points = canonical_rotation(std::vector<ExtComplexd>(points.begin(), points.begin() + prime));
  rec.prime_period = prime;
  rec.residual = closure_residual(params, rec.points);
  rec.multiplier = cycle_multiplier(params, rec.points);
  return rec;
}

std::optional<CycleRecord> detect_cycle(const MapParamsd& params, const ExtComplexd& z0, const CycleSettings& s) {
  if (s.n_probe < 2 * s.max_period) {
    throw Error(ErrorKind::InvalidArgument, "n_probe must be at least twice the maximum period");
  }
  ExtComplexd z = z0;
  std::vector<ExtComplexd> probe;
  probe.reserve(s.n_probe);
  try {
    for (std::size_t i = 0; i < s.n_transient; ++i) z = eval_map(params, z);
    probe.push_back(z);
    while (probe.size() < s.n_probe) probe.push_back(eval_map(params, probe.back()));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::IndeterminateValue) return std::nullopt;
    throw;
  }

  // Smallest p with a run of >= 3p consecutive matches z_n ~ z_{n+p}; the
  // latest such run is used.
  std::size_t period = 0, run_end = 0;
  for (std::size_t p = 1; p <= s.max_period && period == 0; ++p) {
    std::size_t run = 0;
    for (std::size_t n = 0; n + p < probe.size(); ++n) {
      if (chordal_distance(probe[n], probe[n + p]) < s.match_tol) {
        if (++run >= 3 * p) {
          period = p;
          run_end = n + p;
        }
      } else {
        run = 0;
      }
    }
  }
  if (period == 0) return std::nullopt;

  std::vector<ExtComplexd> cyc(probe.begin() + static_cast<std::ptrdiff_t>(run_end + 1 - period),
                               probe.begin() + static_cast<std::ptrdiff_t>(run_end + 1));
  bool refined = false;
  const bool near_singular = std::any_of(cyc.begin(), cyc.end(), [&](const ExtComplexd& c) {
    return near_singular_distance(params, c) < 1e-6;
  });
  if (!near_singular) {
    try {
      if (auto c0 = refine_cycle_point(params, cyc.front().value(), period)) {
        auto candidate = orbit_points(params, ExtComplexd(*c0), period);
        if (closure_residual(params, candidate) <= closure_residual(params, cyc)) {
          cyc = std::move(candidate);
          refined = true;
        }
      }
    } catch (const Error&) {
    }
  }
  try {
    CycleRecord rec = verify_cycle(params, cyc, s.match_tol);
    rec.refined = refined;
    return rec;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotACycle) return std::nullopt;
    throw;
  }
}

std::vector<CycleRecord> deduplicate_cycles(const std::vector<CycleRecord>& cycles, double tol) {
  std::vector<CycleRecord> out;
  for (const auto& c : cycles) {
    const bool seen = std::any_of(out.begin(), out.end(), [&](const CycleRecord& o) {
      if (o.points.size() != c.points.size()) return false;
      for (std::size_t i = 0; i < c.points.size(); ++i)
        if (!(chordal_distance(o.points[i], c.points[i]) < tol)) return false;
      return true;
    });
    if (!seen) out.push_back(c);
  }
  return out;
}

SecondIterateSet second_iterate_fixed_set(const MapParamsd& p) {
  if (p.degenerate()) throw Error(ErrorKind::DegenerateMap, "second iterate needs gamma != 0");
  SecondIterateSet out;

  // f = N/D and f(f(z)) = (alpha N + beta D) D / (N (gamma N + delta D)).
  Polynomiald N(2), D(3), Z(2);
  N << p.beta(), p.alpha();
  D << Complexd(0), p.delta(), p.gamma();
  Z << Complexd(0), Complexd(1);
  const Polynomiald lhs = poly_multiply(Polynomiald(poly_add<double>(p.alpha() * N, p.beta() * D)), D);
  const Polynomiald rhs = poly_multiply(Z, poly_multiply(N, Polynomiald(poly_add<double>(p.gamma() * N, p.delta() * D))));
  out.numerator = poly_subtract(lhs, rhs);

  const double scale = std::max(lhs.cwiseAbs().maxCoeff(), rhs.cwiseAbs().maxCoeff());
  if (p.reduced() || out.numerator.cwiseAbs().maxCoeff() <= 1e-13 * scale) {
    out.status = SecondIterateStatus::IdenticallyPeriodic;
    return out;
  }

  // Solutions on the sphere number deg(f o f) + 1 = 5; the degree deficit of
  // the numerator is the multiplicity of infinity.
  constexpr Eigen::Index sphere_count = 5;
  const Eigen::Index deg = poly_degree(out.numerator, 1e-14);
  Eigen::Index low = 0;
  while (low < deg && out.numerator(low) == Complexd(0)) ++low;

  std::vector<Complexd> finite(static_cast<std::size_t>(low), Complexd(0));
  for (const Complexd& r : poly_roots(Polynomiald(out.numerator.segment(low, deg - low + 1)), 3)) finite.push_back(r);

  for (const Complexd& r : finite) out.all_roots.emplace_back(r);
  for (Eigen::Index k = deg; k < sphere_count; ++k) out.all_roots.push_back(ExtComplexd::infinity());

  const Polynomiald cubic = fixed_point_cubic(p);
  const auto [quotient, rem] = poly_divide(Polynomiald(out.numerator.head(deg + 1)), cubic);
  (void)quotient;
  out.deflation_residual = rem.cwiseAbs().maxCoeff() / out.numerator.cwiseAbs().maxCoeff();
  if (out.deflation_residual > 1e-6) {
    throw Error(ErrorKind::DeflationFailure,
                "fixed-point cubic does not divide the second-iterate numerator (relative remainder " +
                    std::to_string(out.deflation_residual) + ")");
  }

  std::vector<Complexd> left = finite;
  for (const Complexd& fp : poly_roots(cubic, 3)) {
    auto nearest = std::min_element(left.begin(), left.end(), [&](const Complexd& a, const Complexd& b) {
      return std::abs(a - fp) < std::abs(b - fp);
    });
    if (nearest == left.end()) {
      throw Error(ErrorKind::DeflationFailure, "fewer second-iterate roots than fixed points");
    }
    left.erase(nearest);
  }
  for (const Complexd& r : left) out.remainder.emplace_back(r);
  for (Eigen::Index k = deg; k < sphere_count; ++k) out.remainder.push_back(ExtComplexd::infinity());
  std::sort(out.remainder.begin(), out.remainder.end(), [](const auto& a, const auto& b) { return lexicographic_less(a, b); });

  for (const auto& r : out.remainder) {
    out.residuals.push_back(chordal_distance(eval_map(p, eval_map(p, r)), r));
  }
  return out;
}

}  // namespace ratdyn
