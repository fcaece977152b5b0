#include "ratdyn/chaos.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "ratdyn/parallel.hpp"
#include "ratdyn/random.hpp"

namespace ratdyn {

namespace {

constexpr double pole_guard = 1e-12;

bool near_pole(const std::vector<Complexd>& ps, const Complexd& z) {
  return std::any_of(ps.begin(), ps.end(), [&](const Complexd& p) { return std::abs(z - p) < pole_guard; });
}

struct SampleRun {
  double log_sum = 0;
  std::size_t used = 0;
  std::size_t skipped = 0;
  std::vector<Complexd> points;
};

SampleRun sample_orbit(const MapParamsd& params, const ExtComplexd& z0, std::size_t n_transient,
                       std::size_t n_sample) {
  const std::vector<Complexd> ps = poles(params);
  ExtComplexd z = z0;
  for (std::size_t i = 0; i < n_transient; ++i) z = eval_map(params, z);
  SampleRun run;
  run.points.reserve(n_sample);
  for (std::size_t i = 0; i < n_sample; ++i) {
    if (z.is_infinite()) {
      ++run.skipped;
    } else {
      run.points.push_back(z.value());
      if (near_pole(ps, z.value())) {
        ++run.skipped;
      } else {
        run.log_sum += std::log(std::abs(eval_derivative(params, z)));
        ++run.used;
      }
    }
    z = eval_map(params, z);
  }
  return run;
}

LyapunovEstimate finish(double log_sum, std::size_t used, std::size_t skipped) {
  const std::size_t total = used + skipped;
  if (total == 0 || skipped * 10 > total) {
    throw Error(ErrorKind::InsufficientSamples, std::to_string(skipped) + " of " + std::to_string(total) +
                                                    " iterates at infinity or within 1e-12 of a pole");
  }
  return {log_sum / static_cast<double>(used), used, skipped};
}

}  // namespace

LyapunovEstimate lyapunov_estimate(const MapParamsd& params, const ExtComplexd& z0, std::size_t n_transient,
                                   std::size_t n_sample) {
  const SampleRun run = sample_orbit(params, z0, n_transient, n_sample);
  return finish(run.log_sum, run.used, run.skipped);
}

double lyapunov_exponent(const MapParamsd& params, const ExtComplexd& z0, std::size_t n_transient,
                         std::size_t n_sample) {
  return lyapunov_estimate(params, z0, n_transient, n_sample).lambda;
}

std::vector<double> default_box_fractions() {
  std::vector<double> f;
  for (int k = 1; k <= 8; ++k) f.push_back(std::ldexp(1.0, -k));
  return f;
}

BoxFit box_counting_dimension(const std::vector<Complexd>& points, const std::vector<double>& fractions,
                              std::size_t min_points) {
  if (points.size() < min_points) {
    throw Error(ErrorKind::InsufficientSamples,
                std::to_string(points.size()) + " points, need " + std::to_string(min_points));
  }
  if (fractions.size() < 5) throw Error(ErrorKind::InvalidArgument, "box counting needs at least 5 scales");
  double xmin = std::numeric_limits<double>::infinity(), ymin = xmin;
  double xmax = -xmin, ymax = -xmin;
  for (const auto& z : points) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorKind::InvalidArgument, "box counting needs finite points");
    }
    xmin = std::min(xmin, z.real());
    xmax = std::max(xmax, z.real());
    ymin = std::min(ymin, z.imag());
    ymax = std::max(ymax, z.imag());
  }
  const double diag = std::hypot(xmax - xmin, ymax - ymin);

  BoxFit fit;
  fit.degenerate = xmax == xmin || ymax == ymin;
  if (diag == 0) {
    fit.scales = fractions;
    fit.counts.assign(fractions.size(), 1);
    fit.slope = 0;
    fit.r2 = 1;
    return fit;
  }

  std::vector<std::uint64_t> keys(points.size());
  for (double frac : fractions) {
    const double eps = frac * diag;
    for (std::size_t k = 0; k < points.size(); ++k) {
      const auto i = static_cast<std::uint64_t>(std::floor((points[k].real() - xmin) / eps));
      const auto j = static_cast<std::uint64_t>(std::floor((points[k].imag() - ymin) / eps));
      keys[k] = (i << 32) | j;
    }
    std::sort(keys.begin(), keys.end());
    fit.scales.push_back(eps);
    fit.counts.push_back(static_cast<std::size_t>(std::unique(keys.begin(), keys.end()) - keys.begin()));
  }

  const auto n = static_cast<Eigen::Index>(fit.scales.size());
  Eigen::MatrixXd X(n, 2);
  Eigen::VectorXd y(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    X(k, 0) = 1;
    X(k, 1) = std::log(1.0 / fit.scales[static_cast<std::size_t>(k)]);
    y(k) = std::log(static_cast<double>(fit.counts[static_cast<std::size_t>(k)]));
  }
  const Eigen::Vector2d coef = X.colPivHouseholderQr().solve(y);
  fit.slope = coef(1);
  const double ss_res = (y - X * coef).squaredNorm();
  const double ss_tot = (y.array() - y.mean()).matrix().squaredNorm();
  fit.r2 = ss_tot > 0 ? 1 - ss_res / ss_tot : (ss_res == 0 ? 1.0 : 0.0);
  return fit;
}

std::vector<std::vector<Complexd>> chaos_samples(const MapParamsd& params, const ChaosSettings& s) {
  const auto starts = sample_initial_values(s.z0_seed, s.n_starts);
  const std::size_t per_start = s.n_starts ? s.n_sample / s.n_starts : 0;
  std::vector<std::vector<Complexd>> out;
  for (const auto& z0 : starts) out.push_back(sample_orbit(params, z0, s.n_transient, per_start).points);
  return out;
}

ChaosReport chaos_report(const MapParamsd& params, const ChaosSettings& s) {
  if (s.n_starts == 0) throw Error(ErrorKind::InvalidArgument, "n_starts must be positive");
  const auto starts = sample_initial_values(s.z0_seed, s.n_starts);
  const std::size_t per_start = s.n_sample / s.n_starts;

  double log_sum = 0;
  std::size_t used = 0, skipped = 0;
  std::vector<Complexd> cloud;
  cloud.reserve(per_start * s.n_starts);
  for (const auto& z0 : starts) {
    SampleRun run = sample_orbit(params, z0, s.n_transient, per_start);
    log_sum += run.log_sum;
    used += run.used;
    skipped += run.skipped;
    cloud.insert(cloud.end(), run.points.begin(), run.points.end());
  }
  const LyapunovEstimate est = finish(log_sum, used, skipped);

  ChaosReport r;
  r.lyapunov = est.lambda;
  r.n_transient = s.n_transient;
  r.n_sample = per_start * s.n_starts;
  r.n_skipped = est.n_skipped;
  r.signature = condition_signature(params);
  try {
    r.box_fit = box_counting_dimension(cloud, default_box_fractions(), std::min<std::size_t>(10000, r.n_sample));
    if (r.box_fit.r2 >= s.r2_min && r.box_fit.scales.size() >= 5) r.box_dim = r.box_fit.slope;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InsufficientSamples) throw;
  }
  if (r.lyapunov > 0) r.fractal_like = classify_fractal_like(r, s.dim_band);
  return r;
}

bool classify_fractal_like(const ChaosReport& report, std::pair<double, double> band) {
  if (!(report.lyapunov > 0)) {
    throw Error(ErrorKind::NotChaotic, "lyapunov exponent " + std::to_string(report.lyapunov) + " <= 0");
  }
  return report.box_dim && *report.box_dim > band.first && *report.box_dim < band.second;
}

bool conjecture_consistent(const ConditionSignature& sig, std::optional<bool> fractal_like) {
  if (!fractal_like) return true;
  return *fractal_like ? sig.all(Comparison::LT) : sig.all(Comparison::GT);
}

ScanSummary summarize_scan(const std::vector<ScanOutcome>& outcomes) {
  ScanSummary s;
  for (const auto& o : outcomes) {
    const int col = o.signature.all(Comparison::LT) ? 0 : o.signature.all(Comparison::GT) ? 1 : 2;
    int row;
    if (!o.report) {
      row = 3;
    } else if (!o.report->fractal_like) {
      row = 2;
    } else {
      row = *o.report->fractal_like ? 0 : 1;
      ++s.chaotic;
      if ((row == 0 && col == 0) || (row == 1 && col == 1)) ++s.conjecture_orientation_agree;
      if ((row == 0 && col == 1) || (row == 1 && col == 0)) ++s.reversed_orientation_agree;
    }
    ++s.table[row][col];
    if (!o.conjecture_consistent) s.counterexamples.push_back(o.index);
  }
  s.orientation_note =
      "orientation conflict: the conjecture statement pairs fractal-like with (LT,LT,LT) and fractal-unlike with "
      "(GT,GT,GT), while the tabulated reference rows label the (GT,GT,GT) rows fractal-like and the (LT,LT,LT) "
      "rows fractal-unlike; observed chaotic outcomes agreeing with the conjecture orientation: " +
      std::to_string(s.conjecture_orientation_agree) + ", with the reversed orientation: " +
      std::to_string(s.reversed_orientation_agree) + ", of " + std::to_string(s.chaotic);
  return s;
}

ScanResult conjecture_scan(std::uint64_t seed, std::size_t n_params, const ChaosSettings& settings,
                           const std::vector<MapParamsd>& injected) {
  std::vector<ScanOutcome> todo;
  todo.reserve(n_params);
  Sampler sampler(seed);
  for (std::size_t i = 0; i < n_params; ++i) {
    if (i < injected.size()) {
      todo.emplace_back(i, true, injected[i]);
    } else {
      todo.emplace_back(i, false, sample_params(sampler));
    }
  }
  ScanResult result;
  result.outcomes = parallel_map(todo.size(), [&](std::size_t i) {
    ScanOutcome o = todo[i];
    try {
      o.report = chaos_report(o.params, settings);
    } catch (const Error& e) {
      o.error = std::string(e.name());
    }
    o.conjecture_consistent = conjecture_consistent(o.signature, o.report ? o.report->fractal_like : std::nullopt);
    return o;
  });
  result.summary = summarize_scan(result.outcomes);
  return result;
}

}  // namespace ratdyn
