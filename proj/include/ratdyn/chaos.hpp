#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ratdyn/ext_complex.hpp"
#include "ratdyn/plane_map.hpp"

namespace ratdyn {

struct LyapunovEstimate {
  double lambda = 0;         // nats per iteration
  std::size_t n_used = 0;
  std::size_t n_skipped = 0;  // infinity or within 1e-12 of a pole
};

/// Mean of ln|f'(z_k)| over n_sample iterates following n_transient discarded
/// ones. Throws InsufficientSamples when more than 10% are skipped.
LyapunovEstimate lyapunov_estimate(const MapParamsd& params, const ExtComplexd& z0, std::size_t n_transient,
                                   std::size_t n_sample);

double lyapunov_exponent(const MapParamsd& params, const ExtComplexd& z0, std::size_t n_transient,
                         std::size_t n_sample);

struct BoxFit {
  std::vector<double> scales;        // box side lengths, decreasing
  std::vector<std::size_t> counts;   // occupied boxes per scale
  double slope = 0;
  double r2 = 0;
  bool degenerate = false;  // zero-area bounding box; a 1-D count along the long side
};

/// Box sides as fractions of the bounding-box diagonal: 2^-1 ... 2^-8.
std::vector<double> default_box_fractions();

/// Slope of log N(eps) against log(1/eps) by least squares. Throws
/// InsufficientSamples below `min_points` points and InvalidArgument for
/// fewer than 5 scales.
BoxFit box_counting_dimension(const std::vector<Complexd>& points,
                              const std::vector<double>& fractions = default_box_fractions(),
                              std::size_t min_points = 10000);

struct ChaosSettings {
  std::size_t n_transient = 1000;   // per start
  std::size_t n_sample = 10000;     // total over all starts
  std::size_t n_starts = 10;
  std::uint64_t z0_seed = 1;
  std::pair<double, double> dim_band{1.05, 1.95};
  double r2_min = 0.98;
};

struct ChaosReport {
  double lyapunov = 0;
  std::size_t n_transient = 0;
  std::size_t n_sample = 0;
  std::size_t n_skipped = 0;
  std::optional<double> box_dim;   // present when the fit is good enough
  BoxFit box_fit;
  std::optional<bool> fractal_like;  // present when lyapunov > 0
  ConditionSignature signature;
};

/// Post-transient sample points of every start (infinity dropped), in start order.
std::vector<std::vector<Complexd>> chaos_samples(const MapParamsd& params, const ChaosSettings& settings = {});

ChaosReport chaos_report(const MapParamsd& params, const ChaosSettings& settings = {});

/// True iff the box dimension exists and lies strictly inside the band.
/// Throws NotChaotic when lyapunov <= 0.
bool classify_fractal_like(const ChaosReport& report, std::pair<double, double> dim_band = {1.05, 1.95});

/// "Fractal-like only if (LT,LT,LT) and fractal-unlike only if (GT,GT,GT)";
/// vacuously true when no fractal classification exists.
bool conjecture_consistent(const ConditionSignature& signature, std::optional<bool> fractal_like);

struct ScanOutcome {
  ScanOutcome(std::size_t i, bool inj, const MapParamsd& p)
      : index(i), injected(inj), params(p), signature(condition_signature(p)) {}

  std::size_t index = 0;
  bool injected = false;
  MapParamsd params;
  ConditionSignature signature;
  std::optional<ChaosReport> report;
  std::string error;  // error name when the report could not be computed
  bool conjecture_consistent = true;
};

struct ScanSummary {
  // rows: fractal-like, fractal-unlike, not chaotic, failed; columns: LLL, GGG, other
  std::size_t table[4][3] = {};
  std::size_t conjecture_orientation_agree = 0;  // like with LLL, unlike with GGG
  std::size_t reversed_orientation_agree = 0;    // like with GGG, unlike with LLL
  std::size_t chaotic = 0;
  std::vector<std::size_t> counterexamples;      // indices violating the conjecture
  std::string orientation_note;
};

struct ScanResult {
  std::vector<ScanOutcome> outcomes;
  ScanSummary summary;
};

/// Reports for n_params parameter sets: the injected ones first, then draws
/// with components uniform on [0,1]^2 from `seed`.
ScanResult conjecture_scan(std::uint64_t seed, std::size_t n_params, const ChaosSettings& settings = {},
                           const std::vector<MapParamsd>& injected = {});

ScanSummary summarize_scan(const std::vector<ScanOutcome>& outcomes);

}  // namespace ratdyn
