#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ratdyn/io.hpp"
#include "ratdyn/orbit.hpp"

namespace ratdyn {

inline constexpr const char* kToolVersion = "0.1.0";

/// One CLI invocation: enough to replay it and compare outputs.
struct RunRecord {
  std::string command;
  std::optional<MapParamsd> params;
  std::map<std::string, std::string> settings;  // flag name (without dashes) -> value
  Json outputs;
  std::string tool_version = kToolVersion;
  std::string timestamp;  // UTC ISO-8601
};

Json to_json(const RunRecord& r);
RunRecord run_record_from_json(const Json& j);

/// Appends one JSON line. Throws IoError.
void append_run_log(const std::string& path, const RunRecord& record);
std::vector<RunRecord> read_run_log(const std::string& path);

/// argv (without the program name) that reruns the recorded command with its
/// machine output on standard output.
std::vector<std::string> replay_args(const RunRecord& record);

std::string utc_timestamp();

enum class Prediction { ConvergeToZero, Diverge, Constant };
const char* to_string(Prediction p);

/// Real-line prediction from the |alpha+beta| vs |gamma+delta| comparison.
Prediction predict_from_signature(const ConditionSignature& s);

struct CriteriaReport {
  ConditionSignature signature;
  Prediction prediction = Prediction::Constant;
  std::size_t n_seeds = 0;
  std::uint64_t seed = 0;
  std::map<std::string, std::size_t> class_counts;  // OrbitClassKind name -> count
  std::size_t unbounded = 0;          // orbits reaching infinity or |z| > 1e6
  std::size_t converged_to_zero = 0;
  std::size_t constant = 0;
  bool agreement = false;
  std::string verdict;
  std::vector<OrbitClass> classes;    // per seed, in seed order
};

CriteriaReport verify_criteria(const MapParamsd& params, std::size_t n_seeds, std::uint64_t seed,
                               const OrbitSettings& settings = {}, double eq_tol = 1e-9);

Json to_json(const CriteriaReport& r);

enum class PointStyle { Pixel, Square3 };

struct Viewport {
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  friend bool operator==(const Viewport&, const Viewport&) = default;
};

struct PlotSpec {
  int width = 800;
  int height = 800;
  std::optional<Viewport> viewport;  // empty means auto: bounding box plus 5% margin
  PointStyle style = PointStyle::Pixel;
};

struct RenderInfo {
  Viewport viewport;
  std::size_t dropped_infinite = 0;
  std::size_t clipped = 0;
  std::vector<std::size_t> per_seed_counts;  // finite points per seed
  std::vector<std::uint8_t> pixels;          // RGB, row-major, top row first
  int width = 0, height = 0;
};

inline constexpr std::array<std::array<std::uint8_t, 3>, 10> kPalette{{{31, 119, 180},
                                                                     {255, 127, 14},
                                                                     {44, 160, 44},
                                                                     {214, 39, 40},
                                                                     {148, 103, 189},
                                                                     {140, 86, 75},
                                                                     {227, 119, 194},
                                                                     {127, 127, 127},
                                                                     {188, 189, 34},
                                                                     {23, 190, 207}}};
inline constexpr std::array<std::uint8_t, 3> kBackground{255, 255, 255};

Viewport auto_viewport(const std::vector<std::vector<ExtComplexd>>& points_by_seed);

/// Rasterises in memory. Throws EmptyPlot when no point is finite and
/// InvalidArgument for sizes outside [16, 8192].
RenderInfo rasterize(const std::vector<std::vector<ExtComplexd>>& points_by_seed, const PlotSpec& spec);

/// Binary PPM (P6) bytes of a rasterised image.
std::string ppm_bytes(const RenderInfo& info);

/// Writes `path` (PPM) and `path + ".json"` (sidecar). Throws IoError.
RenderInfo render_scatter(const std::vector<std::vector<ExtComplexd>>& points_by_seed, const PlotSpec& spec,
                          const std::string& path);

Json sidecar_json(const RenderInfo& info, const PlotSpec& spec);

/// Entry point of the ratdyn tool; `args` excludes the program name.
/// Returns 0 on success, 1 on a domain error and 2 on a usage error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ratdyn
