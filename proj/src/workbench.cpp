#include "ratdyn/workbench.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>

#include "ratdyn/random.hpp"

namespace ratdyn {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json to_json(const RunRecord& r) {
  return {{"command", r.command},
          {"params", r.params ? to_json(*r.params) : Json(nullptr)},
          {"settings", r.settings},
          {"outputs", r.outputs},
          {"tool_version", r.tool_version},
          {"timestamp", r.timestamp}};
}

RunRecord run_record_from_json(const Json& j) {
  RunRecord r;
  r.command = j.at("command").get<std::string>();
  if (!j.at("params").is_null()) r.params = params_from_json(j.at("params"));
  r.settings = j.at("settings").get<std::map<std::string, std::string>>();
  r.outputs = j.at("outputs");
  r.tool_version = j.at("tool_version").get<std::string>();
  r.timestamp = j.at("timestamp").get<std::string>();
  return r;
}

void append_run_log(const std::string& path, const RunRecord& record) {
  std::ofstream f(path, std::ios::app);
  if (!f) throw Error(ErrorKind::IoError, "cannot open run log " + path);
  f << to_json(record).dump() << '\n';
  if (!f) throw Error(ErrorKind::IoError, "cannot write run log " + path);
}

std::vector<RunRecord> read_run_log(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::IoError, "cannot open run log " + path);
  std::vector<RunRecord> out;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    try {
      out.push_back(run_record_from_json(Json::parse(line)));
    } catch (const Json::exception& e) {
      throw Error(ErrorKind::ParseError, std::string("run log line: ") + e.what());
    }
  }
  return out;
}

std::vector<std::string> replay_args(const RunRecord& record) {
  std::vector<std::string> args{record.command};
  if (record.params) {
    const auto& p = *record.params;
    args.push_back("--params");
    args.push_back(format_complex(p.alpha()) + "," + format_complex(p.beta()) + "," + format_complex(p.gamma()) +
                   "," + format_complex(p.delta()));
    if (p.degenerate()) args.push_back("--degenerate");
  }
  for (const auto& [key, value] : record.settings) {
    if (value.empty()) {
      args.push_back("--" + key);
      continue;
    }
    std::size_t start = 0;
    while (true) {
      const auto sep = value.find(';', start);
      args.push_back("--" + key);
      args.push_back(value.substr(start, sep == std::string::npos ? sep : sep - start));
      if (sep == std::string::npos) break;
      start = sep + 1;
    }
  }
  args.push_back("--json");
  return args;
}

const char* to_string(Prediction p) {
  switch (p) {
    case Prediction::ConvergeToZero: return "converges to zero";
    case Prediction::Diverge: return "diverges";
    case Prediction::Constant: return "constant";
  }
  return "?";
}

Prediction predict_from_signature(const ConditionSignature& s) {
  switch (s.cmp_sum) {
    case Comparison::LT: return Prediction::ConvergeToZero;
    case Comparison::GT: return Prediction::Diverge;
    case Comparison::EQ: return Prediction::Constant;
  }
  return Prediction::Constant;
}

namespace {

bool is_unbounded(const Orbit& o) {
  return std::any_of(o.points.begin(), o.points.end(),
                     [](const ExtComplexd& z) { return z.is_infinite() || std::abs(z.value()) > 1e6; });
}

}  // namespace

CriteriaReport verify_criteria(const MapParamsd& params, std::size_t n_seeds, std::uint64_t seed,
                               const OrbitSettings& settings, double eq_tol) {
  if (n_seeds < 1) throw Error(ErrorKind::InvalidArgument, "n_seeds must be at least 1");
  CriteriaReport r;
  r.signature = condition_signature(params, eq_tol);
  r.prediction = predict_from_signature(r.signature);
  r.n_seeds = n_seeds;
  r.seed = seed;
  const auto fps = fixed_points(params);
  const auto orbits = iterate_orbits(params, sample_initial_values(seed, n_seeds), settings);
  for (const auto& o : orbits) {
    const OrbitClass c = classify_orbit(o, fps);
    r.classes.push_back(c);
    ++r.class_counts[to_string(c.kind)];
    if (is_unbounded(o)) ++r.unbounded;
    if (c.kind == OrbitClassKind::Constant) ++r.constant;
    if (o.limit && o.limit->is_finite() && std::abs(o.limit->value()) < 1e-6) ++r.converged_to_zero;
  }
  const std::size_t n = n_seeds;
  std::size_t matching = 0;
  switch (r.prediction) {
    case Prediction::ConvergeToZero: matching = r.converged_to_zero; break;
    case Prediction::Diverge: matching = r.unbounded; break;
    case Prediction::Constant: matching = r.constant; break;
  }
  r.agreement = matching == n;
  r.verdict = std::string(r.agreement ? "agreement" : "contradiction") + ": prediction '" + to_string(r.prediction) +
              "' from " + r.signature.str() + "; observed " + std::to_string(r.unbounded) + "/" + std::to_string(n) +
              " unbounded, " + std::to_string(r.converged_to_zero) + "/" + std::to_string(n) +
              " converging to zero, " + std::to_string(r.constant) + "/" + std::to_string(n) + " constant";
  return r;
}

Json to_json(const CriteriaReport& r) {
  Json classes = Json::array();
  for (const auto& c : r.classes) classes.push_back(to_json(c));
  return {{"signature", to_json(r.signature)},
          {"prediction", to_string(r.prediction)},
          {"n_seeds", r.n_seeds},
          {"seed", r.seed},
          {"class_counts", r.class_counts},
          {"unbounded", r.unbounded},
          {"converged_to_zero", r.converged_to_zero},
          {"constant", r.constant},
          {"agreement", r.agreement},
          {"verdict", r.verdict},
          {"classes", classes}};
}

}  // namespace ratdyn
