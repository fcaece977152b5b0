#include "ratdyn/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <regex>
#include <sstream>

namespace ratdyn {

namespace {

const std::string kNumber = R"((?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)";
const std::regex kFull("^([+-]?" + kNumber + ")([+-])(" + kNumber + ")?[ij]$");
const std::regex kReal("^([+-]?" + kNumber + ")$");
const std::regex kImag("^([+-]?)(" + kNumber + ")?[ij]$");

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& s) {
  double v = 0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw Error(ErrorKind::ParseError, "bad number '" + s + "'");
  return v;
}

std::string format_double(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::string enum_text(const Json& j, const char* what) {
  if (!j.is_string()) throw Error(ErrorKind::ParseError, std::string(what) + " must be a string");
  return j.get<std::string>();
}

Comparison comparison_from(const Json& j) {
  const std::string s = enum_text(j, "comparison");
  if (s == "LT") return Comparison::LT;
  if (s == "EQ") return Comparison::EQ;
  if (s == "GT") return Comparison::GT;
  throw Error(ErrorKind::ParseError, "unknown comparison '" + s + "'");
}

Stability stability_from(const Json& j) {
  const std::string s = enum_text(j, "stability");
  for (Stability v : {Stability::Sink, Stability::Source, Stability::NonHyperbolic})
    if (s == to_string(v)) return v;
  throw Error(ErrorKind::ParseError, "unknown stability '" + s + "'");
}

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? to_json(*v) : Json(nullptr);
}

Json ext_list(const std::vector<ExtComplexd>& pts) {
  Json a = Json::array();
  for (const auto& z : pts) a.push_back(to_json(z));
  return a;
}

std::vector<ExtComplexd> ext_list_from(const Json& j) {
  std::vector<ExtComplexd> out;
  for (const auto& e : j) out.push_back(ext_from_json(e));
  return out;
}

}  // namespace

Complexd parse_complex(std::string_view text) {
  const std::string s = trim(text);
  std::smatch m;
  if (std::regex_match(s, m, kFull)) {
    const double re = to_double(m[1]);
    const double mag = m[3].matched ? to_double(m[3]) : 1.0;
    return {re, m[2] == "-" ? -mag : mag};
  }
  if (std::regex_match(s, m, kReal)) return {to_double(m[1]), 0.0};
  if (std::regex_match(s, m, kImag)) {
    const double mag = m[2].matched ? to_double(m[2]) : 1.0;
    return {0.0, m[1] == "-" ? -mag : mag};
  }
  throw Error(ErrorKind::ParseError, "cannot parse complex number '" + s + "'");
}

ExtComplexd parse_ext(std::string_view text) {
  const std::string s = trim(text);
  if (s == "inf" || s == "Infinity" || s == "infinity") return ExtComplexd::infinity();
  return ExtComplexd(parse_complex(s));
}

std::vector<Complexd> parse_complex_list(std::string_view text) {
  std::vector<Complexd> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(parse_complex(text.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

MapParamsd parse_params(std::string_view text, bool allow_degenerate) {
  const auto c = parse_complex_list(text);
  if (c.size() != 4) {
    throw Error(ErrorKind::ParseError,
                "expected 4 comma-separated components alpha,beta,gamma,delta, got " + std::to_string(c.size()));
  }
  MapParamsd::Options opt;
  opt.allow_degenerate = allow_degenerate;
  return MapParamsd(c[0], c[1], c[2], c[3], opt);
}

std::string format_complex(const Complexd& z, int digits) {
  std::string im = format_double(std::abs(z.imag()), digits);
  const bool neg = std::signbit(z.imag());
  return format_double(z.real(), digits) + (neg ? "-" : "+") + im + "i";
}

std::string format_ext(const ExtComplexd& z, int digits) {
  return z.is_infinite() ? "inf" : format_complex(z.value(), digits);
}

Json to_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double double_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw Error(ErrorKind::ParseError, "expected a number, got " + j.dump());
}

Json to_json(const Complexd& z) { return {{"re", to_json(z.real())}, {"im", to_json(z.imag())}}; }

Json to_json(const ExtComplexd& z) { return z.is_infinite() ? Json("inf") : to_json(z.value()); }

Json to_json(const MapParamsd& p) {
  return {{"alpha", to_json(p.alpha())}, {"beta", to_json(p.beta())}, {"gamma", to_json(p.gamma())},
          {"delta", to_json(p.delta())}};
}

Json to_json(const ConditionSignature& s) {
  return {{"cmp_ag", to_string(s.cmp_ag)},
          {"cmp_bd", to_string(s.cmp_bd)},
          {"cmp_sum", to_string(s.cmp_sum)},
          {"eq_tol", s.eq_tol},
          {"moduli",
           {{"alpha", s.moduli.alpha},
            {"beta", s.moduli.beta},
            {"gamma", s.moduli.gamma},
            {"delta", s.moduli.delta},
            {"alpha_plus_beta", s.moduli.alpha_beta},
            {"gamma_plus_delta", s.moduli.gamma_delta}}}};
}

Json to_json(const FixedPointRecord& r) {
  return {{"index", r.index},
          {"z_bar", to_json(r.z_bar)},
          {"multiplier", to_json(r.multiplier)},
          {"multiplier_abs", to_json(r.multiplier_abs)},
          {"stability", to_string(r.stability)},
          {"residual", to_json(r.residual)},
          {"class_tol", r.class_tol},
          {"multiplicity", r.multiplicity},
          {"ill_conditioned", r.ill_conditioned},
          {"spurious", r.spurious}};
}

Json to_json(const TerminationReason& t) {
  Json j = {{"reason", t.str()}};
  switch (t.kind) {
    case Termination::ConvergedToPoint: j["kind"] = "ConvergedToPoint"; break;
    case Termination::ConvergedToInfinity: j["kind"] = "ConvergedToInfinity"; break;
    case Termination::PeriodicDetected: j["kind"] = "PeriodicDetected"; break;
    case Termination::MaxIterations: j["kind"] = "MaxIterations"; break;
    case Termination::HitIndeterminate: j["kind"] = "HitIndeterminate"; break;
  }
  j["period"] = t.period;
  return j;
}

Json to_json(const OrbitSettings& s) {
  return {{"max_iter", s.max_iter},       {"conv_tol", s.conv_tol},     {"record_stride", s.record_stride},
          {"window", s.window},           {"max_period", s.max_period}, {"dense_tail", s.dense_tail},
          {"period_check_interval", s.period_check_interval}};
}

Json to_json(const Orbit& o) {
  Json idx = Json::array();
  for (auto i : o.indices) idx.push_back(i);
  return {{"params", to_json(o.params)},
          {"z0", to_json(o.z0)},
          {"n_total", o.n_total},
          {"stride", o.stride},
          {"termination", to_json(o.termination)},
          {"limit", optional_json(o.limit)},
          {"convergence_iters", o.convergence_iters ? Json(*o.convergence_iters) : Json(nullptr)},
          {"settings", to_json(o.settings)},
          {"indices", idx},
          {"points", ext_list(o.points)}};
}

Json to_json(const OrbitClass& c) {
  return {{"kind", to_string(c.kind)}, {"label", c.str()}, {"fixed_point_index", c.fixed_point_index},
          {"period", c.period}};
}

Json to_json(const CycleRecord& c) {
  return {{"points", ext_list(c.points)},
          {"prime_period", c.prime_period},
          {"residual", to_json(c.residual)},
          {"multiplier", optional_json(c.multiplier)},
          {"multiplier_abs", c.multiplier ? to_json(std::abs(*c.multiplier)) : Json(nullptr)},
          {"refined", c.refined}};
}

Json to_json(const SecondIterateSet& s) {
  Json j = {{"status", s.status == SecondIterateStatus::Roots ? "Roots" : "IdenticallyPeriodic"}};
  Json num = Json::array();
  for (Eigen::Index k = 0; k < s.numerator.size(); ++k) num.push_back(to_json(Complexd(s.numerator(k))));
  j["numerator"] = num;
  j["all_roots"] = ext_list(s.all_roots);
  j["remainder"] = ext_list(s.remainder);
  Json res = Json::array();
  for (double r : s.residuals) res.push_back(to_json(r));
  j["residuals"] = res;
  j["deflation_residual"] = to_json(s.deflation_residual);
  return j;
}

Json to_json(const BoxFit& f) {
  Json scales = Json::array(), counts = Json::array();
  for (double s : f.scales) scales.push_back(s);
  for (auto c : f.counts) counts.push_back(c);
  return {{"scales", scales}, {"counts", counts}, {"slope", to_json(f.slope)}, {"r2", to_json(f.r2)},
          {"degenerate", f.degenerate}};
}

Json to_json(const ChaosReport& r) {
  return {{"lyapunov", to_json(r.lyapunov)},
          {"n_transient", r.n_transient},
          {"n_sample", r.n_sample},
          {"n_skipped", r.n_skipped},
          {"box_dim", r.box_dim ? to_json(*r.box_dim) : Json(nullptr)},
          {"box_fit", to_json(r.box_fit)},
          {"fractal_like", r.fractal_like ? Json(*r.fractal_like) : Json(nullptr)},
          {"signature", to_json(r.signature)}};
}

Json to_json(const ScanOutcome& o) {
  return {{"index", o.index},
          {"injected", o.injected},
          {"params", to_json(o.params)},
          {"signature", to_json(o.signature)},
          {"lyapunov", o.report ? to_json(o.report->lyapunov) : Json(nullptr)},
          {"box_dim", o.report && o.report->box_dim ? to_json(*o.report->box_dim) : Json(nullptr)},
          {"fractal_like", o.report && o.report->fractal_like ? Json(*o.report->fractal_like) : Json(nullptr)},
          {"conjecture_consistent", o.conjecture_consistent},
          {"error", o.error.empty() ? Json(nullptr) : Json(o.error)}};
}

Json to_json(const ScanSummary& s) {
  static const char* rows[] = {"fractal_like", "fractal_unlike", "not_chaotic", "failed"};
  static const char* cols[] = {"LT_LT_LT", "GT_GT_GT", "other"};
  Json table = Json::object();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 3; ++c) table[rows[r]][cols[c]] = s.table[r][c];
  return {{"table", table},
          {"chaotic", s.chaotic},
          {"conjecture_orientation_agree", s.conjecture_orientation_agree},
          {"reversed_orientation_agree", s.reversed_orientation_agree},
          {"counterexamples", s.counterexamples},
          {"orientation_note", s.orientation_note}};
}

Complexd complex_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im")) {
    throw Error(ErrorKind::ParseError, "expected {\"re\", \"im\"}, got " + j.dump());
  }
  return {double_from_json(j.at("re")), double_from_json(j.at("im"))};
}

ExtComplexd ext_from_json(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return ExtComplexd::infinity();
  return ExtComplexd(complex_from_json(j));
}

MapParamsd params_from_json(const Json& j) {
  const Complexd g = complex_from_json(j.at("gamma"));
  MapParamsd::Options opt;
  opt.allow_degenerate = g == Complexd(0);
  return MapParamsd(complex_from_json(j.at("alpha")), complex_from_json(j.at("beta")), g,
                    complex_from_json(j.at("delta")), opt);
}

ConditionSignature signature_from_json(const Json& j) {
  ConditionSignature s;
  s.cmp_ag = comparison_from(j.at("cmp_ag"));
  s.cmp_bd = comparison_from(j.at("cmp_bd"));
  s.cmp_sum = comparison_from(j.at("cmp_sum"));
  s.eq_tol = j.at("eq_tol").get<double>();
  const Json& m = j.at("moduli");
  s.moduli.alpha = m.at("alpha").get<double>();
  s.moduli.beta = m.at("beta").get<double>();
  s.moduli.gamma = m.at("gamma").get<double>();
  s.moduli.delta = m.at("delta").get<double>();
  s.moduli.alpha_beta = m.at("alpha_plus_beta").get<double>();
  s.moduli.gamma_delta = m.at("gamma_plus_delta").get<double>();
  return s;
}

FixedPointRecord fixed_point_from_json(const Json& j) {
  FixedPointRecord r;
  r.index = j.at("index").get<int>();
  r.z_bar = complex_from_json(j.at("z_bar"));
  r.multiplier = complex_from_json(j.at("multiplier"));
  r.multiplier_abs = double_from_json(j.at("multiplier_abs"));
  r.stability = stability_from(j.at("stability"));
  r.residual = double_from_json(j.at("residual"));
  r.class_tol = j.at("class_tol").get<double>();
  r.multiplicity = j.at("multiplicity").get<int>();
  r.ill_conditioned = j.at("ill_conditioned").get<bool>();
  r.spurious = j.at("spurious").get<bool>();
  return r;
}

TerminationReason termination_from_json(const Json& j) {
  const std::string k = enum_text(j.at("kind"), "termination");
  TerminationReason t;
  t.period = j.at("period").get<std::size_t>();
  if (k == "ConvergedToPoint") t.kind = Termination::ConvergedToPoint;
  else if (k == "ConvergedToInfinity") t.kind = Termination::ConvergedToInfinity;
  else if (k == "PeriodicDetected") t.kind = Termination::PeriodicDetected;
  else if (k == "MaxIterations") t.kind = Termination::MaxIterations;
  else if (k == "HitIndeterminate") t.kind = Termination::HitIndeterminate;
  else throw Error(ErrorKind::ParseError, "unknown termination '" + k + "'");
  return t;
}

OrbitSettings orbit_settings_from_json(const Json& j) {
  OrbitSettings s;
  s.max_iter = j.at("max_iter").get<std::size_t>();
  s.conv_tol = j.at("conv_tol").get<double>();
  s.record_stride = j.at("record_stride").get<std::size_t>();
  s.window = j.at("window").get<std::size_t>();
  s.max_period = j.at("max_period").get<std::size_t>();
  s.dense_tail = j.at("dense_tail").get<std::size_t>();
  s.period_check_interval = j.at("period_check_interval").get<std::size_t>();
  return s;
}

Orbit orbit_from_json(const Json& j) {
  Orbit o(params_from_json(j.at("params")), ext_from_json(j.at("z0")));
  o.n_total = j.at("n_total").get<std::size_t>();
  o.stride = j.at("stride").get<std::size_t>();
  o.termination = termination_from_json(j.at("termination"));
  if (!j.at("limit").is_null()) o.limit = ext_from_json(j.at("limit"));
  if (!j.at("convergence_iters").is_null()) o.convergence_iters = j.at("convergence_iters").get<std::size_t>();
  o.settings = orbit_settings_from_json(j.at("settings"));
  o.indices = j.at("indices").get<std::vector<std::size_t>>();
  o.points = ext_list_from(j.at("points"));
  if (o.indices.size() != o.points.size()) throw Error(ErrorKind::ParseError, "indices and points differ in length");
  return o;
}

CycleRecord cycle_from_json(const Json& j) {
  CycleRecord c;
  c.points = ext_list_from(j.at("points"));
  c.prime_period = j.at("prime_period").get<std::size_t>();
  c.residual = double_from_json(j.at("residual"));
  if (!j.at("multiplier").is_null()) c.multiplier = complex_from_json(j.at("multiplier"));
  c.refined = j.at("refined").get<bool>();
  return c;
}

BoxFit box_fit_from_json(const Json& j) {
  BoxFit f;
  f.scales = j.at("scales").get<std::vector<double>>();
  f.counts = j.at("counts").get<std::vector<std::size_t>>();
  f.slope = double_from_json(j.at("slope"));
  f.r2 = double_from_json(j.at("r2"));
  f.degenerate = j.at("degenerate").get<bool>();
  return f;
}

ChaosReport chaos_report_from_json(const Json& j) {
  ChaosReport r;
  r.lyapunov = double_from_json(j.at("lyapunov"));
  r.n_transient = j.at("n_transient").get<std::size_t>();
  r.n_sample = j.at("n_sample").get<std::size_t>();
  r.n_skipped = j.at("n_skipped").get<std::size_t>();
  if (!j.at("box_dim").is_null()) r.box_dim = double_from_json(j.at("box_dim"));
  r.box_fit = box_fit_from_json(j.at("box_fit"));
  if (!j.at("fractal_like").is_null()) r.fractal_like = j.at("fractal_like").get<bool>();
  r.signature = signature_from_json(j.at("signature"));
  return r;
}

void write_points_csv(std::ostream& os, const std::vector<std::size_t>& indices,
                      const std::vector<ExtComplexd>& points) {
  os << "n,re,im\r\n";
  for (std::size_t k = 0; k < points.size(); ++k) {
    os << indices[k] << ',';
    if (points[k].is_infinite()) {
      os << "inf,inf";
    } else {
      os << format_double(points[k].real(), 17) << ',' << format_double(points[k].imag(), 17);
    }
    os << "\r\n";
  }
}

void write_orbit_csv(std::ostream& os, const Orbit& orbit) { write_points_csv(os, orbit.indices, orbit.points); }

std::vector<std::pair<std::size_t, ExtComplexd>> read_points_csv(std::istream& is) {
  std::vector<std::pair<std::size_t, ExtComplexd>> out;
  std::string line;
  if (!std::getline(is, line)) throw Error(ErrorKind::ParseError, "empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "n,re,im") throw Error(ErrorKind::ParseError, "CSV header must be n,re,im");
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string n, re, im;
    if (!std::getline(ss, n, ',') || !std::getline(ss, re, ',') || !std::getline(ss, im)) {
      throw Error(ErrorKind::ParseError, "CSV row needs three fields: " + line);
    }
    const auto idx = static_cast<std::size_t>(to_double(n));
    if (re == "inf" && im == "inf") {
      out.emplace_back(idx, ExtComplexd::infinity());
    } else {
      out.emplace_back(idx, ExtComplexd(Complexd(to_double(re), to_double(im))));
    }
  }
  return out;
}

}  // namespace ratdyn
