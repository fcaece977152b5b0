#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "ratdyn/random.hpp"
#include "ratdyn/workbench.hpp"

namespace ratdyn {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
  const char* env = std::getenv("RATDYN_SEED");
  if (env == nullptr || *env == '\0') return 1;
  std::uint64_t v = 0;
  const char* end = env + std::char_traits<char>::length(env);
  const auto [ptr, ec] = std::from_chars(env, end, v);
  if (ec != std::errc() || ptr != end) throw UsageError("RATDYN_SEED: not an unsigned integer");
  return v;
}

struct Common {
  std::string params_text;
  bool degenerate = false;
  std::optional<std::string> json_path;
  bool json_stdout = false;
  std::string csv_path;
  std::string log_path;
  std::uint64_t seed = 1;
};

struct Command {
  explicit Command(CLI::App* a) : app(a) {}
  CLI::App* app = nullptr;
  Common common;
  bool has_params = false;
};

void add_params(Command& c) {
  c.has_params = true;
  c.app->add_option("--params", c.common.params_text, "alpha,beta,gamma,delta as re+imi")->required();
  c.app->add_flag("--degenerate", c.common.degenerate, "allow gamma = 0 (Moebius family)");
}

void add_outputs(Command& c, bool csv) {
  c.app->add_option("--json", c.common.json_path, "write JSON to PATH, or to standard output when PATH is omitted")
      ->expected(0, 1);
  if (csv) c.app->add_option("--csv", c.common.csv_path, "write CSV to PATH");
  c.app->add_option("--log", c.common.log_path, "append a run record to PATH");
}

void add_seed(Command& c) { c.app->add_option("--seed", c.common.seed, "random seed (default RATDYN_SEED or 1)"); }

MapParamsd params_of(const Common& c) {
  try {
    return parse_params(c.params_text, c.degenerate);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw UsageError(std::string("--params: ") + e.what());
    throw;
  }
}

std::vector<ExtComplexd> z0s_of(const std::vector<std::string>& texts) {
  std::vector<ExtComplexd> out;
  for (const auto& t : texts) {
    try {
      out.push_back(parse_ext(t));
    } catch (const Error& e) {
      throw UsageError(std::string("--z0: ") + e.what());
    }
  }
  return out;
}

// Explicitly given options except the ones stored elsewhere in the run record.
std::map<std::string, std::string> explicit_settings(const CLI::App& app) {
  static const std::set<std::string> skip{"help", "params", "degenerate", "json", "csv", "log", "out"};
  std::map<std::string, std::string> out;
  for (const CLI::Option* opt : app.get_options()) {
    const std::string name = opt->get_single_name();
    if (opt->count() == 0 || skip.count(name)) continue;
    if (opt->get_expected_max() == 0) {
      out[name] = "";
      continue;
    }
    std::string joined;
    for (const auto& r : opt->results()) joined += (joined.empty() ? "" : ";") + r;
    out[name] = joined;
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) throw Error(ErrorKind::IoError, "cannot write " + path);
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}

std::string fmt(const Complexd& z) { return format_complex(z, 6); }
std::string fmt(const ExtComplexd& z) { return format_ext(z, 6); }

Json run_fixed_points(const MapParamsd& p, double class_tol, std::ostream& out, std::ostream& err) {
  const auto records = fixed_points(p, class_tol);
  const auto tag = detect_special_case(p);
  out << "signature " << condition_signature(p).str() << "  special case " << to_string(tag.tag);
  if (!tag.reduced_map.empty()) out << " (" << tag.reduced_map << ")";
  out << "\n";
  out << std::left << std::setw(6) << "index" << std::setw(14) << "re" << std::setw(14) << "im" << std::setw(14)
      << "|f'|" << std::setw(15) << "class" << "residual\n";
  Json arr = Json::array();
  for (const auto& r : records) {
    out << std::setw(6) << r.index << std::setw(14) << fmt(r.z_bar.real()) << std::setw(14) << fmt(r.z_bar.imag())
        << std::setw(14) << fmt(r.multiplier_abs) << std::setw(15) << to_string(r.stability) << fmt(r.residual)
        << "\n";
    if (r.ill_conditioned) err << "warning: fixed point " << r.index << " is ill-conditioned\n";
    if (r.spurious) err << "warning: fixed point " << r.index << " is the spurious root z = 0\n";
    arr.push_back(to_json(r));
  }
  return arr;
}

Json run_orbit(const MapParamsd& p, const ExtComplexd& z0, const OrbitSettings& s, const std::string& csv,
               std::ostream& out) {
  const Orbit o = iterate_orbit(p, z0, s);
  std::vector<FixedPointRecord> fps;
  if (!p.reduced()) fps = fixed_points(p);
  const OrbitClass c = classify_orbit(o, fps);
  out << "z0           " << fmt(o.z0) << "\n";
  out << "termination  " << o.termination.str() << "\n";
  out << "class        " << c.str() << "\n";
  out << "iterations   " << o.n_total << "\n";
  out << "limit        " << (o.limit ? fmt(*o.limit) : "none") << "\n";
  out << "converged at " << (o.convergence_iters ? std::to_string(*o.convergence_iters) : "n/a") << "\n";
  out << "last point   " << fmt(o.points.back()) << "\n";
  out << "recorded     " << o.points.size() << " points, stride " << o.stride << "\n";
  if (!csv.empty()) {
    std::ofstream f(csv, std::ios::binary);
    write_orbit_csv(f, o);
    if (!f) throw Error(ErrorKind::IoError, "cannot write " + csv);
  }
  Json j = to_json(o);
  j["class"] = to_json(c);
  return j;
}

Json run_cycles(const MapParamsd& p, const std::vector<ExtComplexd>& z0s, const CycleSettings& s, bool second_iterate,
                std::ostream& out) {
  std::vector<CycleRecord> found;
  for (const auto& z0 : z0s) {
    if (auto c = detect_cycle(p, z0, s)) found.push_back(std::move(*c));
  }
  const auto cycles = deduplicate_cycles(found);
  out << z0s.size() << " starts, " << cycles.size() << " distinct cycles\n";
  Json arr = Json::array();
  for (const auto& c : cycles) {
    out << "period " << c.prime_period << "  |multiplier| "
        << (c.multiplier ? fmt(std::abs(*c.multiplier)) : std::string("n/a")) << "  residual " << fmt(c.residual)
        << "\n";
    for (const auto& z : c.points) out << "  " << fmt(z) << "\n";
    arr.push_back(to_json(c));
  }
  if (p.beta() != Complexd(0) && p.gamma() != Complexd(0)) {
    out << "{0, inf} multiplier " << fmt(zero_infinity_multiplier(p)) << "\n";
  }
  if (second_iterate) {
    const auto set = second_iterate_fixed_set(p);
    if (set.status == SecondIterateStatus::IdenticallyPeriodic) {
      out << "f(f(z)) = z identically\n";
    } else {
      out << "f(f(z)) = z beyond the fixed points:";
      for (const auto& z : set.remainder) out << " " << fmt(z);
      out << "  (deflation residual " << fmt(set.deflation_residual) << ")\n";
    }
  }
  return arr;
}

Json run_chaos(const MapParamsd& p, const ChaosSettings& s, bool lyap, bool box, std::ostream& out) {
  const ChaosReport r = chaos_report(p, s);
  const bool all = !lyap && !box;
  out << "signature " << r.signature.str() << "\n";
  if (lyap || all) out << "lyapunov  " << fmt(r.lyapunov) << " (" << r.n_sample << " samples, " << r.n_skipped << " skipped)\n";
  if (box || all) {
    out << "box dim   " << (r.box_dim ? fmt(*r.box_dim) : std::string("none")) << " (slope " << fmt(r.box_fit.slope)
        << ", r2 " << fmt(r.box_fit.r2) << (r.box_fit.degenerate ? ", degenerate cloud" : "") << ")\n";
  }
  out << "fractal   "
      << (r.fractal_like ? (*r.fractal_like ? "like" : "unlike") : "not chaotic") << "\n";
  return to_json(r);
}

Json run_scan(std::uint64_t seed, std::size_t n, const ChaosSettings& s, const std::vector<MapParamsd>& injected,
              const std::string& out_path, std::ostream& out) {
  const ScanResult res = conjecture_scan(seed, n, s, injected);
  Json arr = Json::array();
  for (const auto& o : res.outcomes) arr.push_back(to_json(o));
  if (!out_path.empty()) write_text_file(out_path, arr.dump(2) + "\n");
  const auto& t = res.summary.table;
  static const char* rows[] = {"fractal-like", "fractal-unlike", "not chaotic", "failed"};
  out << res.outcomes.size() << " parameter sets, " << res.summary.chaotic << " chaotic\n";
  out << std::left << std::setw(16) << "" << std::setw(8) << "LLL" << std::setw(8) << "GGG" << "other\n";
  for (int i = 0; i < 4; ++i) {
    out << std::setw(16) << rows[i] << std::setw(8) << t[i][0] << std::setw(8) << t[i][1] << t[i][2] << "\n";
  }
  out << "conjecture orientation agreements " << res.summary.conjecture_orientation_agree << ", reversed "
      << res.summary.reversed_orientation_agree << "\n";
  out << "counterexamples " << res.summary.counterexamples.size() << "\n";
  out << res.summary.orientation_note << "\n";
  return {{"outcomes", arr}, {"summary", to_json(res.summary)}};
}

Json run_verify(const MapParamsd& p, std::size_t n_seeds, std::uint64_t seed, const OrbitSettings& s, double eq_tol,
                std::ostream& out) {
  const CriteriaReport r = verify_criteria(p, n_seeds, seed, s, eq_tol);
  out << "signature  " << r.signature.str() << "\n";
  out << "prediction " << to_string(r.prediction) << "\n";
  for (const auto& [name, count] : r.class_counts) out << "  " << std::left << std::setw(24) << name << count << "\n";
  out << r.verdict << "\n";
  return to_json(r);
}

Json run_render(const MapParamsd& p, const std::vector<ExtComplexd>& z0s, std::size_t transient, std::size_t iters,
                const PlotSpec& spec, const std::string& path, std::ostream& out) {
  std::vector<std::vector<ExtComplexd>> pts(z0s.size());
  for (std::size_t s = 0; s < z0s.size(); ++s) {
    ExtComplexd z = z0s[s];
    try {
      for (std::size_t k = 0; k < transient; ++k) z = eval_map(p, z);
      for (std::size_t k = 0; k < iters; ++k) {
        pts[s].push_back(z);
        z = eval_map(p, z);
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::IndeterminateValue) throw;
    }
  }
  const RenderInfo info = render_scatter(pts, spec, path);
  out << "wrote " << path << " (" << info.width << "x" << info.height << "), " << info.dropped_infinite
      << " infinite points dropped, " << info.clipped << " clipped\n";
  return sidecar_json(info, spec);
}

Viewport parse_viewport(const std::string& text) {
  std::vector<double> v;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto sep = text.find(',', start);
    const std::string part = text.substr(start, sep == std::string::npos ? std::string::npos : sep - start);
    double x = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), x);
    if (ec != std::errc() || ptr != part.data() + part.size()) throw UsageError("--viewport: bad number '" + part + "'");
    v.push_back(x);
    if (sep == std::string::npos) break;
    start = sep + 1;
  }
  if (v.size() != 4) throw UsageError("--viewport: expected xmin,xmax,ymin,ymax");
  return {v[0], v[1], v[2], v[3]};
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dynamics workbench for f(z) = (alpha z + beta) / (gamma z^2 + delta z)", "ratdyn"};
  app.require_subcommand(1, 1);

  std::uint64_t seed0 = 1;
  try {
    seed0 = default_seed();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  Command fp{app.add_subcommand("fixed-points", "fixed points, multipliers and stability")};
  double class_tol = 1e-9;
  add_params(fp);
  fp.app->add_option("--class-tol", class_tol, "sink/source boundary tolerance on |f'|");
  add_outputs(fp, false);

  Command orb{app.add_subcommand("orbit", "iterate one orbit and classify it")};
  OrbitSettings orbit_settings;
  std::string orbit_z0;
  add_params(orb);
  orb.app->add_option("--z0", orbit_z0, "initial value (default: drawn from the seed)");
  orb.app->add_option("--max-iter", orbit_settings.max_iter, "iteration budget");
  orb.app->add_option("--tol", orbit_settings.conv_tol, "chordal convergence tolerance");
  orb.app->add_option("--stride", orbit_settings.record_stride, "record every k-th point (0 = automatic)");
  add_seed(orb);
  add_outputs(orb, true);

  Command cyc{app.add_subcommand("cycles", "detect periodic cycles")};
  CycleSettings cycle_settings;
  std::vector<std::string> cycle_z0;
  std::size_t cycle_seeds = 10;
  bool second_iterate = false;
  add_params(cyc);
  auto* z0_opt = cyc.app->add_option("--z0", cycle_z0, "initial value (repeatable)");
  cyc.app->add_option("--seeds", cycle_seeds, "number of random starts")->excludes(z0_opt);
  cyc.app->add_option("--max-period", cycle_settings.max_period, "largest period searched");
  cyc.app->add_option("--transient", cycle_settings.n_transient, "iterations discarded first");
  cyc.app->add_option("--probe", cycle_settings.n_probe, "iterations searched for a cycle");
  cyc.app->add_option("--match-tol", cycle_settings.match_tol, "chordal recurrence tolerance");
  cyc.app->add_flag("--second-iterate", second_iterate, "also solve f(f(z)) = z");
  add_seed(cyc);
  add_outputs(cyc, false);

  Command cha{app.add_subcommand("chaos", "Lyapunov exponent and box-counting dimension")};
  ChaosSettings chaos_settings;
  bool lyap = false, box = false;
  add_params(cha);
  cha.app->add_flag("--lyapunov", lyap, "print the Lyapunov exponent");
  cha.app->add_flag("--boxdim", box, "print the box-counting dimension");
  cha.app->add_option("--transient", chaos_settings.n_transient, "iterations discarded per start");
  cha.app->add_option("--samples", chaos_settings.n_sample, "samples over all starts");
  cha.app->add_option("--starts", chaos_settings.n_starts, "number of starts");
  add_seed(cha);
  add_outputs(cha, false);

  Command scan{app.add_subcommand("conjecture-scan", "test the parameter-condition conjecture on random maps")};
  std::size_t scan_n = 500;
  std::vector<std::string> inject;
  std::string scan_out;
  scan.app->add_option("--n", scan_n, "number of parameter sets");
  scan.app->add_option("--inject", inject, "extra parameter set scanned first (repeatable)");
  scan.app->add_option("--transient", chaos_settings.n_transient, "iterations discarded per start");
  scan.app->add_option("--samples", chaos_settings.n_sample, "samples over all starts");
  scan.app->add_option("--out", scan_out, "write the outcome array to PATH");
  add_seed(scan);
  add_outputs(scan, false);

  Command ver{app.add_subcommand("verify-criteria", "compare orbit behaviour with the modulus conditions")};
  std::size_t ver_seeds = 20;
  double eq_tol = 1e-9;
  OrbitSettings ver_settings;
  add_params(ver);
  ver.app->add_option("--seeds", ver_seeds, "number of random starts");
  ver.app->add_option("--max-iter", ver_settings.max_iter, "iteration budget");
  ver.app->add_option("--tol", ver_settings.conv_tol, "chordal convergence tolerance");
  ver.app->add_option("--eq-tol", eq_tol, "relative tolerance for modulus equality");
  add_seed(ver);
  add_outputs(ver, false);

  Command ren{app.add_subcommand("render", "scatter plot of orbits as a PPM image")};
  std::vector<std::string> render_z0;
  std::size_t render_seeds = 10, render_transient = 0, render_iters = 1000;
  PlotSpec plot;
  std::string style = "pixel", viewport_text, render_out;
  add_params(ren);
  auto* rz0 = ren.app->add_option("--z0", render_z0, "initial value (repeatable)");
  ren.app->add_option("--seeds", render_seeds, "number of random starts")->excludes(rz0);
  ren.app->add_option("--transient", render_transient, "iterations discarded first");
  ren.app->add_option("--iters", render_iters, "points plotted per start");
  ren.app->add_option("--width", plot.width, "image width");
  ren.app->add_option("--height", plot.height, "image height");
  ren.app->add_option("--style", style, "pixel or 3x3")->check(CLI::IsMember({"pixel", "3x3"}));
  ren.app->add_option("--viewport", viewport_text, "xmin,xmax,ymin,ymax (default: auto)");
  ren.app->add_option("--out", render_out, "PPM path")->required();
  add_seed(ren);
  add_outputs(ren, false);

  for (Command* c : {&fp, &orb, &cyc, &cha, &scan, &ver, &ren}) c->common.seed = seed0;

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = &app;
    for (const auto* sub : app.get_subcommands()) target = sub;
    out << target->help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  Command* cmd = nullptr;
  for (Command* c : {&fp, &orb, &cyc, &cha, &scan, &ver, &ren})
    if (c->app->parsed()) cmd = c;
  Common& common = cmd->common;
  common.json_stdout = common.json_path && common.json_path->empty();
  std::ostringstream human;
  std::ostream& hout = common.json_stdout ? static_cast<std::ostream&>(human) : out;

  try {
    std::optional<MapParamsd> params;
    if (cmd->has_params) params = params_of(common);
    Json payload;
    if (cmd == &fp) {
      payload = run_fixed_points(*params, class_tol, hout, err);
    } else if (cmd == &orb) {
      const ExtComplexd z0 =
          orbit_z0.empty() ? sample_initial_values(common.seed, 1).front() : z0s_of({orbit_z0}).front();
      payload = run_orbit(*params, z0, orbit_settings, common.csv_path, hout);
    } else if (cmd == &cyc) {
      const auto z0s = cycle_z0.empty() ? sample_initial_values(common.seed, cycle_seeds) : z0s_of(cycle_z0);
      payload = run_cycles(*params, z0s, cycle_settings, second_iterate, hout);
    } else if (cmd == &cha) {
      chaos_settings.z0_seed = common.seed;
      payload = run_chaos(*params, chaos_settings, lyap, box, hout);
    } else if (cmd == &scan) {
      std::vector<MapParamsd> inj;
      for (const auto& t : inject) {
        try {
          inj.push_back(parse_params(t));
        } catch (const Error& e) {
          if (e.kind() == ErrorKind::ParseError) throw UsageError(std::string("--inject: ") + e.what());
          throw;
        }
      }
      payload = run_scan(common.seed, scan_n, chaos_settings, inj, scan_out, hout);
    } else if (cmd == &ver) {
      payload = run_verify(*params, ver_seeds, common.seed, ver_settings, eq_tol, hout);
    } else {
      plot.style = style == "3x3" ? PointStyle::Square3 : PointStyle::Pixel;
      if (!viewport_text.empty()) plot.viewport = parse_viewport(viewport_text);
      const auto z0s = render_z0.empty() ? sample_initial_values(common.seed, render_seeds) : z0s_of(render_z0);
      payload = run_render(*params, z0s, render_transient, render_iters, plot, render_out, hout);
    }

    if (common.json_stdout) {
      out << payload.dump(2) << "\n";
    } else if (common.json_path) {
      write_text_file(*common.json_path, payload.dump(2) + "\n");
    }
    if (!common.log_path.empty()) {
      RunRecord rec;
      rec.command = cmd->app->get_name();
      rec.params = params;
      rec.settings = explicit_settings(*cmd->app);
      if (cmd->app->get_option_no_throw("--seed") != nullptr) rec.settings["seed"] = std::to_string(common.seed);
      for (const char* key : {"csv", "out"}) {
        const CLI::Option* opt = cmd->app->get_option_no_throw(std::string("--") + key);
        if (opt != nullptr && opt->count() > 0) rec.settings[key] = opt->results().front();
      }
      rec.outputs = payload;
      rec.timestamp = utc_timestamp();
      append_run_log(common.log_path, rec);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace ratdyn
