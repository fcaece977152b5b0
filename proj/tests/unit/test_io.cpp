#include <doctest.h>

#include <sstream>

#include "common.hpp"
#include "ratdyn/io.hpp"

using namespace ratdyn;
using namespace testdata;

TEST_CASE("parse complex numbers") {
  CHECK(parse_complex("1.5-2i") == C(1.5, -2));
  CHECK(parse_complex("0.92735+0.9174938i") == C(0.92735, 0.9174938));
  CHECK(parse_complex("-3") == C(-3, 0));
  CHECK(parse_complex("2.5i") == C(0, 2.5));
  CHECK(parse_complex("i") == C(0, 1));
  CHECK(parse_complex("-i") == C(0, -1));
  CHECK(parse_complex("1+i") == C(1, 1));
  CHECK(parse_complex("1e-3+2E2j") == C(1e-3, 200));
  CHECK(parse_complex(" 0+0i ") == C(0, 0));
  CHECK(parse_complex("1.33603e-6-6.20472e-7i") == C(1.33603e-6, -6.20472e-7));
  for (const char* bad : {"", "abc", "1+", "1+2", "1i+2", "--1", "1..2", "nan"}) {
    CHECK_THROWS_AS(parse_complex(bad), Error);
  }
  CHECK(parse_ext("inf").is_infinite());
  CHECK(parse_ext("0.5").value() == C(0.5));
}

TEST_CASE("parse parameter quadruples") {
  const auto p = parse_params("0.92735+0.9174938i,0.713574+0.618337i,0.343287+0.9360273i,0.124774+0.7305853i");
  CHECK(p.alpha() == ex21().alpha());
  CHECK(p.delta() == ex21().delta());
  try {
    parse_params("1+0i");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
  }
  CHECK_THROWS_AS(parse_params("1,2,3,4,5"), Error);
  CHECK_THROWS_AS(parse_params("1,2,0,4"), Error);
  CHECK(parse_params("1,2,0,4", true).degenerate());
}

TEST_CASE("17-digit formatting round-trips") {
  const C z(0.1 + 0.2, -1.0 / 3.0);
  CHECK(parse_complex(format_complex(z)) == z);
  CHECK(format_ext(ExtComplexd::infinity()) == "inf");
  CHECK(format_complex(C(1, -2), 6) == "1-2i");
}

TEST_CASE("non-finite doubles in JSON") {
  CHECK(to_json(INFINITY) == "inf");
  CHECK(to_json(-INFINITY) == "-inf");
  CHECK(to_json(NAN) == "nan");
  CHECK(double_from_json(to_json(INFINITY)) == INFINITY);
  CHECK(std::isnan(double_from_json(to_json(NAN))));
  CHECK(double_from_json(to_json(0.1)) == 0.1);
}

TEST_CASE("JSON round-trips") {
  const auto p = ex21();
  CHECK(to_json(params_from_json(to_json(p))) == to_json(p));
  CHECK(ext_from_json(to_json(ExtComplexd::infinity())).is_infinite());
  CHECK(complex_from_json(to_json(C(1.0 / 3, -2.0 / 7))) == C(1.0 / 3, -2.0 / 7));
  const auto sig = condition_signature(p);
  CHECK(to_json(signature_from_json(to_json(sig))) == to_json(sig));
  for (const auto& f : fixed_points(p)) CHECK(to_json(fixed_point_from_json(to_json(f))) == to_json(f));

  OrbitSettings s;
  s.max_iter = 300;
  const auto o = iterate_orbit(p, ExtComplexd(0.0), s);
  CHECK(to_json(orbit_from_json(to_json(o))) == to_json(o));
  const auto o2 = iterate_orbit(p, ExtComplexd(C(0.3, 0.2)), s);
  const Json j = Json::parse(to_json(o2).dump());
  CHECK(to_json(orbit_from_json(j)) == to_json(o2));
  CHECK(to_json(termination_from_json(to_json(o2.termination))) == to_json(o2.termination));
  CHECK(to_json(orbit_settings_from_json(to_json(s))) == to_json(s));

  const auto rec = detect_cycle(ex41(), ExtComplexd(ex41_points()[0]));
  REQUIRE(rec);
  CHECK(to_json(cycle_from_json(Json::parse(to_json(*rec).dump()))) == to_json(*rec));
  const auto zi = detect_cycle(p, ExtComplexd(0.0));
  REQUIRE(zi);
  CHECK(to_json(cycle_from_json(Json::parse(to_json(*zi).dump()))) == to_json(*zi));

  ChaosSettings cs;
  cs.n_sample = 2000;
  cs.n_starts = 2;
  const auto rep = chaos_report(table_row(2), cs);
  CHECK(to_json(chaos_report_from_json(Json::parse(to_json(rep).dump()))) == to_json(rep));
  CHECK(to_json(box_fit_from_json(to_json(rep.box_fit))) == to_json(rep.box_fit));
}

TEST_CASE("scan outcome schema") {
  ScanOutcome o(3, false, ex21());
  const Json j = to_json(o);
  for (const char* key : {"params", "signature", "lyapunov", "box_dim", "fractal_like", "conjecture_consistent"})
    CHECK(j.contains(key));
}

TEST_CASE("CSV round-trip including infinity") {
  const std::vector<std::size_t> idx{0, 1, 2, 3};
  const std::vector<ExtComplexd> pts{ExtComplexd(0.0), ExtComplexd::infinity(), ExtComplexd(C(0.1, -1.0 / 3)),
                                     ExtComplexd(C(-2e-300, 5e120))};
  std::ostringstream os;
  write_points_csv(os, idx, pts);
  const std::string text = os.str();
  CHECK(text.rfind("n,re,im\r\n", 0) == 0);
  CHECK(text.find("1,inf,inf\r\n") != std::string::npos);
  std::istringstream is(text);
  const auto back = read_points_csv(is);
  REQUIRE(back.size() == 4);
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(back[k].first == idx[k]);
    CHECK(back[k].second == pts[k]);
  }
  std::istringstream bad("n,re,im\r\n0,1\r\n");
  CHECK_THROWS_AS(read_points_csv(bad), Error);
  std::istringstream nohead("0,1,2\n");
  CHECK_THROWS_AS(read_points_csv(nohead), Error);
}
