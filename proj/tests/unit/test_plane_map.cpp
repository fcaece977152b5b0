#include <doctest.h>

#include "common.hpp"
#include "ratdyn/random.hpp"

using namespace ratdyn;
using namespace testdata;

TEST_CASE("extended values promote overflow and reject NaN") {
  CHECK(ExtComplexd(C(1e151, 0)).is_infinite());
  CHECK(ExtComplexd(C(INFINITY, 1)).is_infinite());
  CHECK(ExtComplexd(C(1e149, 0)).is_finite());
  CHECK_THROWS_AS(ExtComplexd(C(NAN, 0)), Error);
  CHECK_THROWS_AS(ExtComplexd::infinity().value(), Error);
  CHECK(ExtComplexd::infinity() == ExtComplexd::infinity());
  CHECK_FALSE(ExtComplexd(C(1, 2)) == ExtComplexd::infinity());
}

TEST_CASE("chordal metric") {
  const ExtComplexd inf = ExtComplexd::infinity();
  CHECK(chordal_distance(inf, inf) == 0.0);
  CHECK(chordal_distance(ExtComplexd(0.0), inf) == doctest::Approx(2.0));
  CHECK(chordal_distance(ExtComplexd(1e8), inf) < 1e-7);
  CHECK(chordal_distance(ExtComplexd(1e12), inf) < chordal_distance(ExtComplexd(1e8), inf));
  CHECK(chordal_distance(ExtComplexd(1.0), ExtComplexd(-1.0)) == doctest::Approx(2.0));
  CHECK(euclidean_distance(ExtComplexd(1.0), inf) == INFINITY);
  CHECK(lexicographic_less(ExtComplexd(C(1, 5)), ExtComplexd(C(2, -5))));
  CHECK(lexicographic_less(ExtComplexd(C(1, 1)), ExtComplexd(C(1, 2))));
  CHECK(lexicographic_less(ExtComplexd(C(1e9, 0)), inf));
  CHECK_FALSE(lexicographic_less(inf, ExtComplexd(0.0)));
}

TEST_CASE("map parameters validate their arguments") {
  CHECK_THROWS_AS(MapParamsd(1, 1, 0, 1), Error);
  try {
    MapParamsd(1, 1, 0, 1);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateMap);
  }
  MapParamsd::Options opt;
  opt.allow_degenerate = true;
  CHECK(MapParamsd(1, 1, 0, 1, opt).degenerate());
  CHECK_THROWS_AS(MapParamsd(1, 1, 0, 0, opt), Error);
  CHECK_THROWS_AS(MapParamsd(C(NAN, 0), 1, 1, 1), Error);
  CHECK(MapParamsd(2, 3, 4, 6).reduced());
  CHECK(*MapParamsd(2, 3, 4, 6).involution_constant() == C(0.5));
  CHECK_FALSE(ex21().reduced());
}

TEST_CASE("eval_map examples") {
  CHECK(eval_map(inv_square(), ExtComplexd(2.0)).value() == C(0.25));
  const auto p = ex21();
  CHECK(eval_map(p, ExtComplexd(0.0)).is_infinite());
  CHECK(eval_map(p, ExtComplexd::infinity()).is_zero());
  const ExtComplexd near_pole = eval_map(p, ExtComplexd(-p.delta() / p.gamma()));
  CHECK((near_pole.is_infinite() || std::abs(near_pole.value()) > 1e12));
  const MapParamsd c({0.4, 0.9}, {0.2, -0.3}, {0.4, 0.9}, {0.2, -0.3});
  CHECK(std::abs(eval_map(c, ExtComplexd(2.0)).value() - C(0.5)) < 1e-15);
  const C removable = -c.beta() / c.alpha();
  CHECK(std::abs(eval_map(c, ExtComplexd(removable)).value() - 1.0 / removable) < 1e-14);
  CHECK_THROWS_AS(eval_map(MapParamsd(1, 0, 1, 1), ExtComplexd(0.0)), Error);
  MapParamsd::Options opt;
  opt.allow_degenerate = true;
  CHECK(eval_map(MapParamsd(2, 1, 0, 4, opt), ExtComplexd::infinity()).value() == C(0.5));
}

TEST_CASE("eval_map is stable for huge arguments") {
  const auto p = ex21();
  const C z(3e200 / 1e100, 1e100);
  const C direct = (p.alpha() + p.beta() / z) / (p.gamma() * z + p.delta());
  const auto v = eval_map(p, ExtComplexd(z));
  REQUIRE(v.is_finite());
  CHECK(std::abs(v.value() - direct) <= 1e-14 * std::abs(direct));
}

TEST_CASE("eval_derivative examples") {
  CHECK(std::abs(eval_derivative(inv_square(), ExtComplexd(1.0)) - C(-2)) < 1e-15);
  CHECK(std::abs(eval_derivative(ex21(), ExtComplexd(C(-0.708428, 0.171918)))) == doctest::Approx(3.51012).epsilon(3e-4));
  CHECK(std::abs(eval_derivative(ex22(), ExtComplexd(C(0.515402, -0.0307232)))) ==
        doctest::Approx(0.991066).epsilon(1e-3));
  CHECK_THROWS_AS(eval_derivative(ex21(), ExtComplexd(0.0)), Error);
  CHECK_THROWS_AS(eval_derivative(ex21(), ExtComplexd::infinity()), Error);
  CHECK_THROWS_AS(eval_derivative(MapParamsd(1, 1, 1, -1), ExtComplexd(1.0)), Error);
}

TEST_CASE("derivative agrees with central differences") {
  Sampler s(101);
  double worst = 0;
  for (int n = 0; n < 1000;) {
    const auto p = sample_params(s);
    C z = s.uniform_box(-2, 2);
    if (n % 10 == 0) z *= 1e5;
    if (std::abs(z) < 0.05 || std::abs(z + p.delta() / p.gamma()) < 0.05) continue;
    const double h = 1e-6 * (1 + std::abs(z));
    const C fd = (eval_map(p, ExtComplexd(z + h)).value() - eval_map(p, ExtComplexd(z - h)).value()) / (2 * h);
    const C d = eval_derivative(p, ExtComplexd(z));
    worst = std::max(worst, std::abs(fd - d) / std::abs(d));
    ++n;
  }
  CHECK(worst < 1e-5);
}

TEST_CASE("condition signatures") {
  const auto s = condition_signature(ex21());
  CHECK(s.str() == "(GT,GT,GT)");
  CHECK(s.moduli.alpha == doctest::Approx(1.3045).epsilon(1e-3));
  CHECK(s.moduli.gamma == doctest::Approx(0.9970).epsilon(1e-3));
  CHECK(s.moduli.beta == doctest::Approx(0.9442).epsilon(1e-3));
  CHECK(s.moduli.delta == doctest::Approx(0.7412).epsilon(1e-3));
  CHECK(s.moduli.alpha_beta == doctest::Approx(2.2475).epsilon(1e-3));
  CHECK(s.moduli.gamma_delta == doctest::Approx(1.7311).epsilon(1e-3));

  const auto s2 = condition_signature(s32());
  CHECK(s2.cmp_ag == Comparison::LT);
  CHECK(s2.cmp_bd == Comparison::GT);
  CHECK(s2.cmp_sum == Comparison::GT);

  CHECK(condition_signature(s33(), 1e-3).cmp_sum == Comparison::EQ);
  CHECK(condition_signature(s33()).cmp_sum == Comparison::EQ);
  CHECK(condition_signature(s31(), 1e-3).cmp_sum != Comparison::EQ);
  CHECK(compare_moduli(1.0, 1.0 + 1e-10, 1e-9) == Comparison::EQ);
  CHECK(compare_moduli(1.0, 1.0 + 1e-8, 1e-9) == Comparison::LT);
}

TEST_CASE("signatures are invariant under parameter scaling") {
  Sampler s(7);
  for (int i = 0; i < 200; ++i) {
    const auto p = sample_params(s);
    const auto q = p.scaled(std::polar(std::ldexp(1.0, i % 9 - 4), 0.3 * i));
    const auto a = condition_signature(p), b = condition_signature(q);
    CHECK(a.cmp_ag == b.cmp_ag);
    CHECK(a.cmp_bd == b.cmp_bd);
    CHECK(a.cmp_sum == b.cmp_sum);
  }
}

TEST_CASE("special case detection") {
  const C a(0.3, 0.2), g(0.7, 0.1);
  CHECK(detect_special_case(MapParamsd(a, a, g, g)).tag == SpecialCase::CaseA);
  CHECK(detect_special_case(MapParamsd(a, -a, g, g)).tag == SpecialCase::CaseB);
  CHECK(detect_special_case(MapParamsd(a, g, a, g)).tag == SpecialCase::CaseC);
  CHECK(detect_special_case(case_d_chaotic()).tag == SpecialCase::CaseD);
  CHECK(detect_special_case(ex21()).tag == SpecialCase::General);
  CHECK(detect_special_case(MapParamsd(a, a, a, a)).tag == SpecialCase::CaseA);
  CHECK(detect_special_case(MapParamsd(a, g, a, g)).reduced_map == "z -> 1/z");
}

TEST_CASE("case C is an involution") {
  Sampler s(3);
  const auto p = MapParamsd(C(0.4, 0.9), C(0.2, -0.3), C(0.4, 0.9), C(0.2, -0.3));
  for (int i = 0; i < 1000; ++i) {
    const double r = std::pow(10.0, s.uniform(-3, 3));
    const ExtComplexd z(std::polar(r, s.uniform(0, 6.283)));
    const auto back = eval_map(p, eval_map(p, z));
    CHECK(std::abs(back.value() - z.value()) < 1e-12 * r);
  }
}

TEST_CASE("singular points and poles") {
  CHECK(singular_points(inv_square()).size() == 1);
  const auto p = ex21();
  const auto sp = singular_points(p);
  REQUIRE(sp.size() == 2);
  const C z = sp[1].value();
  CHECK(std::abs(p.gamma() * z * z + p.delta() * z) < 1e-12);
  CHECK(singular_points(MapParamsd(1, 2, 3, 3))[1].value() == C(-1));
  const auto pol = poles(p);
  REQUIRE(pol.size() == 2);
  for (const auto& q : pol) {
    CHECK(std::abs(q * (p.gamma() * q + p.delta())) < 1e-12);
    const ExtComplexd w = eval_map(p, ExtComplexd(q));
    CHECK((w.is_infinite() || std::abs(w.value()) > 1e12));
  }
}
