#include <algorithm>
#include <doctest.h>

#include "common.hpp"
#include "ratdyn/fixed_points.hpp"
#include "ratdyn/io.hpp"
#include "ratdyn/orbit.hpp"
#include "ratdyn/random.hpp"

using namespace ratdyn;
using namespace testdata;

TEST_CASE("fast convergence to the sink") {
  const auto o = iterate_orbit(ex22(), ExtComplexd(C(0.3, 0.2)));
  REQUIRE(o.termination.kind == Termination::ConvergedToPoint);
  CHECK(std::abs(o.limit->value() - C(0.515394, -0.03072)) < 1e-3);
  CHECK(*o.convergence_iters >= 100);
  CHECK(*o.convergence_iters <= 10000);
  CHECK(chordal_distance(o.points.back(), *o.limit) < o.settings.conv_tol);
  CHECK(o.points.front() == ExtComplexd(C(0.3, 0.2)));
  const auto fps = fixed_points(ex22());
  const auto c = classify_orbit(o, fps);
  CHECK(c.kind == OrbitClassKind::ConvergentToFixedPoint);
  REQUIRE(c.fixed_point_index >= 1);
  CHECK(std::abs(fps[c.fixed_point_index - 1].z_bar - C(0.515402, -0.0307232)) < 1e-4);
  const std::size_t t = convergence_time(o, *o.limit, 1e-6);
  CHECK(t >= 100);
  CHECK(t <= 10000);
}

TEST_CASE("slow convergence takes about 1e5 iterations") {
  OrbitSettings s;
  s.max_iter = 1000000;
  const auto o = iterate_orbit(ex21(), sample_initial_values(3, 1).front(), s);
  REQUIRE(o.termination.kind == Termination::ConvergedToPoint);
  CHECK(std::abs(o.limit->value() - C(1.10789, -0.305048)) < 1e-3);
  CHECK(*o.convergence_iters >= 10000);
  CHECK(*o.convergence_iters <= 1000000);
  CHECK(o.stride == 10);
  const std::size_t t = convergence_time(o, *o.limit, 1e-6);
  CHECK(t >= 10000);
  CHECK(t <= 1000000);
  const C z = o.limit->value();
  CHECK(std::abs(eval_map(ex21(), *o.limit).value() - z) < 1e-8);
}

TEST_CASE("the {0, inf} alternation") {
  Sampler s(17);
  for (int i = 0; i < 50; ++i) {
    const auto p = sample_params(s);
    const auto o = iterate_orbit(p, ExtComplexd(0.0));
    CHECK(o.termination.kind == Termination::PeriodicDetected);
    CHECK(o.termination.period == 2);
    for (std::size_t k = 0; k < o.points.size(); ++k) {
      if (o.indices[k] % 2 == 0) CHECK(o.points[k].is_zero());
      else CHECK(o.points[k].is_infinite());
    }
    CHECK(classify_orbit(o, {}).kind == OrbitClassKind::Periodic);
  }
  const auto inf = iterate_orbit(ex21(), ExtComplexd::infinity());
  CHECK(inf.termination == TerminationReason{Termination::PeriodicDetected, 2});
}

TEST_CASE("approach to the attracting {0, inf} cycle") {
  const auto fps = fixed_points(s32());
  for (const auto& z0 : sample_initial_values(5, 10)) {
    const auto o = iterate_orbit(s32(), z0);
    CHECK(o.termination.kind == Termination::ConvergedToInfinity);
    CHECK(classify_orbit(o, fps).kind == OrbitClassKind::ConvergentToInfinity);
  }
}

TEST_CASE("involution orbits are 2-periodic") {
  const auto o = iterate_orbit(case_a(), ExtComplexd(C(0.4, 0.9)));
  CHECK(o.termination == TerminationReason{Termination::PeriodicDetected, 2});
  const auto f = iterate_orbit(case_a(), ExtComplexd(std::sqrt(case_a().alpha() / case_a().gamma())));
  CHECK(classify_orbit(f, fixed_points(case_a())).kind == OrbitClassKind::Constant);
}

TEST_CASE("period-5 orbit") {
  const auto o = iterate_orbit(ex41(), ExtComplexd(ex41_points()[0]));
  CHECK(o.termination == TerminationReason{Termination::PeriodicDetected, 5});
  const auto c = classify_orbit(o, fixed_points(ex41()));
  CHECK(c.kind == OrbitClassKind::Periodic);
  CHECK(c.period == 5);
}

TEST_CASE("constant orbit from a fixed point") {
  const auto fps = fixed_points(ex22());
  const auto sink = std::find_if(fps.begin(), fps.end(), [](const auto& r) { return r.stability == Stability::Sink; });
  REQUIRE(sink != fps.end());
  const auto o = iterate_orbit(ex22(), ExtComplexd(sink->z_bar));
  CHECK(classify_orbit(o, fps).kind == OrbitClassKind::Constant);
  CHECK(convergence_time(o, ExtComplexd(sink->z_bar), 1e-6) == 0);
}

TEST_CASE("maximum iterations and errors") {
  OrbitSettings s;
  s.max_iter = 50;
  const auto o = iterate_orbit(ex21(), ExtComplexd(C(0.3, 0.2)), s);
  CHECK(o.termination.kind == Termination::MaxIterations);
  CHECK(o.n_total == 50);
  CHECK(o.points.size() == 51);
  CHECK(classify_orbit(o, fixed_points(ex21())).kind == OrbitClassKind::UnboundedOrChaotic);
  CHECK_THROWS_AS(convergence_time(o, ExtComplexd(C(9, 9)), 1e-6), Error);
  s.max_iter = 0;
  CHECK_THROWS_AS(iterate_orbit(ex21(), ExtComplexd(0.5), s), Error);
  s.max_iter = 10;
  s.conv_tol = 0;
  CHECK_THROWS_AS(iterate_orbit(ex21(), ExtComplexd(0.5), s), Error);
}

TEST_CASE("indeterminate points stop the orbit") {
  const MapParamsd p(1, 0, 1, 1);
  const auto o = iterate_orbit(p, ExtComplexd(0.0));
  CHECK(o.termination.kind == Termination::HitIndeterminate);
}

TEST_CASE("record stride") {
  OrbitSettings s;
  s.max_iter = 200000;
  CHECK(s.effective_stride() == 10);
  s.max_iter = 100000;
  CHECK(s.effective_stride() == 1);
  s.record_stride = 7;
  CHECK(s.effective_stride() == 7);
  s.max_iter = 5000;
  const auto o = iterate_orbit(ex21(), ExtComplexd(C(0.3, 0.2)), s);
  for (std::size_t k = 1; k < o.indices.size(); ++k) CHECK(o.indices[k] > o.indices[k - 1]);
  CHECK(o.indices.front() == 0);
  CHECK(o.indices.back() == o.n_total);
  CHECK(o.indices[1] == 7);
}

TEST_CASE("orbits are deterministic") {
  const auto z0s = sample_initial_values(99, 8);
  const auto a = iterate_orbits(ex21(), z0s);
  const auto b = iterate_orbits(ex21(), z0s);
  REQUIRE(a.size() == 8);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(to_json(a[i]).dump() == to_json(b[i]).dump());
    CHECK(to_json(a[i]).dump() == to_json(iterate_orbit(ex21(), z0s[i])).dump());
  }
}

TEST_CASE("find_period") {
  std::vector<ExtComplexd> pts;
  for (int i = 0; i < 60; ++i) pts.emplace_back(C(i % 3, 0));
  CHECK(find_period(pts, 10, 1e-9) == 3);
  std::vector<ExtComplexd> walk;
  for (int i = 0; i < 60; ++i) walk.emplace_back(C(i, 0));
  CHECK(find_period(walk, 10, 1e-9) == 0);
}

TEST_CASE("criteria verification reproduces the three experiments") {
  const auto fps1 = fixed_points(s31());
  std::size_t unbounded = 0;
  for (const auto& o : iterate_orbits(s31(), sample_initial_values(1, 20))) {
    const bool far = std::any_of(o.points.begin(), o.points.end(),
                                 [](const auto& z) { return z.is_infinite() || std::abs(z.value()) > 1e6; });
    unbounded += far;
  }
  CHECK(unbounded == 20);
  const auto fps3 = fixed_points(s33());
  for (const auto& o : iterate_orbits(s33(), sample_initial_values(1, 50)))
    CHECK(classify_orbit(o, fps3).kind != OrbitClassKind::Constant);
}
