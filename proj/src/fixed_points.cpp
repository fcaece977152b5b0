#include "ratdyn/fixed_points.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ratdyn {

const char* to_string(Stability s) {
  switch (s) {
    case Stability::Sink: return "Sink";
    case Stability::Source: return "Source";
    case Stability::NonHyperbolic: return "NonHyperbolic";
  }
  return "?";
}

Stability classify_multiplier(double multiplier_abs, double class_tol) {
  if (multiplier_abs < 1.0 - class_tol) return Stability::Sink;
  if (multiplier_abs > 1.0 + class_tol) return Stability::Source;
  return Stability::NonHyperbolic;
}

Polynomiald fixed_point_cubic(const MapParamsd& p) {
  Polynomiald c(4);
  c << -p.beta(), -p.alpha(), p.delta(), p.gamma();
  return c;
}

namespace {

double forward_residual(const MapParamsd& p, Complexd z) {
  const ExtComplexd fz = eval_map(p, ExtComplexd(z));
  if (fz.is_infinite()) return std::numeric_limits<double>::infinity();
  return std::abs(fz.value() - z);
}

FixedPointRecord make_record(const MapParamsd& p, Complexd z, double class_tol) {
  FixedPointRecord r;
  r.z_bar = z;
  r.class_tol = class_tol;
  r.multiplier = eval_derivative(p, ExtComplexd(z));
  r.multiplier_abs = std::abs(r.multiplier);
  r.stability = classify_multiplier(r.multiplier_abs, class_tol);
  r.residual = forward_residual(p, z);
  return r;
}

void sort_and_index(std::vector<FixedPointRecord>& records) {
  std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    if (a.z_bar.real() != b.z_bar.real()) return a.z_bar.real() < b.z_bar.real();
    return a.z_bar.imag() < b.z_bar.imag();
  });
  for (std::size_t i = 0; i < records.size(); ++i) records[i].index = static_cast<int>(i) + 1;
}

}  // namespace

std::vector<FixedPointRecord> fixed_points(const MapParamsd& p, double class_tol) {
  if (p.degenerate()) throw Error(ErrorKind::DegenerateMap, "fixed-point cubic needs gamma != 0");

  if (p.reduced()) {
    // z -> k/z: the cubic's third root is the removable point.
    const Complexd r = std::sqrt(*p.involution_constant());
    std::vector<FixedPointRecord> records{make_record(p, r, class_tol), make_record(p, -r, class_tol)};
    sort_and_index(records);
    return records;
  }

  const Polynomiald cubic = fixed_point_cubic(p);
  std::vector<Complexd> roots = poly_roots(cubic, /*polish_steps=*/3);

  const Complexd disc = monic_cubic_discriminant(cubic);
  const bool ill_conditioned = std::abs(disc) < 1e-12;

  std::vector<FixedPointRecord> records;
  for (const Complexd& z : roots) {
    if (p.zero_beta() && std::abs(z) <= 1e-12) {
      FixedPointRecord r;
      r.z_bar = Complexd(0);
      r.spurious = true;
      r.multiplier_abs = std::numeric_limits<double>::infinity();
      r.residual = std::numeric_limits<double>::infinity();
      r.class_tol = class_tol;
      records.push_back(r);
      continue;
    }
    records.push_back(make_record(p, z, class_tol));
    records.back().ill_conditioned = ill_conditioned;
  }

  if (ill_conditioned) {
    // Near-multiple roots: group the roots that sit within 1e-4 of each other.
    for (auto& r : records) {
      int m = 0;
      for (const auto& s : records) {
        if (std::abs(r.z_bar - s.z_bar) <= 1e-4 * (1.0 + std::abs(r.z_bar))) ++m;
      }
      r.multiplicity = m;
    }
  }
  sort_and_index(records);
  return records;
}

FixedPointRecord classify_stability(const MapParamsd& p, Complexd z_bar, double class_tol) {
  const double res = forward_residual(p, z_bar);
  if (!(res < 1e-6 * (1.0 + std::abs(z_bar)))) {
    throw Error(ErrorKind::NotAFixedPoint, "residual |f(z) - z| = " + std::to_string(res));
  }
  return make_record(p, z_bar, class_tol);
}

std::vector<FixedPointRecord> special_case_fixed_points(const MapParamsd& p, const SpecialCaseTag& tag,
                                                        double class_tol) {
  std::vector<Complexd> zs;
  switch (tag.tag) {
    case SpecialCase::CaseA: {
      const Complexd r = std::sqrt(p.alpha() / p.gamma());
      zs = {r, -r};
      break;
    }
    case SpecialCase::CaseC:
      zs = {Complexd(1), Complexd(-1)};
      break;
    case SpecialCase::CaseD: {
      const Complexd a = p.alpha();
      const Complexd b = p.beta();
      const Complexd root = std::sqrt(a * a + 2.0 * a * b - 3.0 * b * b);
      zs = {Complexd(1), (-(a + b) - root) / (2.0 * b), (-(a + b) + root) / (2.0 * b)};
      break;
    }
    case SpecialCase::General:
    case SpecialCase::CaseB:
      throw Error(ErrorKind::WrongTag, std::string("no closed form for ") + to_string(tag.tag));
  }
  std::vector<FixedPointRecord> records;
  records.reserve(zs.size());
  for (const Complexd& z : zs) records.push_back(make_record(p, z, class_tol));
  sort_and_index(records);
  return records;
}

double case_d_unit_multiplier(const MapParamsd& p) {
  return std::abs(2.0 * p.beta() / (p.alpha() + p.beta()));
}

Complexd case_d_pair_multiplier(const MapParamsd& p) { return -2.0 - p.alpha() / p.beta(); }

}  // namespace ratdyn
