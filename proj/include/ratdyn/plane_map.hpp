#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "ratdyn/error.hpp"
#include "ratdyn/ext_complex.hpp"

namespace ratdyn {

/// Parameter quadruple of f(z) = (alpha z + beta) / (gamma z^2 + delta z).
///
/// gamma = 0 (the Moebius family) is rejected unless `allow_degenerate` is set.
/// When alpha*delta = beta*gamma the numerator divides the denominator and the
/// map is stored in reduced form z -> k/z with k = alpha/gamma; this covers the
/// alpha=beta,gamma=delta and gamma=alpha,delta=beta families.
template <typename Scalar>
class MapParams {
 public:
  using Complex = std::complex<Scalar>;

  struct Options {
    bool allow_degenerate = false;
    Scalar reduction_tol = Scalar(1e-12);
  };

  MapParams(Complex alpha, Complex beta, Complex gamma, Complex delta)
      : MapParams(alpha, beta, gamma, delta, Options{}) {}

  MapParams(Complex alpha, Complex beta, Complex gamma, Complex delta, Options options)
      : alpha_(alpha), beta_(beta), gamma_(gamma), delta_(delta) {
    for (const auto& c : {alpha, beta, gamma, delta}) {
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
        throw Error(ErrorKind::InvalidArgument, "map parameters must be finite");
      }
    }
    if (gamma == Complex(0)) {
      if (!options.allow_degenerate) {
        throw Error(ErrorKind::DegenerateMap, "gamma = 0 makes the map Moebius; degenerate mode not selected");
      }
      if (delta == Complex(0)) {
        throw Error(ErrorKind::DegenerateMap, "gamma = delta = 0: denominator vanishes identically");
      }
    }
    const Scalar ad = std::abs(alpha * delta);
    const Scalar bg = std::abs(beta * gamma);
    if (gamma != Complex(0) && alpha != Complex(0) && beta != Complex(0) &&
        std::abs(alpha * delta - beta * gamma) <= options.reduction_tol * std::max(ad, bg)) {
      involution_ = alpha / gamma;
    }
  }

  const Complex& alpha() const noexcept { return alpha_; }
  const Complex& beta() const noexcept { return beta_; }
  const Complex& gamma() const noexcept { return gamma_; }
  const Complex& delta() const noexcept { return delta_; }

  bool degenerate() const noexcept { return gamma_ == Complex(0); }

  /// beta = 0 drops the generic fixed-point count to two plus a spurious z = 0.
  bool zero_beta() const noexcept { return beta_ == Complex(0); }

  /// k when the map has been reduced to z -> k/z.
  const std::optional<Complex>& involution_constant() const noexcept { return involution_; }
  bool reduced() const noexcept { return involution_.has_value(); }

  /// Same map with every parameter multiplied by c.
  MapParams scaled(Complex c, Options options = {}) const {
    options.allow_degenerate = degenerate();
    return MapParams(c * alpha_, c * beta_, c * gamma_, c * delta_, options);
  }

 private:
  Complex alpha_, beta_, gamma_, delta_;
  std::optional<Complex> involution_;
};

using MapParamsd = MapParams<double>;

/// f(z) on the extended plane. Poles map to infinity, infinity maps to 0
/// (to alpha/delta in the degenerate family), and any value whose modulus
/// exceeds overflow_threshold() is promoted to infinity.
template <typename Scalar>
ExtComplex<Scalar> eval_map(const MapParams<Scalar>& p, const ExtComplex<Scalar>& z) {
  using Complex = std::complex<Scalar>;
  if (const auto& k = p.involution_constant()) {
    if (z.is_infinite()) return ExtComplex<Scalar>(Complex(0));
    if (z.is_zero()) return ExtComplex<Scalar>::infinity();
    return ExtComplex<Scalar>(*k / z.value());
  }
  if (z.is_infinite()) {
    if (!p.degenerate()) return ExtComplex<Scalar>(Complex(0));
    return ExtComplex<Scalar>(p.alpha() / p.delta());
  }
  const Complex w = z.value();
  Complex num, den;
  if (std::abs(w) <= Scalar(1)) {
    num = p.alpha() * w + p.beta();
    den = w * (p.gamma() * w + p.delta());
  } else {
    // Numerator and denominator divided by w so |w|^2 never overflows.
    num = p.alpha() + p.beta() / w;
    den = p.gamma() * w + p.delta();
  }
  if (den == Complex(0)) {
    if (num == Complex(0)) {
      throw Error(ErrorKind::IndeterminateValue, "0/0 at a point with no known reduction");
    }
    return ExtComplex<Scalar>::infinity();
  }
  const Complex q = num / den;
  if (std::isnan(q.real()) || std::isnan(q.imag())) return ExtComplex<Scalar>::infinity();
  return ExtComplex<Scalar>(q);
}

/// f'(z) = -(alpha gamma z^2 + 2 beta gamma z + beta delta) / (z (gamma z + delta))^2,
/// the quotient rule with the cancelling alpha gamma z^2 terms removed.
template <typename Scalar>
std::complex<Scalar> eval_derivative(const MapParams<Scalar>& p, const ExtComplex<Scalar>& z) {
  using Complex = std::complex<Scalar>;
  if (z.is_infinite()) throw Error(ErrorKind::PoleDerivative, "derivative at infinity");
  const Complex w = z.value();
  if (const auto& k = p.involution_constant()) {
    if (w == Complex(0)) throw Error(ErrorKind::PoleDerivative, "derivative at the pole z = 0");
    return -*k / (w * w);
  }
  const Complex lin = p.gamma() * w + p.delta();
  if (w == Complex(0) || lin == Complex(0)) {
    throw Error(ErrorKind::PoleDerivative, "derivative at a pole");
  }
  const Complex& a = p.alpha();
  const Complex& b = p.beta();
  const Complex& g = p.gamma();
  const Complex& d = p.delta();
  if (std::abs(w) <= Scalar(1)) {
    const Complex num = a * g * w * w + Scalar(2) * b * g * w + b * d;
    const Complex den = w * lin;
    return -num / (den * den);
  }
  const Complex inv = Scalar(1) / w;
  const Complex num = a * g + Scalar(2) * b * g * inv + b * d * inv * inv;
  const Complex tail = g + d * inv;
  return -num / (w * w * tail * tail);
}

enum class Comparison { LT, EQ, GT };

inline const char* to_string(Comparison c) {
  switch (c) {
    case Comparison::LT: return "LT";
    case Comparison::EQ: return "EQ";
    case Comparison::GT: return "GT";
  }
  return "?";
}

/// Moduli |alpha|, |beta|, |gamma|, |delta|, |alpha+beta|, |gamma+delta|.
struct Moduli {
  double alpha = 0, beta = 0, gamma = 0, delta = 0, alpha_beta = 0, gamma_delta = 0;
};

/// Comparisons of |alpha| vs |gamma|, |beta| vs |delta| and |alpha+beta| vs
/// |gamma+delta|. EQ iff the two moduli differ by less than eq_tol * max.
struct ConditionSignature {
  Comparison cmp_ag = Comparison::EQ;
  Comparison cmp_bd = Comparison::EQ;
  Comparison cmp_sum = Comparison::EQ;
  double eq_tol = 1e-9;
  Moduli moduli;

  bool all(Comparison c) const { return cmp_ag == c && cmp_bd == c && cmp_sum == c; }
  std::string str() const {
    return std::string("(") + to_string(cmp_ag) + "," + to_string(cmp_bd) + "," + to_string(cmp_sum) + ")";
  }
  friend bool operator==(const ConditionSignature& a, const ConditionSignature& b) {
    return a.cmp_ag == b.cmp_ag && a.cmp_bd == b.cmp_bd && a.cmp_sum == b.cmp_sum;
  }
};

inline Comparison compare_moduli(double lhs, double rhs, double eq_tol) {
  if (std::abs(lhs - rhs) < eq_tol * std::max(lhs, rhs) || lhs == rhs) return Comparison::EQ;
  return lhs < rhs ? Comparison::LT : Comparison::GT;
}

template <typename Scalar>
ConditionSignature condition_signature(const MapParams<Scalar>& p, double eq_tol = 1e-9) {
  ConditionSignature s;
  s.eq_tol = eq_tol;
  s.moduli.alpha = static_cast<double>(std::abs(p.alpha()));
  s.moduli.beta = static_cast<double>(std::abs(p.beta()));
  s.moduli.gamma = static_cast<double>(std::abs(p.gamma()));
  s.moduli.delta = static_cast<double>(std::abs(p.delta()));
  s.moduli.alpha_beta = static_cast<double>(std::abs(p.alpha() + p.beta()));
  s.moduli.gamma_delta = static_cast<double>(std::abs(p.gamma() + p.delta()));
  s.cmp_ag = compare_moduli(s.moduli.alpha, s.moduli.gamma, eq_tol);
  s.cmp_bd = compare_moduli(s.moduli.beta, s.moduli.delta, eq_tol);
  s.cmp_sum = compare_moduli(s.moduli.alpha_beta, s.moduli.gamma_delta, eq_tol);
  return s;
}

enum class SpecialCase { General, CaseA, CaseB, CaseC, CaseD };

inline const char* to_string(SpecialCase c) {
  switch (c) {
    case SpecialCase::General: return "General";
    case SpecialCase::CaseA: return "CaseA_alphaEqBeta_gammaEqDelta";
    case SpecialCase::CaseB: return "CaseB_alphaEqNegBeta_gammaEqDelta";
    case SpecialCase::CaseC: return "CaseC_gammaEqAlpha_deltaEqBeta";
    case SpecialCase::CaseD: return "CaseD_gammaEqBeta_deltaEqAlpha";
  }
  return "?";
}

struct SpecialCaseTag {
  SpecialCase tag = SpecialCase::General;
  double match_tol = 1e-12;
  std::string reduced_map;  // empty when no closed-form reduction applies
};

namespace detail {
template <typename Scalar>
bool nearly_equal(const std::complex<Scalar>& x, const std::complex<Scalar>& y, double tol) {
  const double scale = std::max(std::abs(x), std::abs(y));
  return std::abs(x - y) <= tol * scale;
}
}  // namespace detail

/// First matching special family in the order A, B, C, D.
template <typename Scalar>
SpecialCaseTag detect_special_case(const MapParams<Scalar>& p, double match_tol = 1e-12) {
  using detail::nearly_equal;
  const auto& a = p.alpha();
  const auto& b = p.beta();
  const auto& g = p.gamma();
  const auto& d = p.delta();
  SpecialCaseTag t;
  t.match_tol = match_tol;
  if (nearly_equal(a, b, match_tol) && nearly_equal(g, d, match_tol)) {
    t.tag = SpecialCase::CaseA;
    t.reduced_map = "z -> alpha/(gamma z)";
  } else if (nearly_equal(a, -b, match_tol) && nearly_equal(g, d, match_tol)) {
    t.tag = SpecialCase::CaseB;
  } else if (nearly_equal(g, a, match_tol) && nearly_equal(d, b, match_tol)) {
    t.tag = SpecialCase::CaseC;
    t.reduced_map = "z -> 1/z";
  } else if (nearly_equal(g, b, match_tol) && nearly_equal(d, a, match_tol)) {
    t.tag = SpecialCase::CaseD;
  }
  return t;
}

/// Singular points of the unreduced formula: {0, -delta/gamma}, deduplicated.
template <typename Scalar>
std::vector<ExtComplex<Scalar>> singular_points(const MapParams<Scalar>& p) {
  if (p.degenerate()) throw Error(ErrorKind::DegenerateMap, "singular points need gamma != 0");
  std::vector<ExtComplex<Scalar>> out{ExtComplex<Scalar>(std::complex<Scalar>(0))};
  if (p.delta() != std::complex<Scalar>(0)) out.emplace_back(-p.delta() / p.gamma());
  return out;
}

/// Poles of the map as evaluated: 0 always, -delta/gamma unless the map is reduced.
template <typename Scalar>
std::vector<std::complex<Scalar>> poles(const MapParams<Scalar>& p) {
  std::vector<std::complex<Scalar>> out{std::complex<Scalar>(0)};
  if (!p.reduced() && !p.degenerate() && p.delta() != std::complex<Scalar>(0)) {
    out.push_back(-p.delta() / p.gamma());
  }
  return out;
}

}  // namespace ratdyn
