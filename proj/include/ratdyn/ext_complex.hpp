#pragma once

#include <cmath>
#include <complex>
#include <limits>

#include "ratdyn/error.hpp"

namespace ratdyn {

/// Magnitude beyond which a value is promoted to the point at infinity.
template <typename Scalar>
constexpr Scalar overflow_threshold() {
  return Scalar(1e150);
}

/// A point of the extended complex plane (one-point compactification).
///
/// A finite value always has finite components. Values whose modulus exceeds
/// overflow_threshold(), or that carry an infinite component, are promoted to
/// infinity on construction; a NaN component is an IndeterminateValue error.
template <typename Scalar>
class ExtComplex {
 public:
  using Complex = std::complex<Scalar>;

  constexpr ExtComplex() = default;

  ExtComplex(const Complex& z) {  // NOLINT(google-explicit-constructor)
    if (std::isnan(z.real()) || std::isnan(z.imag())) {
      throw Error(ErrorKind::IndeterminateValue, "NaN component in extended complex value");
    }
    if (std::isinf(z.real()) || std::isinf(z.imag()) ||
        std::hypot(z.real(), z.imag()) > overflow_threshold<Scalar>()) {
      infinite_ = true;
    } else {
      value_ = z;
    }
  }

  ExtComplex(Scalar re, Scalar im = Scalar(0)) : ExtComplex(Complex(re, im)) {}

  static ExtComplex infinity() {
    ExtComplex z;
    z.infinite_ = true;
    return z;
  }

  bool is_infinite() const noexcept { return infinite_; }
  bool is_finite() const noexcept { return !infinite_; }
  bool is_zero() const noexcept { return !infinite_ && value_ == Complex(0); }

  /// Finite value. Calling this on infinity is a logic error.
  const Complex& value() const {
    if (infinite_) throw Error(ErrorKind::InvalidArgument, "value() of the point at infinity");
    return value_;
  }

  Scalar real() const { return value().real(); }
  Scalar imag() const { return value().imag(); }

  friend bool operator==(const ExtComplex& a, const ExtComplex& b) noexcept {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

 private:
  Complex value_{};
  bool infinite_ = false;
};

/// Lexicographic (re, im) order with infinity after every finite value.
template <typename Scalar>
bool lexicographic_less(const ExtComplex<Scalar>& a, const ExtComplex<Scalar>& b) {
  if (a.is_infinite()) return false;
  if (b.is_infinite()) return true;
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

/// Chordal distance on the Riemann sphere of diameter 1 scaled to [0, 2]:
/// 2|z-w| / (sqrt(1+|z|^2) sqrt(1+|w|^2)), with 2/sqrt(1+|z|^2) to infinity.
template <typename Scalar>
Scalar chordal_distance(const ExtComplex<Scalar>& a, const ExtComplex<Scalar>& b) {
  using std::abs;
  using std::sqrt;
  if (a.is_infinite() && b.is_infinite()) return Scalar(0);
  if (a.is_infinite() || b.is_infinite()) {
    const auto& z = a.is_infinite() ? b.value() : a.value();
    const Scalar r = abs(z);
    return Scalar(2) / sqrt(Scalar(1) + r * r);
  }
  const Scalar ra = abs(a.value());
  const Scalar rb = abs(b.value());
  return Scalar(2) * abs(a.value() - b.value()) /
         (sqrt(Scalar(1) + ra * ra) * sqrt(Scalar(1) + rb * rb));
}

/// Euclidean distance for reporting; infinite whenever either side is infinity
/// (zero when both are).
template <typename Scalar>
Scalar euclidean_distance(const ExtComplex<Scalar>& a, const ExtComplex<Scalar>& b) {
  if (a.is_infinite() && b.is_infinite()) return Scalar(0);
  if (a.is_infinite() || b.is_infinite()) return std::numeric_limits<Scalar>::infinity();
  return std::abs(a.value() - b.value());
}

using ExtComplexd = ExtComplex<double>;
using Complexd = std::complex<double>;

}  // namespace ratdyn
