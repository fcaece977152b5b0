#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "ratdyn/error.hpp"

namespace ratdyn {

/// Polynomial coefficients in ascending powers: c(0) + c(1) z + ... + c(n) z^n.
template <typename Scalar>
using Polynomial = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

using Polynomiald = Polynomial<double>;

template <typename Scalar>
std::complex<Scalar> poly_eval(const Polynomial<Scalar>& c, const std::complex<Scalar>& z) {
  std::complex<Scalar> acc(0);
  for (Eigen::Index k = c.size() - 1; k >= 0; --k) acc = acc * z + c(k);
  return acc;
}

/// Sum of |c_k| |z|^k, the scale used for backward-error residuals.
template <typename Scalar>
Scalar poly_abs_eval(const Polynomial<Scalar>& c, Scalar r) {
  Scalar acc(0);
  for (Eigen::Index k = c.size() - 1; k >= 0; --k) acc = acc * r + std::abs(c(k));
  return acc;
}

template <typename Scalar>
Polynomial<Scalar> poly_derivative(const Polynomial<Scalar>& c) {
  if (c.size() <= 1) return Polynomial<Scalar>::Zero(1);
  Polynomial<Scalar> d(c.size() - 1);
  for (Eigen::Index k = 1; k < c.size(); ++k) d(k - 1) = c(k) * Scalar(k);
  return d;
}

template <typename Scalar>
Polynomial<Scalar> poly_multiply(const Polynomial<Scalar>& a, const Polynomial<Scalar>& b) {
  Polynomial<Scalar> out = Polynomial<Scalar>::Zero(a.size() + b.size() - 1);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    for (Eigen::Index j = 0; j < b.size(); ++j) out(i + j) += a(i) * b(j);
  }
  return out;
}

template <typename Scalar>
Polynomial<Scalar> poly_add(const Polynomial<Scalar>& a, const Polynomial<Scalar>& b) {
  Polynomial<Scalar> out = Polynomial<Scalar>::Zero(std::max(a.size(), b.size()));
  out.head(a.size()) += a;
  out.head(b.size()) += b;
  return out;
}

template <typename Scalar>
Polynomial<Scalar> poly_subtract(const Polynomial<Scalar>& a, const Polynomial<Scalar>& b) {
  Polynomial<Scalar> out = Polynomial<Scalar>::Zero(std::max(a.size(), b.size()));
  out.head(a.size()) += a;
  out.head(b.size()) -= b;
  return out;
}

/// Degree after dropping leading coefficients below rel_tol * max|c_k|;
/// -1 for the zero polynomial.
template <typename Scalar>
Eigen::Index poly_degree(const Polynomial<Scalar>& c, Scalar rel_tol = Scalar(0)) {
  const Scalar scale = c.size() ? c.cwiseAbs().maxCoeff() : Scalar(0);
  if (scale == Scalar(0)) return -1;
  Eigen::Index n = c.size() - 1;
  while (n > 0 && std::abs(c(n)) <= rel_tol * scale) --n;
  return n;
}

/// Polishes `z` with Newton steps on `c`, keeping the iterate with the smallest
/// |c(z)|. At least `min_steps` steps are attempted.
template <typename Scalar>
std::complex<Scalar> newton_polish(const Polynomial<Scalar>& c, std::complex<Scalar> z,
                                   int min_steps = 2, int max_steps = 50) {
  const Polynomial<Scalar> dc = poly_derivative(c);
  std::complex<Scalar> best = z;
  Scalar best_res = std::abs(poly_eval(c, z));
  for (int step = 0; step < max_steps; ++step) {
    const std::complex<Scalar> d = poly_eval(dc, z);
    if (d == std::complex<Scalar>(0)) break;
    const std::complex<Scalar> dz = poly_eval(c, z) / d;
    z -= dz;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) break;
    const Scalar res = std::abs(poly_eval(c, z));
    if (res < best_res) {
      best = z;
      best_res = res;
    } else if (step + 1 >= min_steps) {
      break;
    }
    if (std::abs(dz) <= std::numeric_limits<Scalar>::epsilon() * std::abs(z) && step + 1 >= min_steps) break;
  }
  return best;
}

/// All roots of `c` (degree taken literally from the trailing coefficient) as
/// eigenvalues of the companion matrix, each followed by Newton polishing.
template <typename Scalar>
std::vector<std::complex<Scalar>> poly_roots(const Polynomial<Scalar>& c, int polish_steps = 2) {
  using Complex = std::complex<Scalar>;
  using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index n = c.size() - 1;
  if (n < 1) return {};
  if (c(n) == Complex(0)) throw Error(ErrorKind::InvalidArgument, "leading coefficient is zero");

  std::vector<Complex> roots;
  roots.reserve(static_cast<std::size_t>(n));
  if (n == 1) {
    roots.push_back(-c(0) / c(1));
    return roots;
  }
  Matrix companion = Matrix::Zero(n, n);
  companion.diagonal(-1).setOnes();
  companion.col(n - 1) = -c.head(n) / c(n);
  Eigen::ComplexEigenSolver<Matrix> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::InvalidArgument, "companion eigenvalue iteration did not converge");
  }
  for (Eigen::Index k = 0; k < n; ++k) roots.push_back(newton_polish(c, Complex(solver.eigenvalues()(k)), polish_steps));
  return roots;
}

/// Polynomial long division: num = quotient * den + remainder.
template <typename Scalar>
std::pair<Polynomial<Scalar>, Polynomial<Scalar>> poly_divide(Polynomial<Scalar> num, const Polynomial<Scalar>& den) {
  const Eigen::Index dn = den.size() - 1;
  const Eigen::Index nn = num.size() - 1;
  if (dn < 0 || den(dn) == std::complex<Scalar>(0)) {
    throw Error(ErrorKind::InvalidArgument, "division by a polynomial with zero leading coefficient");
  }
  if (nn < dn) return {Polynomial<Scalar>::Zero(1), num};
  Polynomial<Scalar> q = Polynomial<Scalar>::Zero(nn - dn + 1);
  for (Eigen::Index k = nn - dn; k >= 0; --k) {
    q(k) = num(k + dn) / den(dn);
    num.segment(k, dn + 1) -= q(k) * den;
  }
  return {q, num.head(std::max<Eigen::Index>(dn, 1))};
}

/// Discriminant of a z^3 + b z^2 + c z + d after normalising to a monic cubic.
template <typename Scalar>
std::complex<Scalar> monic_cubic_discriminant(const Polynomial<Scalar>& c) {
  const auto b = c(2) / c(3);
  const auto cc = c(1) / c(3);
  const auto d = c(0) / c(3);
  const Scalar k18(18), k4(4), k27(27);
  return k18 * b * cc * d - k4 * b * b * b * d + b * b * cc * cc - k4 * cc * cc * cc - k27 * d * d;
}

}  // namespace ratdyn
