#pragma once

// Dense complex eigenvalues and univariate polynomial roots.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tropep/error.hpp"

namespace tropep {

using cdouble = std::complex<double>;

/// Parlett–Reinsch balancing: D⁻¹AD with D a diagonal of powers of two,
/// so that row and column norms are comparable. Eigenvalues are unchanged
/// and the scaling itself introduces no rounding.
inline void balance(Eigen::MatrixXcd& a) {
  const Eigen::Index n = a.rows();
  constexpr double radix = 2.0;
  bool converged = false;
  while (!converged) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= radix * radix;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix * radix;
      }
      if ((c + r) / f < 0.95 * s) {
        converged = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

/// All eigenvalues (with multiplicity) of a square complex matrix:
/// balancing, Hessenberg reduction and shifted complex QR. Throws
/// numeric_error if QR does not converge within 30·n² iterations.
inline std::vector<cdouble> eigenvalues(const Eigen::MatrixXcd& matrix) {
  if (matrix.rows() != matrix.cols()) throw input_error("eigenvalues: matrix must be square");
  const Eigen::Index n = matrix.rows();
  if (n == 0) return {};
  if (n > 64) throw input_error("eigenvalues: dimension " + std::to_string(n) + " exceeds 64");
  if (!matrix.allFinite()) throw numeric_error("eigenvalues: matrix has non-finite entries");
  if (n == 1) return {matrix(0, 0)};

  Eigen::MatrixXcd a = matrix;
  balance(a);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver;
  solver.setMaxIterations(static_cast<Eigen::Index>(30 * n * n));
  solver.compute(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw numeric_error("eigenvalues: QR iteration did not converge after " + std::to_string(30 * n * n) +
                        " iterations");
  const auto& vals = solver.eigenvalues();
  return {vals.data(), vals.data() + vals.size()};
}

namespace detail {

inline cdouble horner(std::span<const cdouble> c, cdouble z, cdouble* derivative = nullptr) {
  cdouble p{0.0, 0.0}, dp{0.0, 0.0};
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
  }
  if (derivative) *derivative = dp;
  return p;
}

}  // namespace detail

/// Roots of Σ c_k z^k (ascending coefficients) via companion-matrix
/// eigenvalues followed by a few guarded Newton steps. Leading coefficients
/// below `tiny`·max|c| are treated as zero (degree drop); exact zero roots
/// are returned as 0.
inline std::vector<cdouble> polynomial_roots(std::span<const cdouble> coeffs, double tiny = 1e-14) {
  double scale = 0.0;
  for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) throw input_error("polynomial_roots: zero polynomial");

  std::size_t hi = coeffs.size();
  while (hi > 0 && std::abs(coeffs[hi - 1]) <= tiny * scale) --hi;
  std::size_t lo = 0;
  while (lo < hi && coeffs[lo] == cdouble{0.0, 0.0}) ++lo;

  std::vector<cdouble> roots(lo, cdouble{0.0, 0.0});
  if (hi == 0) return roots;
  const std::size_t degree = hi - 1 - lo;
  if (degree == 0) return roots;

  std::span<const cdouble> core = coeffs.subspan(lo, hi - lo);
  const cdouble lead = core.back();
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(degree),
                                                      static_cast<Eigen::Index>(degree));
  for (std::size_t i = 1; i < degree; ++i)
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  for (std::size_t i = 0; i < degree; ++i)
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(degree - 1)) = -core[i] / lead;

  for (cdouble z : eigenvalues(companion)) {
    for (int it = 0; it < 4; ++it) {
      cdouble d;
      const cdouble p = detail::horner(core, z, &d);
      if (d == cdouble{0.0, 0.0}) break;
      const cdouble next = z - p / d;
      if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) break;
      if (std::abs(detail::horner(core, next)) >= std::abs(p)) break;
      z = next;
    }
    roots.push_back(z);
  }
  return roots;
}

}  // namespace tropep
