#pragma once

// Parametric matrices H(ν) with polynomial entries and their exact
// characteristic polynomial p(ν, λ) = det(λ·Id − H(ν)).

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <vector>

#include "tropep/error.hpp"
#include "tropep/poly.hpp"

namespace tropep {

using ComplexMatrix = Eigen::MatrixXcd;

class ParametricMatrix {
 public:
  explicit ParametricMatrix(std::size_t n) : n_(n), entries_(n * n) {
    if (n == 0) throw input_error("parametric matrix must have dimension >= 1");
  }

  std::size_t size() const { return n_; }

  UniPoly& operator()(std::size_t r, std::size_t c) { return entries_[r * n_ + c]; }
  const UniPoly& operator()(std::size_t r, std::size_t c) const { return entries_[r * n_ + c]; }

  UniPoly trace() const {
    UniPoly t;
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  friend ParametricMatrix operator*(const ParametricMatrix& a, const ParametricMatrix& b) {
    if (a.n_ != b.n_) throw input_error("dimension mismatch in matrix product");
    ParametricMatrix r(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t k = 0; k < a.n_; ++k) {
        const UniPoly& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < a.n_; ++j) {
          const UniPoly& bkj = b(k, j);
          if (!bkj.is_zero()) r(i, j) += aik * bkj;
        }
      }
    return r;
  }
  friend bool operator==(const ParametricMatrix& a, const ParametricMatrix& b) {
    return a.n_ == b.n_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t n_;
  std::vector<UniPoly> entries_;
};

/// det(λ·Id − M) via the Faddeev–LeVerrier recurrence over Q(i)[ν]:
///   M_0 = 0, c_n = 1,
///   M_k = A·M_{k-1} + c_{n-k+1}·Id,  c_{n-k} = −tr(A·M_k)/k.
/// Only divisions by the integers 1..n occur, all exact.
inline BiPoly char_poly(const ParametricMatrix& m) {
  const std::size_t n = m.size();
  std::vector<UniPoly> coeff(n + 1);
  coeff[n] = UniPoly(1);

  ParametricMatrix mk(n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    ParametricMatrix next = m * mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += coeff[n - k + 1];
    mk = std::move(next);
    // tr(A·M_k) without forming the product.
    UniPoly tr;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const UniPoly& a = m(i, j);
        const UniPoly& b = mk(j, i);
        if (!a.is_zero() && !b.is_zero()) tr += a * b;
      }
    coeff[n - k] = -(tr / GaussianRational(static_cast<long>(k)));
  }
  return BiPoly::from_lambda_coefficients(coeff);
}

inline ComplexMatrix eval_matrix(const ParametricMatrix& m, std::complex<double> nu) {
  const auto n = static_cast<Eigen::Index>(m.size());
  ComplexMatrix out(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c)
      out(r, c) = m(static_cast<std::size_t>(r), static_cast<std::size_t>(c))(nu);
  return out;
}

}  // namespace tropep
