#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tropep/charpoly.hpp"
#include "tropep/spectrum.hpp"

using namespace tropep;

TEST(ParametricMatrix, RejectsEmptyDimension) { EXPECT_THROW(ParametricMatrix(0), input_error); }

TEST(CharPoly, OneByOne) {
  ParametricMatrix m(1);
  m(0, 0) = parse_unipoly("3 + nu");
  EXPECT_EQ(char_poly(m), BiPoly::lambda() - BiPoly::nu() - BiPoly(3));
}

TEST(CharPoly, TwoSiteMatchesHandExpansion) {
  ParametricMatrix m(2);
  m(0, 0) = parse_unipoly("nu + i");
  m(0, 1) = 1;
  m(1, 0) = 1;
  m(1, 1) = parse_unipoly("-nu - i");
  const BiPoly expected = parse_poly_text("2 0 1 0\n0 1 0 -2\n0 2 -1 0\n");
  EXPECT_EQ(char_poly(m), expected);
}

TEST(CharPoly, MatchesCofactorExpansion) {
  std::mt19937_64 rng(11);
  for (std::size_t n = 1; n <= 5; ++n)
    for (int t = 0; t < 6; ++t) {
      const auto m = oracle::random_matrix(rng, n);
      EXPECT_EQ(char_poly(m), oracle::cofactor_char_poly(m)) << "n = " << n;
    }
}

TEST(CharPoly, NilpotentSingleEntry) {
  ParametricMatrix m(4);
  m(0, 3) = UniPoly::nu();
  EXPECT_EQ(char_poly(m), BiPoly::lambda() * BiPoly::lambda() * BiPoly::lambda() * BiPoly::lambda());
}

// Trace and determinant identities: a_{n-1} = −tr M and a_0 = (−1)^n det M.
TEST(CharPolyProperty, TraceAndDeterminantIdentities) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + t % 5;
    const auto m = oracle::random_matrix(rng, n);
    const BiPoly p = char_poly(m);
    EXPECT_EQ(lambda_coefficient(p, static_cast<unsigned>(n)), UniPoly(1));
    EXPECT_EQ(lambda_coefficient(p, static_cast<unsigned>(n - 1)), -m.trace());
    const BiPoly det = oracle::cofactor_char_poly(m);
    EXPECT_EQ(lambda_coefficient(p, 0), lambda_coefficient(det, 0));
  }
}

TEST(EvalMatrix, EntrywiseEvaluation) {
  ParametricMatrix m(2);
  m(0, 1) = parse_unipoly("nu^2 + 1");
  m(1, 0) = parse_unipoly("i nu");
  const auto a = eval_matrix(m, {2.0, 0.0});
  EXPECT_EQ(a(0, 1), std::complex<double>(5, 0));
  EXPECT_EQ(a(1, 0), std::complex<double>(0, 2));
  EXPECT_EQ(a(0, 0), std::complex<double>(0, 0));
}

TEST(Eigenvalues, Diagonal) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = std::complex<double>(0, 2);
  const auto ev = eigenvalues(a);
  EXPECT_LT(oracle::multiset_distance(ev, {1.0, {0, 2}}), 1e-12);
}

TEST(Eigenvalues, TwoSiteAtTheEP) {
  Eigen::MatrixXcd a(2, 2);
  a << std::complex<double>(0, 1), 1, 1, std::complex<double>(0, -1);
  for (const auto& z : eigenvalues(a)) EXPECT_LT(std::abs(z), 1e-8);
}

TEST(Eigenvalues, RejectsBadInput) {
  EXPECT_THROW(eigenvalues(Eigen::MatrixXcd::Zero(2, 3)), input_error);
  EXPECT_THROW(eigenvalues(Eigen::MatrixXcd::Identity(65, 65)), input_error);
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(2, 2);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(eigenvalues(bad), numeric_error);
}

TEST(Eigenvalues, BackwardErrorIsSmall) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 20; ++t) {
    const auto a = oracle::random_complex_matrix(rng, 8);
    const double norm = a.norm();
    for (const auto& lam : eigenvalues(a)) {
      // Inverse iteration for an eigenvector of the computed eigenvalue.
      Eigen::MatrixXcd shifted = a - (lam + std::complex<double>(1e-10, 0)) * Eigen::MatrixXcd::Identity(8, 8);
      Eigen::VectorXcd v = Eigen::VectorXcd::Ones(8);
      for (int it = 0; it < 3; ++it) {
        v = shifted.fullPivLu().solve(v);
        v.normalize();
      }
      EXPECT_LE((a * v - lam * v).norm(), 1e-8 * norm);
    }
  }
}

// Random 6×6: eigenvalues agree with roots of the exact characteristic
// polynomial found by an independent Durand–Kerner iteration.
TEST(EigenvaluesProperty, MatchExactCharPolyRoots) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int t = 0; t < 100; ++t) {
    const auto m = oracle::random_matrix(rng, 6, 1);
    const std::complex<double> nu(u(rng), u(rng));
    const auto ev = eigenvalues(eval_matrix(m, nu));
    const BiPoly p = char_poly(m);
    std::vector<std::complex<double>> c;
    for (const auto& a : lambda_coefficients(p)) c.push_back(a(nu));
    const auto roots = oracle::durand_kerner(c);
    EXPECT_LT(oracle::multiset_distance(ev, roots), 1e-6) << "trial " << t;
  }
}

TEST(EigenvaluesProperty, InvariantUnderUnitaryConjugation) {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 30; ++t) {
    const auto a = oracle::random_complex_matrix(rng, 6);
    const Eigen::MatrixXcd q = oracle::random_complex_matrix(rng, 6).householderQr().householderQ();
    const auto e1 = eigenvalues(a);
    const auto e2 = eigenvalues(q * a * q.adjoint());
    EXPECT_LT(oracle::multiset_distance(e1, e2), 1e-7);
  }
}

TEST(PolynomialRoots, DropsVanishingLeadingTermsAndKeepsZeros) {
  // 0·z³ + z² − 1 with two exact zero roots prepended: z²(z² − 1)·z⁰
  const std::vector<std::complex<double>> c{0, 0, -1, 0, 1, 0};
  const auto r = polynomial_roots(c);
  EXPECT_LT(oracle::multiset_distance(r, {0, 0, 1, -1}), 1e-12);
  EXPECT_THROW(polynomial_roots(std::vector<std::complex<double>>{0, 0}), input_error);
  EXPECT_TRUE(polynomial_roots(std::vector<std::complex<double>>{3}).empty());
}
