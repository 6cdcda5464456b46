#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tropep/tropep.hpp"

using namespace tropep;

namespace {

BiPoly L() { return BiPoly::lambda(); }
BiPoly N() { return BiPoly::nu(); }
const GaussianRational I = GaussianRational::i();

BiPoly pow(BiPoly b, int e) {
  BiPoly r(1);
  for (int k = 0; k < e; ++k) r = r * b;
  return r;
}

TropicalPolynomial trop_of(const ParametricMatrix& m) { return tropicalize(char_poly(m)); }
unsigned order_of(const ParametricMatrix& m) { return ep_order(trop_of(m)).order; }

TropicalPolynomial trop(std::initializer_list<std::pair<unsigned, long long>> terms) {
  std::vector<TropicalTerm> t;
  for (auto [i, c] : terms) t.push_back({i, ExtendedInt(c)});
  return TropicalPolynomial(std::move(t));
}

HNParams hn_angles(const Rational& ct, const Rational& st, const Rational& cp, const Rational& sp) {
  HNParams h;
  h.cos_theta = ct, h.sin_theta = st, h.cos_phi = cp, h.sin_phi = sp;
  return h;
}

}  // namespace

TEST(TwoSite, CharPolyAndEP) {
  const auto m = two_site({1, 1});
  EXPECT_EQ(char_poly(m), pow(L(), 2) - pow(N(), 2) - GaussianRational(2) * I * N());
  EXPECT_EQ(char_poly(m), oracle::cofactor_char_poly(m));
  for (const auto& z : eigenvalues(eval_matrix(m, 0.0))) EXPECT_LT(std::abs(z), 1e-8);
  EXPECT_EQ(order_of(m), 2u);
  EXPECT_THROW(two_site({0, 1}), input_error);
}

TEST(TwoSite, HermitianCaseIsAnalytic) {
  const auto m = two_site({1, 0});
  EXPECT_EQ(char_poly(m), pow(L(), 2) - pow(N(), 2) - BiPoly(1));
  const auto cls = ep_order(trop_of(m));
  EXPECT_TRUE(cls.is_degenerate() || cls.order == 1);
  EXPECT_FALSE(cls.is_exceptional());
}

TEST(Trimer, GaugeFormHasTheSameCharPoly) {
  // κ = 3: the symmetric builder with κ and the gauge form with κ² = 9.
  TrimerParams sym{Rational(3), Rational(5, 2), Rational(-2, 7), std::nullopt};
  TrimerParams gauge = sym;
  gauge.kappa_sq = Rational(9);
  EXPECT_EQ(char_poly(three_site(sym)), char_poly(three_site(gauge)));
  EXPECT_EQ(char_poly(three_site(gauge)), oracle::cofactor_char_poly(three_site(gauge)));
}

TEST(Trimer, PresetOrders) {
  EXPECT_EQ(to_string(trop_of(three_site(preset_trimer_ep3()))), "min(1, \xCF\x89+1, 2\xCF\x89+1, 3\xCF\x89)");
  EXPECT_EQ(order_of(three_site(preset_trimer_ep3())), 3u);
  EXPECT_EQ(order_of(three_site(preset_trimer_ep2())), 2u);
  for (const auto& z : eigenvalues(eval_matrix(three_site(preset_trimer_ep3()), 0.0))) EXPECT_LT(std::abs(z), 1e-5);
}

// With κ = 1 and γ a 12-digit stand-in for √2, γ² − 2κ² is tiny but not
// zero, so the exact pipeline sees an analytic splitting.
TEST(Trimer, RationalSqrtTwoBreaksTheCancellation) {
  TrimerParams p;
  p.kappa = 1;
  p.gamma = rationalize(std::sqrt(2.0));
  p.tan_phi = rationalize(-1.0 / std::sqrt(3.0));
  EXPECT_EQ(order_of(three_site(p)), 1u);
  EXPECT_THROW(three_site({Rational(0), Rational(1), Rational(0), std::nullopt}), input_error);
  TrimerParams zero_sq;
  zero_sq.kappa_sq = Rational(0);
  EXPECT_THROW(three_site(zero_sq), input_error);
}

TEST(SSH, MatrixLayout) {
  const auto m = ssh_chain({4, Rational(2), Rational(3), Rational(1), Rational(1)});
  EXPECT_EQ(m(0, 1), UniPoly(1));  // t1 − γ
  EXPECT_EQ(m(1, 0), UniPoly(3));  // t1 + γ
  EXPECT_EQ(m(1, 2), UniPoly(3));  // t2
  EXPECT_EQ(m(2, 1), UniPoly(3));
  EXPECT_EQ(m(2, 3), UniPoly(1));
  EXPECT_EQ(m(0, 3), UniPoly::nu());
  EXPECT_TRUE(m(0, 0).is_zero());
  EXPECT_THROW(ssh_chain({1, Rational(1), Rational(1), Rational(1), Rational(1)}), input_error);
}

// Exact polynomials of the chain at t₁ = γ = t₂ = 1, cross-checked by
// cofactor expansion.
TEST(SSH, CharPolysAtTheTransition) {
  const std::map<std::size_t, BiPoly> expected{
      {4, pow(L(), 4) - pow(L(), 2) - GaussianRational(4) * N()},
      {5, pow(L(), 5) - GaussianRational(2) * pow(L(), 3) + L() - GaussianRational(4) * N()},
      {6, pow(L(), 6) - GaussianRational(2) * pow(L(), 4) + pow(L(), 2) - GaussianRational(8) * N()},
      {8, pow(L(), 8) - GaussianRational(3) * pow(L(), 6) + GaussianRational(3) * pow(L(), 4) - pow(L(), 2) -
              GaussianRational(16) * N()},
  };
  for (const auto& [n, p] : expected) {
    const auto m = ssh_chain({n, Rational(1), Rational(1), Rational(1), Rational(1)});
    EXPECT_EQ(char_poly(m), p) << "N = " << n;
    EXPECT_EQ(char_poly(m), oracle::cofactor_char_poly(m)) << "N = " << n;
  }
}

TEST(SSH, NoCollapseAwayFromTheTransition) {
  const auto p = char_poly(ssh_chain({5, Rational(2), Rational(1), Rational(1), Rational(1)}));
  EXPECT_GE(newton_polygon(p).hull.size(), 3u);
  EXPECT_LT(ep_order(tropicalize(p)).order, 5u);
}

TEST(SSH, WithoutTheCornerTheBulkCollapsesToZero) {
  for (std::size_t n : {2u, 3u, 4u, 5u, 6u, 7u, 8u}) {
    const auto m = ssh_chain({n, Rational(1), Rational(0), Rational(1), Rational(0)});
    EXPECT_EQ(char_poly(m), pow(L(), static_cast<int>(n))) << "N = " << n;
  }
}

TEST(SSH, AllHoppingsZeroLeavesANilpotentMatrix) {
  const auto m = ssh_chain({4, Rational(0), Rational(0), Rational(0), Rational(1)});
  EXPECT_EQ(char_poly(m), pow(L(), 4));
}

// λ⁰ coefficient for even N at t₂ = 0:
//   (γ² − t₁²)^{N/2} − t₂^{(N−2)/2} (t₁ + γ)^{N/2} ν,
// so the ν term survives only for N = 2.
TEST(SSH, ConstantTermAtVanishingInterCellHopping) {
  std::mt19937_64 rng(41);
  for (std::size_t n : {2u, 4u, 6u, 8u})
    for (int t = 0; t < 3; ++t) {
      const Rational t1 = oracle::random_rational(rng), g = oracle::random_rational(rng);
      const auto p = char_poly(ssh_chain({n, t1, Rational(0), g, Rational(1)}));
      Rational constant = 1, corner = n == 2 ? 1 : 0;
      for (std::size_t k = 0; k < n / 2; ++k) {
        constant *= g * g - t1 * t1;
        corner *= t1 + g;
      }
      const UniPoly expected = UniPoly(GaussianRational(constant)) - UniPoly::nu() * UniPoly(GaussianRational(corner));
      EXPECT_EQ(lambda_coefficient(p, 0), expected) << "N = " << n;
    }
}

// The ν term of the λ⁰ coefficient for even N and any t₂.
TEST(SSH, CornerTermOfTheConstantCoefficient) {
  std::mt19937_64 rng(44);
  for (std::size_t n : {2u, 4u, 6u, 8u})
    for (int t = 0; t < 3; ++t) {
      const Rational t1 = oracle::random_rational(rng), g = oracle::random_rational(rng),
                     t2 = oracle::random_rational(rng);
      const auto p = char_poly(ssh_chain({n, t1, t2, g, Rational(1)}));
      Rational corner = 1;
      for (std::size_t k = 0; k < n / 2; ++k) corner *= t1 + g;
      for (std::size_t k = 0; k + 1 < n / 2; ++k) corner *= t2;
      EXPECT_EQ(lambda_coefficient(p, 0).coefficient(1), GaussianRational(Rational(-corner))) << "N = " << n;
    }
}

TEST(HatanoNelson, MatrixLayoutForFourSites) {
  HNParams h = hn_angles(Rational(3, 5), Rational(4, 5), Rational(5, 13), Rational(12, 13));
  h.upper = {Rational(2), Rational(3), Rational(5)};
  h.lower = {Rational(7), Rational(11), Rational(13)};
  const auto m = hatano_nelson(h);
  const Rational cd = Rational(3, 5) * Rational(5, 13), cD = Rational(3, 5) * Rational(12, 13);
  EXPECT_EQ(m(0, 1), UniPoly::nu() * UniPoly(GaussianRational(Rational(2 * cd))));
  EXPECT_EQ(m(1, 0), (UniPoly(2) + UniPoly::nu() * UniPoly(GaussianRational(cd))) * UniPoly(7));
  EXPECT_EQ(m(0, 2), UniPoly::nu() * UniPoly(GaussianRational(Rational(4, 5))));
  EXPECT_EQ(m(0, 3), UniPoly::nu() * UniPoly(GaussianRational(cD)));
  EXPECT_EQ(m(3, 2), (UniPoly(2) + UniPoly::nu() * UniPoly(GaussianRational(cd))) * UniPoly(13));
  EXPECT_TRUE(m(3, 0).is_zero());
}

TEST(HatanoNelson, CleanEqualsUnitDisorder) {
  HNParams clean = hn_angles(Rational(3, 5), Rational(4, 5), Rational(5, 13), Rational(12, 13));
  HNParams ones = clean;
  ones.upper = ones.lower = {Rational(1), Rational(1), Rational(1)};
  EXPECT_EQ(hatano_nelson(clean), hatano_nelson(ones));
}

TEST(HatanoNelson, OrdersAtTheStudiedAngles) {
  EXPECT_EQ(order_of(hatano_nelson(preset_hatano_nelson())), 4u);
  HNParams h00;
  std::tie(h00.cos_theta, h00.sin_theta) = trig_of_pi_fraction(Rational(0));
  std::tie(h00.cos_phi, h00.sin_phi) = trig_of_pi_fraction(Rational(0));
  EXPECT_EQ(order_of(hatano_nelson(h00)), 2u);
  HNParams h40 = h00;
  std::tie(h40.cos_theta, h40.sin_theta) = trig_of_pi_fraction(Rational(1, 4));
  EXPECT_EQ(order_of(hatano_nelson(h40)), 3u);
}

TEST(HatanoNelson, GenericAnglesAndDisorderInvariance) {
  const HNParams clean = hn_angles(Rational(3, 5), Rational(4, 5), Rational(5, 13), Rational(12, 13));
  const auto expected = trop({{0, 1}, {1, 1}, {2, 1}, {4, 0}});
  EXPECT_EQ(trop_of(hatano_nelson(clean)), expected);
  std::mt19937_64 rng(42);
  for (int t = 0; t < 20; ++t) {
    HNParams d = clean;
    for (int k = 0; k < 3; ++k) {
      d.upper.push_back(oracle::random_nonzero_rational(rng));
      d.lower.push_back(oracle::random_nonzero_rational(rng));
    }
    EXPECT_EQ(trop_of(hatano_nelson(d)), expected);
  }
}

TEST(HatanoNelson, Validation) {
  EXPECT_THROW(hatano_nelson(hn_angles(Rational(0), Rational(0), Rational(1), Rational(0))), input_error);
  HNParams zero = preset_hatano_nelson();
  zero.upper = {Rational(1), Rational(0), Rational(1)};
  EXPECT_THROW(hatano_nelson(zero), input_error);
  HNParams short_list = preset_hatano_nelson();
  short_list.lower = {Rational(1)};
  EXPECT_THROW(hatano_nelson(short_list), input_error);
  HNParams three = preset_hatano_nelson();
  three.N = 3;
  EXPECT_THROW(hatano_nelson(three), input_error);
}

TEST(HatanoNelson, GeneralSizeFollowsTheSamePattern) {
  HNParams h = preset_hatano_nelson();
  h.N = 6;
  const auto m = hatano_nelson(h);
  EXPECT_FALSE(m(0, 5).is_zero());
  EXPECT_EQ(char_poly(m), oracle::cofactor_char_poly(m));
  EXPECT_EQ(*char_poly(m).lambda_degree(), 6u);
}

TEST(Companion, ReproducesThePolynomial) {
  const std::vector<UniPoly> c3{-UniPoly::nu(), UniPoly(), UniPoly()};
  EXPECT_EQ(char_poly(companion(c3)), pow(L(), 3) - N());
  EXPECT_EQ(order_of(companion(c3)), 3u);
  const std::vector<UniPoly> c2{-UniPoly::nu(), UniPoly()};
  EXPECT_EQ(char_poly(companion(c2)), pow(L(), 2) - N());
  EXPECT_EQ(order_of(companion(c2)), 2u);
  const std::vector<UniPoly> sq{-(UniPoly::nu() * UniPoly::nu()), UniPoly(), UniPoly()};
  const auto cls = ep_order(trop_of(companion(sq)));
  ASSERT_EQ(cls.roots.size(), 1u);
  EXPECT_EQ(cls.roots[0].value, Fraction(2, 3));
  EXPECT_EQ(cls.order, 3u);
  EXPECT_THROW(companion(std::vector<UniPoly>{}), input_error);
}

TEST(CompanionProperty, RandomCoefficients) {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 40; ++t) {
    const int d = 1 + t % 5;
    std::vector<UniPoly> c;
    BiPoly expected = pow(L(), d);
    for (int k = 0; k < d; ++k) {
      c.push_back(oracle::random_unipoly(rng, 3, 2));
      for (const auto& [e, coef] : c.back().terms()) expected += BiPoly::monomial(coef, static_cast<unsigned>(k), e);
    }
    EXPECT_EQ(char_poly(companion(c)), expected);
  }
}

TEST(Models, EveryBuilderIsMonicOfFullDegree) {
  const std::vector<std::pair<std::size_t, ParametricMatrix>> ms{
      {2, two_site(preset_two_site())},
      {3, three_site(preset_trimer_ep3())},
      {5, ssh_chain(preset_ssh())},
      {4, hatano_nelson(preset_hatano_nelson())},
  };
  for (const auto& [n, m] : ms) {
    const auto p = char_poly(m);
    EXPECT_EQ(*p.lambda_degree(), n);
    EXPECT_EQ(lambda_coefficient(p, static_cast<unsigned>(n)), UniPoly(1));
  }
}

TEST(Presets, TrigHelpers) {
  EXPECT_EQ(trig_of_pi_fraction(Rational(1, 2)), std::make_pair(Rational(0), Rational(1)));
  EXPECT_EQ(trig_of_pi_fraction(Rational(-1)), std::make_pair(Rational(-1), Rational(0)));
  EXPECT_EQ(trig_of_pi_fraction(Rational(1, 4)).first, rationalize(std::sqrt(0.5)));
  EXPECT_EQ(tan_of_pi_fraction(Rational(-1, 4)), Rational(-1));
  EXPECT_EQ(tan_of_pi_fraction(Rational(-1, 6)), rationalize(-1.0 / std::sqrt(3.0)));
  EXPECT_THROW(tan_of_pi_fraction(Rational(1, 2)), input_error);
}
