#pragma once

// Exact builders for the Hamiltonians H(ν) studied here. The perturbation
// parameter of each model is replaced by the formal variable ν.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <tuple>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tropep/charpoly.hpp"
#include "tropep/error.hpp"
#include "tropep/poly.hpp"
#include "tropep/rational.hpp"

namespace tropep {

struct TwoSiteParams {
  Rational kappa{1};
  Rational gamma{1};
};

/// [[ν + iγ, κ], [κ, −ν − iγ]]
inline ParametricMatrix two_site(const TwoSiteParams& p) {
  if (sgn(p.kappa) == 0) throw input_error("two_site: kappa must be non-zero (decoupled sites)");
  const UniPoly igamma(GaussianRational(Rational(0), p.gamma));
  ParametricMatrix h(2);
  h(0, 0) = UniPoly::nu() + igamma;
  h(0, 1) = UniPoly(p.kappa);
  h(1, 0) = UniPoly(p.kappa);
  h(1, 1) = -(UniPoly::nu() + igamma);
  return h;
}

/// With kappa_sq set, the gauge form D·H·D⁻¹ (D = diag(1, κ, κ²)) is built
/// instead, [[ν + iγ, 1, 0], [κ², 0, 1], [0, κ², ν·tanφ − iγ]]. It has the
/// same characteristic polynomial but needs only κ² to be rational, which
/// keeps γ² = 2κ² exact.
struct TrimerParams {
  Rational kappa{1};
  Rational gamma{1};
  Rational tan_phi{0};
  std::optional<Rational> kappa_sq;
};

/// [[ν + iγ, κ, 0], [κ, 0, κ], [0, κ, ν·tanφ − iγ]]
inline ParametricMatrix three_site(const TrimerParams& p) {
  const UniPoly igamma(GaussianRational(Rational(0), p.gamma));
  ParametricMatrix h(3);
  h(0, 0) = UniPoly::nu() + igamma;
  h(2, 2) = UniPoly::nu() * UniPoly(p.tan_phi) - igamma;
  if (p.kappa_sq) {
    if (sgn(*p.kappa_sq) == 0) throw input_error("three_site: kappa_sq must be non-zero");
    h(0, 1) = UniPoly(1);
    h(1, 2) = UniPoly(1);
    h(1, 0) = UniPoly(*p.kappa_sq);
    h(2, 1) = UniPoly(*p.kappa_sq);
    return h;
  }
  if (sgn(p.kappa) == 0) throw input_error("three_site: kappa must be non-zero");
  h(0, 1) = h(1, 0) = h(1, 2) = h(2, 1) = UniPoly(p.kappa);
  return h;
}

/// Corner entry (1, N) is corner·ν; corner = 0 removes the perturbation.
struct SSHParams {
  std::size_t N = 4;
  Rational t1{1};
  Rational t2{1};
  Rational gamma{1};
  Rational corner{1};
};

/// Tridiagonal chain. Bonds alternate between intra-cell (t₁ − γ above the
/// diagonal, t₁ + γ below) and inter-cell (t₂ both ways), starting with an
/// intra-cell bond between sites 1 and 2.
inline ParametricMatrix ssh_chain(const SSHParams& p) {
  if (p.N < 2) throw input_error("ssh_chain: N must be at least 2");
  ParametricMatrix h(p.N);
  for (std::size_t j = 0; j + 1 < p.N; ++j) {
    if (j % 2 == 0) {
      h(j, j + 1) = UniPoly(Rational(p.t1 - p.gamma));
      h(j + 1, j) = UniPoly(Rational(p.t1 + p.gamma));
    } else {
      h(j, j + 1) = UniPoly(p.t2);
      h(j + 1, j) = UniPoly(p.t2);
    }
  }
  h(0, p.N - 1) += UniPoly::nu() * UniPoly(p.corner);
  return h;
}

/// Direction of the perturbation on the sphere: δ = ν·cosθ·cosφ,
/// Δ = ν·cosθ·sinφ, η = ν·sinθ. The trig values are caller-supplied
/// rationals; cos² + sin² = 1 is not checked.
struct HNParams {
  std::size_t N = 4;
  Rational cos_theta{1}, sin_theta{0};
  Rational cos_phi{1}, sin_phi{0};
  /// Disorder scales of the N−1 forward (upper) and backward (lower) bonds;
  /// empty means all ones. For N = 4 these are (a, b, m) and (c, d, n).
  std::vector<Rational> upper, lower;
};

/// Asymmetric chain with δ·upper_j above the diagonal, (2 + δ)·lower_j below
/// it, Δ at (1, N) and η at (1, N−1).
inline ParametricMatrix hatano_nelson(const HNParams& p) {
  if (p.N < 4) throw input_error("hatano_nelson: N must be at least 4");
  const Rational c_delta = p.cos_theta * p.cos_phi;
  const Rational c_Delta = p.cos_theta * p.sin_phi;
  const Rational& c_eta = p.sin_theta;
  if (sgn(c_delta) == 0 && sgn(c_Delta) == 0 && sgn(c_eta) == 0)
    throw input_error("hatano_nelson: perturbation direction is zero (no dependence on nu)");
  auto factors = [&](const std::vector<Rational>& v, const char* name) {
    if (v.empty()) return std::vector<Rational>(p.N - 1, Rational(1));
    if (v.size() != p.N - 1)
      throw input_error(std::string("hatano_nelson: ") + name + " disorder needs N-1 = " +
                        std::to_string(p.N - 1) + " factors");
    for (const auto& f : v)
      if (sgn(f) == 0) throw input_error(std::string("hatano_nelson: ") + name + " disorder factor is zero");
    return v;
  };
  const auto up = factors(p.upper, "upper");
  const auto lo = factors(p.lower, "lower");

  const UniPoly delta = UniPoly::nu() * UniPoly(c_delta);
  ParametricMatrix h(p.N);
  for (std::size_t j = 0; j + 1 < p.N; ++j) {
    h(j, j + 1) = delta * UniPoly(up[j]);
    h(j + 1, j) = (UniPoly(2) + delta) * UniPoly(lo[j]);
  }
  h(0, p.N - 1) += UniPoly::nu() * UniPoly(c_Delta);
  h(0, p.N - 2) += UniPoly::nu() * UniPoly(c_eta);
  return h;
}

/// Companion matrix of λ^d + c_{d−1}λ^{d−1} + … + c₀: ones on the
/// subdiagonal and −c in the last column.
inline ParametricMatrix companion(std::span<const UniPoly> coeffs) {
  if (coeffs.empty()) throw input_error("companion: need at least one coefficient");
  const std::size_t d = coeffs.size();
  ParametricMatrix h(d);
  for (std::size_t j = 1; j < d; ++j) h(j, j - 1) = UniPoly(1);
  for (std::size_t j = 0; j < d; ++j) h(j, d - 1) = -coeffs[j];
  return h;
}

// ---------------------------------------------------------------------------
// Presets with 12-significant-digit stand-ins for irrational parameters.

/// (cos πt, sin πt), exact when t is a multiple of 1/2.
inline std::pair<Rational, Rational> trig_of_pi_fraction(const Rational& t) {
  Rational twice = t * 2;
  twice.canonicalize();
  if (twice.get_den() == 1) {
    const Integer r = twice.get_num() % 4;
    const long q = (r.get_si() + 4) % 4;
    static constexpr int c[4] = {1, 0, -1, 0};
    static constexpr int s[4] = {0, 1, 0, -1};
    return {Rational(c[q]), Rational(s[q])};
  }
  const double a = std::numbers::pi * t.get_d();
  return {rationalize(std::cos(a)), rationalize(std::sin(a))};
}

/// tan πt, exact when t is a multiple of 1/4.
inline Rational tan_of_pi_fraction(const Rational& t) {
  Rational four = t * 4;
  four.canonicalize();
  if (four.get_den() == 1) {
    const Integer r = four.get_num() % 4;
    switch ((r.get_si() + 4) % 4) {
      case 0: return Rational(0);
      case 1: return Rational(1);
      case 3: return Rational(-1);
      default: throw input_error("tan is undefined at odd multiples of pi/2");
    }
  }
  return rationalize(std::tan(std::numbers::pi * t.get_d()));
}

inline TwoSiteParams preset_two_site() { return {Rational(1), Rational(1)}; }

/// Third-order trimer: γ = √2·κ, tanφ = −1/√3. Written in gauge form with
/// κ² = 2, γ = 2 so that γ² = 2κ² holds exactly.
inline TrimerParams preset_trimer_ep3() {
  TrimerParams t;
  t.gamma = 2;
  t.kappa_sq = Rational(2);
  t.tan_phi = rationalize(-1.0 / std::numbers::sqrt3);
  return t;
}

/// Second-order trimer: as above with tanφ = −1.
inline TrimerParams preset_trimer_ep2() {
  TrimerParams t = preset_trimer_ep3();
  t.tan_phi = -1;
  return t;
}

inline SSHParams preset_ssh() { return {5, Rational(1), Rational(1), Rational(1), Rational(1)}; }

/// θ = 0, φ = π/4.
inline HNParams preset_hatano_nelson() {
  HNParams h;
  std::tie(h.cos_theta, h.sin_theta) = trig_of_pi_fraction(Rational(0));
  std::tie(h.cos_phi, h.sin_phi) = trig_of_pi_fraction(Rational(1, 4));
  return h;
}

}  // namespace tropep
