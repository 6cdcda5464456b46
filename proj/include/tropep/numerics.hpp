#pragma once

// Floating-point checks of the exact pipeline: leading splitting exponent
// near ν = 0 and eigenvalue holonomy around loops in the ν-plane.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "tropep/assignment.hpp"
#include "tropep/charpoly.hpp"
#include "tropep/csv.hpp"
#include "tropep/error.hpp"
#include "tropep/parallel.hpp"
#include "tropep/spectrum.hpp"

namespace tropep {

struct Decades {
  double k_min = 3.0;  // ν runs from 10^{-k_max} up to 10^{-k_min}
  double k_max = 9.0;
  std::size_t per_decade = 4;
};

struct SplittingSample {
  double nu;
  double splitting;
};

struct SplittingFit {
  double exponent = 0.0;
  double std_error = 0.0;
  std::vector<SplittingSample> samples;
};

inline double max_pairwise_distance(const std::vector<cdouble>& ev) {
  double d = 0.0;
  for (std::size_t a = 0; a < ev.size(); ++a)
    for (std::size_t b = a + 1; b < ev.size(); ++b) d = std::max(d, std::abs(ev[a] - ev[b]));
  return d;
}

/// Least-squares slope of log(max pairwise eigenvalue distance) against
/// log ν for ν = 10^{-k}, k on a uniform grid over the requested decades.
inline SplittingFit splitting_exponent(const ParametricMatrix& m, const Decades& dec = {}) {
  if (!(dec.k_max - dec.k_min >= 3.0)) throw input_error("splitting fit needs at least 3 decades (k_max - k_min >= 3)");
  if (dec.per_decade < 1) throw input_error("splitting fit needs at least one sample per decade");
  const auto count = static_cast<std::size_t>(std::llround((dec.k_max - dec.k_min) * static_cast<double>(dec.per_decade))) + 1;

  SplittingFit fit;
  fit.samples.resize(count);
  detail::parallel_for(count, [&](std::size_t j) {
    const double k = dec.k_max - (dec.k_max - dec.k_min) * static_cast<double>(j) / static_cast<double>(count - 1);
    const double nu = std::pow(10.0, -k);
    fit.samples[j] = {nu, max_pairwise_distance(eigenvalues(eval_matrix(m, nu)))};
  });

  std::vector<std::pair<double, double>> xy;
  for (const auto& s : fit.samples)
    if (s.splitting >= 1e-12) xy.emplace_back(std::log(s.nu), std::log(s.splitting));
  if (xy.empty()) throw numeric_error("degenerate or constant spectrum: splitting below 1e-12 at every sample");
  if (xy.size() < 3) throw numeric_error("splitting fit: fewer than 3 usable samples");

  const double n = static_cast<double>(xy.size());
  double mx = 0, my = 0;
  for (auto [x, y] : xy) mx += x, my += y;
  mx /= n, my /= n;
  double sxx = 0, sxy = 0;
  for (auto [x, y] : xy) sxx += (x - mx) * (x - mx), sxy += (x - mx) * (y - my);
  fit.exponent = sxy / sxx;
  const double intercept = my - fit.exponent * mx;
  double ssr = 0;
  for (auto [x, y] : xy) {
    const double r = y - intercept - fit.exponent * x;
    ssr += r * r;
  }
  fit.std_error = xy.size() > 2 ? std::sqrt(ssr / (n - 2.0) / sxx) : 0.0;
  return fit;
}

// ---------------------------------------------------------------------------
// Holonomy

struct LoopSpec {
  enum class Mode { enclosing, touching };
  double c = 0.1;
  std::size_t K = 512;
  Mode mode = Mode::enclosing;
  /// Touching loops are circles of radius c centred at c·(1 + touch_gap):
  /// they pass at distance c·touch_gap from ν = 0 without enclosing it.
  double touch_gap = 0.25;

  void validate() const {
    if (!(c > 0.0) || !std::isfinite(c)) throw input_error("loop radius c must be positive");
    if (K < 64) throw input_error("loop needs K >= 64 samples");
    if (mode == Mode::touching && !(touch_gap > 0.0)) throw input_error("touching loop needs a positive gap");
  }
  cdouble nu(double psi) const {
    const cdouble circle = std::polar(c, psi);
    return mode == Mode::enclosing ? circle : c * (1.0 + touch_gap) + circle;
  }
};

inline const char* to_string(LoopSpec::Mode m) { return m == LoopSpec::Mode::enclosing ? "enclosing" : "touching"; }

struct HolonomyResult {
  /// Eigenvalue j at ψ = 0 continues into eigenvalue permutation[j] at ψ = 2π.
  std::vector<std::size_t> permutation;
  std::vector<double> psi;                       // K + 1 samples, psi.back() = 2π
  std::vector<std::vector<cdouble>> trajectories;  // [index][sample]
  std::optional<unsigned> petal_count;            // touching loops only
  std::size_t K = 0;                              // after any refinement
  double max_step = 0.0, median_step = 0.0;
};

/// Cycles of a permutation, each starting at its smallest element; fixed
/// points included.
inline std::vector<std::vector<std::size_t>> cycles(const std::vector<std::size_t>& perm) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<char> seen(perm.size(), 0);
  for (std::size_t s = 0; s < perm.size(); ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> cyc;
    for (std::size_t j = s; !seen[j]; j = perm[j]) {
      seen[j] = 1;
      cyc.push_back(j);
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

/// Cycle lengths, descending.
inline std::vector<std::size_t> cycle_type(const std::vector<std::size_t>& perm) {
  std::vector<std::size_t> t;
  for (const auto& c : cycles(perm)) t.push_back(c.size());
  std::sort(t.rbegin(), t.rend());
  return t;
}

/// "(0 1 2 3)"; fixed points omitted; "()" for the identity.
inline std::string cycle_notation(const std::vector<std::size_t>& perm) {
  std::string out;
  for (const auto& c : cycles(perm)) {
    if (c.size() < 2) continue;
    out += "(";
    for (std::size_t j = 0; j < c.size(); ++j) out += (j ? " " : "") + std::to_string(c[j]);
    out += ")";
  }
  return out.empty() ? "()" : out;
}

/// Two assignments whose total costs differ by at most this are ambiguous.
inline constexpr double matching_tie_tol = 1e-10;
inline constexpr std::size_t max_loop_samples = 4096;

namespace detail {

inline std::vector<std::vector<cdouble>> loop_spectra(const ParametricMatrix& m, const LoopSpec& loop,
                                                      std::vector<double>& psi) {
  psi.resize(loop.K);
  std::vector<std::vector<cdouble>> frames(loop.K);
  parallel_for(loop.K, [&](std::size_t j) {
    psi[j] = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(loop.K);
    frames[j] = eigenvalues(eval_matrix(m, loop.nu(psi[j])));
  });
  std::sort(frames[0].begin(), frames[0].end(), [](cdouble a, cdouble b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return frames;
}

/// Optimal frame-to-frame matching; throws when the optimum is not unique.
inline std::vector<std::size_t> match_frames(const std::vector<cdouble>& from, const std::vector<cdouble>& to) {
  const std::size_t n = from.size();
  std::vector<double> cost(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) cost[a * n + b] = std::abs(from[a] - to[b]);
  const Assignment best = min_cost_assignment(cost, n);
  const Assignment second = second_best_assignment(cost, n, best);
  if (second.cost - best.cost <= matching_tie_tol)
    throw numeric_error("eigenvalue matching is ambiguous along the loop; increase K");
  return best.to;
}

/// Strict local minima of a closed sequence.
inline unsigned cyclic_strict_minima(const std::vector<double>& d) {
  const std::size_t n = d.size();
  if (n < 3) return 0;
  unsigned count = 0;
  for (std::size_t j = 0; j < n; ++j)
    if (d[j] < d[(j + n - 1) % n] && d[j] < d[(j + 1) % n]) ++count;
  return count;
}

}  // namespace detail

/// Continues the spectrum of m along the loop by optimal matching between
/// consecutive samples. Runs whose largest step exceeds 10× the median step
/// are redone with K doubled, up to 4096 samples.
///
/// For touching loops, petal_count sums, over the cycles of the permutation,
/// the strict local minima of |λ(ψ) − λ_EP| along that cycle's closed path,
/// where λ_EP is the mean eigenvalue at ν = 0.
inline HolonomyResult holonomy_trace(const ParametricMatrix& m, const LoopSpec& spec) {
  spec.validate();
  LoopSpec loop = spec;
  for (;;) {
    HolonomyResult res;
    res.K = loop.K;
    auto frames = detail::loop_spectra(m, loop, res.psi);
    const std::size_t n = frames[0].size();
    const std::size_t K = loop.K;

    res.trajectories.assign(n, std::vector<cdouble>(K + 1));
    std::vector<std::size_t> where(n);  // trajectory -> index in the current frame
    for (std::size_t a = 0; a < n; ++a) {
      where[a] = a;
      res.trajectories[a][0] = frames[0][a];
    }
    std::vector<double> steps;
    steps.reserve(n * K);
    for (std::size_t j = 0; j < K; ++j) {
      const auto& next = frames[(j + 1) % K];
      const auto to = detail::match_frames(frames[j], next);
      for (std::size_t a = 0; a < n; ++a) {
        const cdouble prev = frames[j][where[a]];
        where[a] = to[where[a]];
        res.trajectories[a][j + 1] = next[where[a]];
        steps.push_back(std::abs(next[where[a]] - prev));
      }
    }
    res.psi.push_back(2.0 * std::numbers::pi);
    res.permutation = where;

    std::vector<double> sorted = steps;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2), sorted.end());
    res.median_step = sorted[sorted.size() / 2];
    res.max_step = *std::max_element(steps.begin(), steps.end());
    const bool continuous = res.max_step < 10.0 * res.median_step || res.max_step < 1e-12;
    if (!continuous) {
      if (loop.K * 2 > max_loop_samples)
        throw numeric_error("eigenvalue trajectories stay discontinuous at K = " + std::to_string(loop.K) +
                            "; the loop may pass too close to a branch point");
      loop.K *= 2;
      continue;
    }

    if (loop.mode == LoopSpec::Mode::touching) {
      const auto at_zero = eigenvalues(eval_matrix(m, 0.0));
      cdouble ep{0.0, 0.0};
      for (const auto& z : at_zero) ep += z;
      ep /= static_cast<double>(at_zero.size());
      unsigned petals = 0;
      for (const auto& cyc : cycles(res.permutation)) {
        std::vector<double> d;
        for (std::size_t a : cyc)
          for (std::size_t j = 0; j < K; ++j) d.push_back(std::abs(res.trajectories[a][j] - ep));
        petals += detail::cyclic_strict_minima(d);
      }
      res.petal_count = petals;
    }
    return res;
  }
}

inline void write_trajectories_csv(std::ostream& os, const HolonomyResult& r) {
  os << "psi,index,re,im\n";
  for (std::size_t a = 0; a < r.trajectories.size(); ++a)
    for (std::size_t j = 0; j < r.psi.size(); ++j)
      os << format_double(r.psi[j]) << ',' << a << ',' << format_double(r.trajectories[a][j].real()) << ','
         << format_double(r.trajectories[a][j].imag()) << '\n';
}

inline void write_fit_csv(std::ostream& os, const SplittingFit& f) {
  os << "nu,splitting\n";
  for (const auto& s : f.samples) os << format_double(s.nu) << ',' << format_double(s.splitting) << '\n';
}

}  // namespace tropep
