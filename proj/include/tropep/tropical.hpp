#pragma once

// Min-plus arithmetic, ν-adic valuations, tropicalization of p(ν, λ) as a
// polynomial in λ, tropical roots and the EP-order classification.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "tropep/error.hpp"
#include "tropep/poly.hpp"

namespace tropep {

/// Element of the tropical semiring (T ∪ {∞}, ⊕ = min, ⊙ = +). A
/// default-constructed value is ∞. `+` is ⊕ and `*` is ⊙, so generic code
/// written against a semiring works unchanged.
template <class T>
class MinPlus {
 public:
  MinPlus() = default;
  MinPlus(T v) {  // NOLINT(implicit)
    if constexpr (std::is_floating_point_v<T>) {
      if (v == std::numeric_limits<T>::infinity()) return;
    }
    v_ = std::move(v);
  }

  static MinPlus infinity() { return {}; }
  static MinPlus additive_identity() { return {}; }
  static MinPlus multiplicative_identity() { return MinPlus(T(0)); }

  bool is_infinite() const { return !v_.has_value(); }
  bool is_finite() const { return v_.has_value(); }
  const T& value() const {
    if (!v_) throw input_error("value() of tropical infinity");
    return *v_;
  }

  friend MinPlus operator+(const MinPlus& a, const MinPlus& b) {
    if (a.is_infinite()) return b;
    if (b.is_infinite()) return a;
    return *b.v_ < *a.v_ ? b : a;
  }
  friend MinPlus operator*(const MinPlus& a, const MinPlus& b) {
    if (a.is_infinite() || b.is_infinite()) return {};
    return MinPlus(T(*a.v_ + *b.v_));
  }

  friend bool operator==(const MinPlus& a, const MinPlus& b) { return a.v_ == b.v_; }
  // ∞ compares greater than every finite value.
  friend std::strong_ordering operator<=>(const MinPlus& a, const MinPlus& b) {
    if (a.is_infinite() || b.is_infinite()) return a.is_infinite() <=> b.is_infinite();
    if (*a.v_ < *b.v_) return std::strong_ordering::less;
    if (*b.v_ < *a.v_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  std::optional<T> v_;
};

/// (x ⊕ y, x ⊙ y).
template <class T>
std::pair<MinPlus<T>, MinPlus<T>> trop_semiring(const MinPlus<T>& x, const MinPlus<T>& y) {
  return {x + y, x * y};
}

/// Integer or +∞; the value group of the ν-adic valuation on Q(i)[ν].
using ExtendedInt = MinPlus<long long>;

inline std::string to_string(const ExtendedInt& v) {
  return v.is_infinite() ? std::string("inf") : std::to_string(v.value());
}

/// Reduced fraction num/den with den > 0.
class Fraction {
 public:
  constexpr Fraction() = default;
  constexpr Fraction(long long num, long long den = 1) : num_(num), den_(den) {  // NOLINT(implicit)
    if (den_ == 0) throw input_error("fraction with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  constexpr long long num() const { return num_; }
  constexpr long long den() const { return den_; }
  constexpr bool is_zero() const { return num_ == 0; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend constexpr Fraction operator+(const Fraction& a, const Fraction& b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend constexpr Fraction operator-(const Fraction& a, const Fraction& b) {
    return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
  }
  friend constexpr Fraction operator*(const Fraction& a, const Fraction& b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
  }
  friend constexpr bool operator==(const Fraction&, const Fraction&) = default;
  friend constexpr std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
    return a.num_ * b.den_ <=> b.num_ * a.den_;
  }

 private:
  long long num_ = 0;
  long long den_ = 1;
};

inline std::string to_string(const Fraction& f) {
  return f.den() == 1 ? std::to_string(f.num()) : std::to_string(f.num()) + "/" + std::to_string(f.den());
}
inline std::ostream& operator<<(std::ostream& os, const Fraction& f) { return os << to_string(f); }

/// Least ν-exponent of u; ∞ for the zero polynomial.
inline ExtendedInt valuation(const UniPoly& u) {
  if (u.is_zero()) return ExtendedInt::infinity();
  return ExtendedInt(static_cast<long long>(*u.lowest_exponent()));
}

struct TropicalTerm {
  unsigned lambda_exp;
  ExtendedInt intercept;
  friend bool operator==(const TropicalTerm&, const TropicalTerm&) = default;
};

/// trop(p)(ω) = min_i (val(a_i) + i·ω), kept as its (i, val(a_i)) terms.
class TropicalPolynomial {
 public:
  explicit TropicalPolynomial(std::vector<TropicalTerm> terms) : terms_(std::move(terms)) {
    std::sort(terms_.begin(), terms_.end(),
              [](const TropicalTerm& a, const TropicalTerm& b) { return a.lambda_exp < b.lambda_exp; });
    for (std::size_t k = 1; k < terms_.size(); ++k)
      if (terms_[k].lambda_exp == terms_[k - 1].lambda_exp)
        throw input_error("tropical polynomial has repeated exponent " + std::to_string(terms_[k].lambda_exp));
    if (std::none_of(terms_.begin(), terms_.end(), [](const TropicalTerm& t) { return t.intercept.is_finite(); }))
      throw input_error("tropical polynomial needs at least one finite term");
  }

  const std::vector<TropicalTerm>& terms() const { return terms_; }

  friend bool operator==(const TropicalPolynomial&, const TropicalPolynomial&) = default;

 private:
  std::vector<TropicalTerm> terms_;
};

/// Regards p as a polynomial in λ over Q(i)[ν] and replaces every non-zero
/// coefficient a_i by val(a_i).
inline TropicalPolynomial tropicalize(const BiPoly& p) {
  if (p.is_zero()) throw input_error("tropicalization of the zero polynomial is undefined");
  std::vector<TropicalTerm> terms;
  const auto coeffs = lambda_coefficients(p);
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (!coeffs[i].is_zero()) terms.push_back({static_cast<unsigned>(i), valuation(coeffs[i])});
  return TropicalPolynomial(std::move(terms));
}

inline Fraction trop_eval(const TropicalPolynomial& t, const Fraction& omega) {
  std::optional<Fraction> best;
  for (const auto& term : t.terms()) {
    if (term.intercept.is_infinite()) continue;
    Fraction v = Fraction(term.intercept.value()) + Fraction(term.lambda_exp) * omega;
    if (!best || v < *best) best = v;
  }
  return *best;  // the constructor guarantees a finite term
}

/// "min(1, ω+1, 2ω+1, 4ω)" with terms in ascending λ-exponent.
inline std::string to_string(const TropicalPolynomial& t) {
  std::string out = "min(";
  bool first = true;
  for (const auto& term : t.terms()) {
    if (term.intercept.is_infinite()) continue;
    if (!first) out += ", ";
    first = false;
    const long long c = term.intercept.value();
    if (term.lambda_exp == 0) {
      out += std::to_string(c);
      continue;
    }
    if (term.lambda_exp != 1) out += std::to_string(term.lambda_exp);
    out += "\xCF\x89";  // ω
    if (c > 0) out += "+" + std::to_string(c);
    if (c < 0) out += std::to_string(c);
  }
  return out + ")";
}

struct TropicalRoot {
  Fraction value;
  unsigned multiplicity;
  friend bool operator==(const TropicalRoot&, const TropicalRoot&) = default;
};

/// Bend locus of trop(p): the negated slopes of the lower convex hull of
/// {(i, val a_i)}. Each root's multiplicity is the horizontal width of its
/// hull edge. Sorted ascending; empty when only one finite term exists.
inline std::vector<TropicalRoot> tropical_roots(const TropicalPolynomial& t) {
  struct Pt {
    long long i, c;
  };
  std::vector<Pt> pts;
  for (const auto& term : t.terms())
    if (term.intercept.is_finite()) pts.push_back({static_cast<long long>(term.lambda_exp), term.intercept.value()});

  auto cross = [](const Pt& o, const Pt& a, const Pt& b) {
    return (a.i - o.i) * (b.c - o.c) - (a.c - o.c) * (b.i - o.i);
  };
  std::vector<Pt> hull;
  for (const auto& p : pts) {  // already sorted by i
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0) hull.pop_back();
    hull.push_back(p);
  }

  std::vector<TropicalRoot> roots;
  for (std::size_t k = 1; k < hull.size(); ++k) {
    const auto& a = hull[k - 1];
    const auto& b = hull[k];
    roots.push_back({Fraction(a.c - b.c, b.i - a.i), static_cast<unsigned>(b.i - a.i)});
  }
  std::sort(roots.begin(), roots.end(), [](const auto& x, const auto& y) { return x.value < y.value; });
  return roots;
}

/// Lowest λ-exponent among finite terms (the multiplicity of λ = 0 as a root).
inline unsigned lowest_lambda_exponent(const TropicalPolynomial& t) {
  for (const auto& term : t.terms())
    if (term.intercept.is_finite()) return term.lambda_exp;
  return 0;
}

struct EPClassification {
  enum class Kind { order, degenerate };
  Kind kind = Kind::degenerate;
  unsigned order = 0;  // meaningful only for Kind::order
  std::vector<TropicalRoot> roots;

  bool is_degenerate() const { return kind == Kind::degenerate; }
  /// Order ≥ 2; order 1 is analytic splitting.
  bool is_exceptional() const { return kind == Kind::order && order >= 2; }
};

/// Order = max denominator over the non-zero tropical roots; degenerate when
/// every tropical root is zero (or there are none).
inline EPClassification ep_order(std::span<const TropicalRoot> roots) {
  EPClassification out;
  out.roots.assign(roots.begin(), roots.end());
  for (const auto& r : roots) {
    if (r.value.is_zero()) continue;
    out.kind = EPClassification::Kind::order;
    out.order = std::max(out.order, static_cast<unsigned>(r.value.den()));
  }
  return out;
}

inline EPClassification ep_order(const TropicalPolynomial& t) {
  const auto roots = tropical_roots(t);
  return ep_order(std::span<const TropicalRoot>(roots));
}

inline std::string describe(const EPClassification& c) {
  if (c.is_degenerate()) return "degenerate point (no non-zero tropical root)";
  if (c.order == 1) return "analytic splitting (order 1; not an EP)";
  return "EP order " + std::to_string(c.order);
}

}  // namespace tropep
