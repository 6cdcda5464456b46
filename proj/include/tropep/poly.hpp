#pragma once

// Exact arithmetic over the Gaussian rationals Q(i): scalars, univariate
// polynomials in the perturbation ν, and bivariate polynomials p(ν, λ).

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tropep/error.hpp"
#include "tropep/rational.hpp"

namespace tropep {

class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(Rational re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT(implicit)
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }
  GaussianRational(long re) : re_(re) {}  // NOLINT(implicit)
  GaussianRational(int re) : re_(re) {}   // NOLINT(implicit)

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }
  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  GaussianRational conj() const { return {re_, -im_}; }
  Rational norm() const { return Rational(re_ * re_ + im_ * im_); }

  GaussianRational operator-() const { return {-re_, -im_}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    if (o.is_zero()) throw input_error("division by zero Gaussian rational");
    Rational n = o.norm();
    *this *= o.conj();
    re_ /= n;
    im_ /= n;
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

/// "3", "-2i", "1/2i", "(1/2-3i)".
inline std::string to_string(const GaussianRational& z) {
  const bool has_re = sgn(z.real()) != 0;
  const bool has_im = sgn(z.imag()) != 0;
  auto imag_part = [](const Rational& q) {
    if (q == 1) return std::string("i");
    if (q == -1) return std::string("-i");
    return to_string(q) + "i";
  };
  if (!has_im) return to_string(z.real());
  if (!has_re) return imag_part(z.imag());
  std::string im = imag_part(z.imag());
  if (im.front() != '-') im = "+" + im;
  return "(" + to_string(z.real()) + im + ")";
}

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << to_string(z); }

// ---------------------------------------------------------------------------

namespace detail {

template <class Key>
void add_term(std::map<Key, GaussianRational>& terms, const Key& key, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

}  // namespace detail

/// Polynomial in ν with Gaussian-rational coefficients. Zero coefficients are
/// never stored, so the zero polynomial has no terms.
class UniPoly {
 public:
  using Terms = std::map<unsigned, GaussianRational>;

  UniPoly() = default;
  UniPoly(GaussianRational c) { detail::add_term(terms_, 0u, c); }  // NOLINT(implicit)
  UniPoly(long c) : UniPoly(GaussianRational(c)) {}                 // NOLINT(implicit)
  UniPoly(int c) : UniPoly(GaussianRational(c)) {}                  // NOLINT(implicit)

  static UniPoly monomial(const GaussianRational& c, unsigned exponent) {
    UniPoly p;
    detail::add_term(p.terms_, exponent, c);
    return p;
  }
  static UniPoly nu() { return monomial(1, 1); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }

  /// Highest exponent; nullopt for the zero polynomial.
  std::optional<unsigned> degree() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.rbegin()->first;
  }
  /// Lowest exponent; nullopt for the zero polynomial.
  std::optional<unsigned> lowest_exponent() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first;
  }

  GaussianRational coefficient(unsigned exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? GaussianRational{} : it->second;
  }

  std::complex<double> operator()(std::complex<double> nu) const {
    // Horner over the sparse support, stepping by exponent gaps.
    std::complex<double> acc{0.0, 0.0};
    unsigned prev = 0;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!first) acc *= ipow(nu, prev - it->first);
      acc += it->second.to_complex();
      prev = it->first;
      first = false;
    }
    if (!first) acc *= ipow(nu, prev);
    return acc;
  }

  UniPoly operator-() const {
    UniPoly r;
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
  }
  UniPoly& operator+=(const UniPoly& o) {
    for (const auto& [k, c] : o.terms_) detail::add_term(terms_, k, c);
    return *this;
  }
  UniPoly& operator-=(const UniPoly& o) {
    for (const auto& [k, c] : o.terms_) detail::add_term(terms_, k, -c);
    return *this;
  }
  UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    UniPoly r;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) detail::add_term(r.terms_, ka + kb, ca * cb);
    return r;
  }
  /// Division by a non-zero scalar (exact).
  friend UniPoly operator/(const UniPoly& a, const GaussianRational& s) {
    if (s.is_zero()) throw input_error("division of polynomial by zero");
    UniPoly r;
    for (const auto& [k, c] : a.terms_) r.terms_.emplace(k, c / s);
    return r;
  }
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.terms_ == b.terms_; }

 private:
  static std::complex<double> ipow(std::complex<double> z, unsigned e) {
    std::complex<double> r{1.0, 0.0};
    while (e) {
      if (e & 1u) r *= z;
      z *= z;
      e >>= 1u;
    }
    return r;
  }

  Terms terms_;
};

namespace detail {

// Appends "c·var^k" to `out` with a leading sign separator unless first.
inline void append_term(std::string& out, const GaussianRational& c, std::string_view var, unsigned k,
                        bool first) {
  std::string coeff;
  bool negative = false;
  if (sgn(c.imag()) == 0) {
    negative = sgn(c.real()) < 0;
    coeff = to_string(negative ? Rational(-c.real()) : c.real());
  } else if (sgn(c.real()) == 0) {
    negative = sgn(c.imag()) < 0;
    coeff = to_string(GaussianRational(Rational(0), negative ? Rational(-c.imag()) : c.imag()));
  } else {
    coeff = to_string(c);
  }
  std::string mono;
  if (k == 1) mono = std::string(var);
  if (k > 1) mono = std::string(var) + "^" + std::to_string(k);

  if (first) {
    if (negative) out += "-";
  } else {
    out += negative ? " - " : " + ";
  }
  if (mono.empty()) {
    out += coeff;
  } else {
    if (coeff != "1") out += coeff + "*";
    out += mono;
  }
}

}  // namespace detail

/// Ascending powers, e.g. "-2i*nu - nu^2".
inline std::string to_string(const UniPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : p.terms()) {
    detail::append_term(out, c, "nu", k, first);
    first = false;
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const UniPoly& p) { return os << to_string(p); }

namespace detail {

// Recursive-descent parser for univariate polynomial expressions:
//   sum     := ['+'|'-'] product { ('+'|'-') product }
//   product := power { ['*' | '/' | juxtaposition] power }
//   power   := atom [ '^' digits ]
//   atom    := number | 'i' | 'nu' | 'ν' | '(' sum ')'
class UniPolyParser {
 public:
  explicit UniPolyParser(std::string_view text) : text_(text) {}

  UniPoly parse() {
    UniPoly p = sum();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw input_error("cannot parse polynomial '" + std::string(text_) + "': " + what);
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(std::string_view tok) {
    skip_ws();
    return text_.substr(pos_, tok.size()) == tok;
  }
  bool accept(std::string_view tok) {
    if (!peek(tok)) return false;
    pos_ += tok.size();
    return true;
  }
  bool starts_atom() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '(' || c == 'i' || peek("nu") ||
           peek("\xCE\xBD");
  }

  UniPoly sum() {
    UniPoly acc;
    bool negate = false;
    if (accept("-"))
      negate = true;
    else
      accept("+");
    acc = product();
    if (negate) acc = -acc;
    while (true) {
      if (accept("+"))
        acc += product();
      else if (accept("-"))
        acc -= product();
      else
        break;
    }
    return acc;
  }

  UniPoly product() {
    UniPoly acc = power();
    while (true) {
      if (accept("*")) {
        acc = acc * power();
      } else if (accept("/")) {
        UniPoly d = power();
        if (!d.is_constant() || d.is_zero()) fail("division only by non-zero constants");
        acc = acc / d.coefficient(0);
      } else if (starts_atom()) {
        acc = acc * power();
      } else {
        break;
      }
    }
    return acc;
  }

  UniPoly power() {
    UniPoly base = atom();
    if (accept("^")) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("exponent must be a non-negative integer");
      unsigned e = static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start))));
      UniPoly r(1);
      for (unsigned k = 0; k < e; ++k) r = r * base;
      return r;
    }
    return base;
  }

  UniPoly atom() {
    skip_ws();
    if (accept("(")) {
      UniPoly inner = sum();
      if (!accept(")")) fail("missing ')'");
      return inner;
    }
    if (accept("nu") || accept("\xCE\xBD")) return UniPoly::nu();
    if (accept("i")) return UniPoly(GaussianRational::i());
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
      ++pos_;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E') && pos_ > start) {
      std::size_t save = pos_++;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      std::size_t digits = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (digits == pos_) pos_ = save;
    }
    if (start == pos_) fail("expected a number, 'i', 'nu' or '('");
    return UniPoly(GaussianRational(parse_rational(text_.substr(start, pos_ - start))));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline UniPoly parse_unipoly(std::string_view text) { return detail::UniPolyParser(text).parse(); }

// ---------------------------------------------------------------------------

/// Exponent pair of a monomial λ^lambda ν^nu.
struct Monomial {
  unsigned lambda = 0;
  unsigned nu = 0;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

struct RawTerm {
  long lambda_exp;
  long nu_exp;
  GaussianRational coeff;
};

/// Bivariate polynomial p(ν, λ) over Q(i), stored sparsely by exponent pair.
class BiPoly {
 public:
  using Terms = std::map<Monomial, GaussianRational>;

  BiPoly() = default;
  BiPoly(GaussianRational c) { detail::add_term(terms_, Monomial{}, c); }  // NOLINT(implicit)

  static BiPoly lambda() { return monomial(1, 1, 0); }
  static BiPoly nu() { return monomial(1, 0, 1); }
  static BiPoly monomial(const GaussianRational& c, unsigned lambda_exp, unsigned nu_exp) {
    BiPoly p;
    detail::add_term(p.terms_, Monomial{lambda_exp, nu_exp}, c);
    return p;
  }
  /// Σ_i a_i(ν) λ^i.
  static BiPoly from_lambda_coefficients(std::span<const UniPoly> coeffs) {
    BiPoly p;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      for (const auto& [k, c] : coeffs[i].terms())
        detail::add_term(p.terms_, Monomial{static_cast<unsigned>(i), k}, c);
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  GaussianRational coefficient(unsigned lambda_exp, unsigned nu_exp) const {
    auto it = terms_.find(Monomial{lambda_exp, nu_exp});
    return it == terms_.end() ? GaussianRational{} : it->second;
  }

  /// Largest λ-exponent present; nullopt for zero.
  std::optional<unsigned> lambda_degree() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.rbegin()->first.lambda;
  }
  std::optional<unsigned> nu_degree() const {
    if (terms_.empty()) return std::nullopt;
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.nu);
    return d;
  }

  BiPoly operator-() const {
    BiPoly r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }
  BiPoly& operator+=(const BiPoly& o) {
    for (const auto& [m, c] : o.terms_) detail::add_term(terms_, m, c);
    return *this;
  }
  BiPoly& operator-=(const BiPoly& o) {
    for (const auto& [m, c] : o.terms_) detail::add_term(terms_, m, -c);
    return *this;
  }

  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_)
        detail::add_term(r.terms_, Monomial{ma.lambda + mb.lambda, ma.nu + mb.nu}, ca * cb);
    return r;
  }
  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms_ == b.terms_; }

 private:
  friend BiPoly build_bipoly(std::span<const RawTerm> raw);
  Terms terms_;
};

/// Sums duplicate exponent pairs and drops zero coefficients.
inline BiPoly build_bipoly(std::span<const RawTerm> raw) {
  BiPoly p;
  for (const auto& t : raw) {
    if (t.lambda_exp < 0 || t.nu_exp < 0)
      throw input_error("negative exponent (" + std::to_string(t.lambda_exp) + ", " +
                        std::to_string(t.nu_exp) + ") in polynomial term");
    detail::add_term(p.terms_,
                     Monomial{static_cast<unsigned>(t.lambda_exp), static_cast<unsigned>(t.nu_exp)}, t.coeff);
  }
  return p;
}

inline BiPoly build_bipoly(std::initializer_list<RawTerm> raw) {
  return build_bipoly(std::span<const RawTerm>(raw.begin(), raw.size()));
}

inline BiPoly poly_add(const BiPoly& p, const BiPoly& q) { return p + q; }
inline BiPoly poly_mul(const BiPoly& p, const BiPoly& q) { return p * q; }

/// a_i(ν) in p = Σ_i a_i(ν) λ^i.
inline UniPoly lambda_coefficient(const BiPoly& p, unsigned i) {
  UniPoly a;
  auto it = p.terms().lower_bound(Monomial{i, 0});
  for (; it != p.terms().end() && it->first.lambda == i; ++it) a += UniPoly::monomial(it->second, it->first.nu);
  return a;
}

/// b_k(λ) in p = Σ_k b_k(λ) ν^k, returned as a polynomial in a single
/// variable (the UniPoly variable then stands for λ).
inline UniPoly nu_coefficient(const BiPoly& p, unsigned k) {
  UniPoly b;
  for (const auto& [m, c] : p.terms())
    if (m.nu == k) b += UniPoly::monomial(c, m.lambda);
  return b;
}

inline std::vector<UniPoly> lambda_coefficients(const BiPoly& p) {
  std::vector<UniPoly> out;
  if (p.is_zero()) return out;
  out.resize(*p.lambda_degree() + 1);
  for (const auto& [m, c] : p.terms()) out[m.lambda] += UniPoly::monomial(c, m.nu);
  return out;
}

/// Double-precision evaluation: Horner in ν for each a_i, then Horner in λ.
inline std::complex<double> poly_eval(const BiPoly& p, std::complex<double> nu, std::complex<double> lambda) {
  if (p.is_zero()) return {0.0, 0.0};
  auto coeffs = lambda_coefficients(p);
  std::complex<double> acc{0.0, 0.0};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * lambda + (*it)(nu);
  return acc;
}

/// Σ |a_ik| |ν|^k |λ|^i; the scale against which evaluation residuals are judged.
inline double poly_abs_scale(const BiPoly& p, std::complex<double> nu, std::complex<double> lambda) {
  const double an = std::abs(nu), al = std::abs(lambda);
  double s = 0.0;
  for (const auto& [m, c] : p.terms())
    s += std::abs(c.to_complex()) * std::pow(an, static_cast<double>(m.nu)) *
         std::pow(al, static_cast<double>(m.lambda));
  return s;
}

inline std::string to_string(const BiPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    std::string var;
    if (m.lambda > 0) var = m.lambda == 1 ? "lambda" : "lambda^" + std::to_string(m.lambda);
    if (m.nu > 0) {
      if (!var.empty()) var += "*";
      var += m.nu == 1 ? "nu" : "nu^" + std::to_string(m.nu);
    }
    // append_term wants a variable and exponent; hand it the whole monomial.
    detail::append_term(out, c, var, var.empty() ? 0u : 1u, first);
    first = false;
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const BiPoly& p) { return os << to_string(p); }

// ---------------------------------------------------------------------------
// Text serialization: one term per line, "i k re_num/re_den im_num/im_den",
// i the λ-exponent and k the ν-exponent. Blank lines and '#' comments are
// ignored on input.

inline void write_poly_text(std::ostream& os, const BiPoly& p) {
  auto frac = [](const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
  };
  for (const auto& [m, c] : p.terms())
    os << m.lambda << ' ' << m.nu << ' ' << frac(c.real()) << ' ' << frac(c.imag()) << '\n';
}

inline std::string to_poly_text(const BiPoly& p) {
  std::ostringstream os;
  write_poly_text(os, p);
  return os.str();
}

inline BiPoly read_poly_text(std::istream& is) {
  std::vector<RawTerm> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string fields[4];
    std::size_t n = 0;
    std::string extra;
    while (n < 4 && ls >> fields[n]) ++n;
    if (n == 0) continue;
    if (n != 4 || (ls >> extra))
      throw input_error("polynomial file line " + std::to_string(line_no) + ": expected 'i k re im'");
    long i = 0, k = 0;
    try {
      std::size_t used_i = 0, used_k = 0;
      i = std::stol(fields[0], &used_i);
      k = std::stol(fields[1], &used_k);
      if (used_i != fields[0].size() || used_k != fields[1].size()) throw std::invalid_argument("exp");
    } catch (const std::exception&) {
      throw input_error("polynomial file line " + std::to_string(line_no) + ": bad exponent");
    }
    raw.push_back({i, k, GaussianRational(parse_rational(fields[2]), parse_rational(fields[3]))});
  }
  return build_bipoly(raw);
}

inline BiPoly parse_poly_text(std::string_view text) {
  std::istringstream is{std::string(text)};
  return read_poly_text(is);
}

}  // namespace tropep
