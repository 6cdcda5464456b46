#pragma once

#include <gmpxx.h>

#include <cctype>
#include <complex>
#include <cstdio>
#include <string>
#include <string_view>

#include "tropep/error.hpp"

namespace tropep {

using Rational = mpq_class;
using Integer = mpz_class;

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

inline Integer pow10(unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace detail

/// Parses "7", "-3/4", "0.125", "1.5e-3" into an exact rational. Decimal
/// literals are read as the exact decimal fraction they denote.
inline Rational parse_rational(std::string_view text) {
  std::string_view s = detail::trim(text);
  const std::string original(s);
  if (s.empty()) throw input_error("empty rational literal");

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = detail::trim(s.substr(0, slash));
    auto den = detail::trim(s.substr(slash + 1));
    if (!detail::all_digits(num) || !detail::all_digits(den))
      throw input_error("malformed rational literal '" + original + "'");
    Integer d(std::string(den), 10);
    if (d == 0) throw input_error("zero denominator in '" + original + "'");
    value = Rational(Integer(std::string(num), 10), d);
    value.canonicalize();
  } else {
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      auto exp_text = s.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      if (!detail::all_digits(exp_text) || exp_text.size() > 6)
        throw input_error("malformed exponent in '" + original + "'");
      exponent = std::stol(std::string(exp_text));
      if (exp_negative) exponent = -exponent;
      s = s.substr(0, e);
    }
    std::string digits;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
      auto whole = s.substr(0, dot);
      auto frac = s.substr(dot + 1);
      if ((!whole.empty() && !detail::all_digits(whole)) || (!frac.empty() && !detail::all_digits(frac)) ||
          (whole.empty() && frac.empty()))
        throw input_error("malformed decimal literal '" + original + "'");
      digits = std::string(whole) + std::string(frac);
      exponent -= static_cast<long>(frac.size());
    } else {
      if (!detail::all_digits(s)) throw input_error("malformed rational literal '" + original + "'");
      digits = std::string(s);
    }
    if (digits.empty()) digits = "0";
    Integer mantissa(digits, 10);
    if (exponent >= 0) {
      value = Rational(mantissa * detail::pow10(static_cast<unsigned long>(exponent)));
    } else {
      value = Rational(mantissa, detail::pow10(static_cast<unsigned long>(-exponent)));
      value.canonicalize();
    }
  }
  if (negative) value = -value;
  return value;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Rational with `digits` significant decimal digits closest to x. Used for
/// the irrational presets (cos π/4, tan π/6, ...).
inline Rational rationalize(double x, int digits = 12) {
  if (x == 0.0) return Rational(0);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, x);
  return parse_rational(buf);
}

}  // namespace tropep
