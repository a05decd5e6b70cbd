#pragma once

// Exact rationals (boost::multiprecision) and the glue to move between them,
// doubles and the "a/b" / decimal strings used in instance files.

#include <boost/multiprecision/cpp_int.hpp>
#include <cctype>
#include <string>
#include <string_view>
#include <type_traits>

#include "lll/error.hpp"

namespace lll {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }

template <class Scalar>
Scalar scalar_from_double(double x) {
  if constexpr (std::is_same_v<Scalar, double>) {
    return x;
  } else {
    return Scalar(x);  // exact binary value of the double
  }
}

namespace detail {

inline BigInt parse_digits(std::string_view s, std::string_view whole) {
  if (s.empty()) throw InputError("malformed number '" + std::string(whole) + "'");
  BigInt v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw InputError("malformed number '" + std::string(whole) + "'");
    v = v * 10 + (c - '0');
  }
  return v;
}

}  // namespace detail

/// Parses "p/q", "-p/q", integers, plain decimals ("0.125") and scientific
/// notation ("1.5e-3") exactly.
inline Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational r;
  if (auto ex = s.find_first_of("eE"); ex != std::string_view::npos && s.find('/') == std::string_view::npos) {
    // Scientific notation: mantissa times a power of ten.
    std::string_view es = s.substr(ex + 1);
    bool eneg = false;
    if (!es.empty() && (es.front() == '-' || es.front() == '+')) {
      eneg = es.front() == '-';
      es.remove_prefix(1);
    }
    const BigInt e = detail::parse_digits(es, text);
    if (e > 4000) throw InputError("exponent too large in '" + std::string(text) + "'");
    r = parse_rational(s.substr(0, ex));
    BigInt scale = 1;
    for (int k = 0; k < e.convert_to<int>(); ++k) scale *= 10;
    r = eneg ? Rational(r / scale) : Rational(r * scale);
  } else if (auto slash = s.find('/'); slash != std::string_view::npos) {
    const BigInt num = detail::parse_digits(s.substr(0, slash), text);
    const BigInt den = detail::parse_digits(s.substr(slash + 1), text);
    if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    r = Rational(num, den);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if (ip.empty() && fp.empty()) throw InputError("malformed number '" + std::string(text) + "'");
    BigInt num = ip.empty() ? BigInt(0) : detail::parse_digits(ip, text);
    BigInt den = 1;
    for (char c : fp) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw InputError("malformed number '" + std::string(text) + "'");
      num = num * 10 + (c - '0');
      den *= 10;
    }
    r = Rational(num, den);
  } else {
    r = Rational(detail::parse_digits(s, text));
  }
  return neg ? Rational(-r) : r;
}

inline std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace lll
