#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace treewass {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a mathematical precondition (bad tree, non-probability
/// measure, incomplete flag table, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Input text could not be decoded.
class ParseError : public Error {
 public:
  using Error::Error;
};

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  return Rational(Integer(num), Integer(den));
}

/// Parses "p/q" or "p" with an optional leading minus sign. No decimals,
/// no whitespace, q > 0.
inline Rational parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!digits(num) || !digits(den))
    throw ParseError("malformed rational '" + std::string(text) + "'");
  const Integer n{std::string(num)};
  const Integer d{std::string(den)};
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  return negative ? Rational(-r) : r;
}

/// Canonical "p/q" form, or "p" when the denominator is one.
inline std::string format_rational(const Rational& r) {
  const Integer num = boost::multiprecision::numerator(r);
  const Integer den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline Rational square(const Rational& r) { return r * r; }

}  // namespace treewass
