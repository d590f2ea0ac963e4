#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace polyrel {

// Exact rational scalar. Always canonical: gcd(|num|, den) = 1, den > 0,
// zero is 0/1. Backed by arbitrary-precision integers.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  int line = 0;
  int column = 0;
  ParseError(const std::string& msg, int line_, int column_)
      : Error(msg + " at " + std::to_string(line_) + ":" + std::to_string(column_)),
        line(line_),
        column(column_) {}
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

struct DimensionError : Error {
  using Error::Error;
};

// Serialized form is "p/q" with the sign on p and q > 0; a bare "p" means p/1.
inline std::string to_string(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) {
    s += "/";
    s += denominator(r).str();
  }
  return s;
}

inline std::optional<Rational> try_parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::size_t i = 0;
  if (text[i] == '-') ++i;
  std::size_t num_begin = i;
  while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
  if (i == num_begin) return std::nullopt;
  BigInt num(std::string(text.substr(0, i)));
  BigInt den = 1;
  if (i < text.size()) {
    if (text[i] != '/') return std::nullopt;
    ++i;
    std::size_t den_begin = i;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
    if (i == den_begin || i != text.size()) return std::nullopt;
    den = BigInt(std::string(text.substr(den_begin)));
    if (den == 0) return std::nullopt;
  }
  return Rational(num, den);
}

inline Rational parse_rational(std::string_view text) {
  auto r = try_parse_rational(text);
  if (!r) throw ParseError("invalid rational '" + std::string(text) + "'");
  return *r;
}

inline int sign(const Rational& r) { return r.sign(); }

}  // namespace polyrel
