#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace purefield {

using Integer = boost::multiprecision::cpp_int;

/// Exponents of primes in factorizations and valuations.
using Exponent = std::uint64_t;

inline std::string to_string(const Integer& x) { return x.str(); }

/// Parses an optionally signed decimal string; rejects anything else.
inline bool parse_integer(const std::string& text, Integer& out) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  if (i == text.size()) return false;
  for (std::size_t j = i; j < text.size(); ++j)
    if (text[j] < '0' || text[j] > '9') return false;
  out = Integer(text[0] == '+' ? text.substr(1) : text);
  return true;
}

inline Integer ipow(Integer base, std::uint64_t e) {
  Integer result = 1;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

/// Least nonnegative residue of x modulo m > 0.
inline Integer mod_floor(const Integer& x, const Integer& m) {
  Integer r = x % m;
  if (r < 0) r += m;
  return r;
}

}  // namespace purefield
