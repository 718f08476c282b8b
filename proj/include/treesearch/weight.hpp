#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace treesearch {

/// Node weights and costs. Reduction instances reach |T|^{3(m+n)}, so
/// machine integers are not enough.
using Weight = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using NodeId = int;
inline constexpr NodeId kNoNode = -1;

inline std::string to_string(const Weight& w) { return w.str(); }

/// Parses a nonnegative decimal integer. Throws std::invalid_argument.
Weight parse_weight(const std::string& text);

/// Parses "p/q", an integer, or a decimal such as "0.25" exactly.
/// Throws std::invalid_argument on malformed input.
Rational parse_rational(const std::string& text);

/// Number of bits needed to represent w (0 for w == 0).
unsigned bit_length(const Weight& w);

/// True when every value up to `bound` fits comfortably in int64_t.
inline bool fits_int64(const Weight& bound) {
  return bound < (Weight(1) << 62);
}

}  // namespace treesearch
