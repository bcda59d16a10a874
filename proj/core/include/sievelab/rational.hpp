#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

namespace sievelab {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(const Integer& n) { return n.convert_to<double>(); }

/// Parses "p/q" or "p". Throws DomainError on malformed text or q = 0.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

}  // namespace sievelab
