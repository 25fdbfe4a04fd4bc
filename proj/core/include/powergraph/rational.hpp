#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace powergraph {

// Note: test equality against a Rational, not a bare int; the mixed-type
// operator== of boost::rational recurses forever under C++20 rewriting.
using Rational = boost::rational<std::int64_t>;

// Accepts "a", "a/b"; throws Error(Parse) on malformed text or zero denominator.
Rational parse_rational(std::string_view text);

// "a" when the denominator is 1, "a/b" otherwise.
std::string format_rational(const Rational& q);

double to_double(const Rational& q);

std::int64_t ceil_div(std::int64_t a, std::int64_t b);

}  // namespace powergraph
