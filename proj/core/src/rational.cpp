#include "powergraph/rational.hpp"

#include <limits>

#include "powergraph/errors.hpp"

namespace powergraph {

Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view part) -> std::int64_t {
    if (part.empty()) fail(ErrorKind::Parse, "malformed rational '" + std::string(text) + "'");
    std::size_t i = 0;
    bool negative = false;
    if (part[0] == '-' || part[0] == '+') {
      negative = part[0] == '-';
      i = 1;
    }
    if (i == part.size()) fail(ErrorKind::Parse, "malformed rational '" + std::string(text) + "'");
    std::int64_t value = 0;
    for (; i < part.size(); ++i) {
      char c = part[i];
      if (c < '0' || c > '9') {
        fail(ErrorKind::Parse, "malformed rational '" + std::string(text) + "'");
      }
      if (value > (std::numeric_limits<std::int64_t>::max() - (c - '0')) / 10) {
        fail(ErrorKind::Parse, "rational component overflows: '" + std::string(text) + "'");
      }
      value = value * 10 + (c - '0');
    }
    return negative ? -value : value;
  };
  auto slash = text.find('/');
  std::int64_t num = parse_int(text.substr(0, slash));
  std::int64_t den = slash == std::string_view::npos ? 1 : parse_int(text.substr(slash + 1));
  if (den == 0) fail(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string format_rational(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

double to_double(const Rational& q) {
  return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a > 0) == (b > 0))) ++q;
  return q;
}

}  // namespace powergraph
