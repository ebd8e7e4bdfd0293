#include "critspec/complex/numbers.hpp"

#include <cctype>
#include <stdexcept>

namespace critspec {

namespace {

bool is_integer_literal(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  if (!is_integer_literal(num, true)) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  std::string num_str(num[0] == '+' ? num.substr(1) : num);
  if (slash == std::string_view::npos) {
    return Rational(Integer(num_str));
  }
  const std::string_view den = text.substr(slash + 1);
  if (!is_integer_literal(den, false)) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  Integer d(std::string{den});
  if (d == 0) {
    throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  }
  Rational r(Integer(num_str), d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  return v.get_str();
}

std::string to_string(const Integer& value) { return value.get_str(); }

}  // namespace critspec
