#include "xindex/common.hpp"

#include <limits>

namespace xindex {

std::string to_fraction_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

Rational parse_fraction(const std::string& text) {
  auto valid_int = [](const std::string& s) {
    std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
  };
  const auto slash = text.find('/');
  const std::string num = text.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) {
    throw ArgumentError("not a fraction: '" + text + "'");
  }
  BigInt d(den);
  if (d == 0) throw ArgumentError("zero denominator: '" + text + "'");
  return Rational(BigInt(num), d);
}

std::string to_decimal_string(const Rational& r, int digits) {
  BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  const bool negative = num < 0;
  if (negative) num = -num;
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  // round half up on the magnitude
  BigInt scaled = (num * scale * 2 + den) / (den * 2);
  const BigInt whole = scaled / scale;
  const BigInt frac = scaled % scale;
  std::string out = negative && scaled != 0 ? "-" : "";
  out += whole.str();
  if (digits > 0) {
    std::string f = frac.str();
    out += "." + std::string(static_cast<std::size_t>(digits) - f.size(), '0') + f;
  }
  return out;
}

std::uint64_t floor_to_u64(const Rational& r) {
  if (r <= 0) return 0;
  const BigInt q = boost::multiprecision::numerator(r) / boost::multiprecision::denominator(r);
  if (q > std::numeric_limits<std::uint64_t>::max()) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return q.convert_to<std::uint64_t>();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace xindex
