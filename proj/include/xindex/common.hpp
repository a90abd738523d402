#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace xindex {

inline constexpr const char* kVersion = "1.0.0";

/// Exact rational used for ACNPP, paper influence and evaluation metrics.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Renders `r` as `num/den`, always with an explicit denominator.
std::string to_fraction_string(const Rational& r);

/// Parses the `num/den` form written by to_fraction_string (a bare integer is also accepted).
Rational parse_fraction(const std::string& text);

/// Decimal rendering with exactly `digits` fractional digits, rounded half up.
/// Computed in integer arithmetic so output does not depend on the platform's float formatting.
std::string to_decimal_string(const Rational& r, int digits);

/// floor(r) for non-negative r, saturated to uint64.
std::uint64_t floor_to_u64(const Rational& r);

double to_double(const Rational& r);

// Error taxonomy. The CLI maps these onto exit codes.

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotFoundError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NameError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace xindex
