#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace enflo {

// Exact arithmetic used by every enumeration-mode computation. Sums of
// squared distances stay rational end to end; square roots are taken only
// when a report needs a displayable number.
using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& r) { return r.template convert_to<double>(); }
inline double to_double(const BigInt& n) { return n.template convert_to<double>(); }

// "3", "-5/7" — denominator omitted when 1.
inline std::string rat_string(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline Rat rat_pow(Rat base, unsigned long exp) {
  Rat out = 1;
  while (exp != 0) {
    if (exp & 1u) out *= base;
    base *= base;
    exp >>= 1u;
  }
  return out;
}

inline BigInt bigint_pow(BigInt base, unsigned long exp) {
  BigInt out = 1;
  while (exp != 0) {
    if (exp & 1u) out *= base;
    base *= base;
    exp >>= 1u;
  }
  return out;
}

inline BigInt binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt out = 1;
  for (long long i = 1; i <= k; ++i) {
    out *= n - k + i;
    out /= i;
  }
  return out;
}

inline BigInt factorial(long long n) {
  BigInt out = 1;
  for (long long i = 2; i <= n; ++i) out *= i;
  return out;
}

// Accepts integers ("-3"), fractions ("22/7") and finite decimals ("0.125").
inline Rat parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + text);
    return Rat(num, den);
  }
  auto dot = text.find('.');
  if (dot == std::string::npos) return Rat(BigInt(text));
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  if (digits.empty() || digits == "-" || digits == "+")
    throw std::invalid_argument("bad rational literal: " + text);
  BigInt num(digits);
  BigInt den = bigint_pow(10, static_cast<unsigned long>(text.size() - dot - 1));
  return Rat(num, den);
}

}  // namespace enflo
