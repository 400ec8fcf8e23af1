#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace gw {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(BigInt const &x) { return x.str(); }

inline std::string to_string(Rational const &q)
{
  auto num = boost::multiprecision::numerator(q);
  auto den = boost::multiprecision::denominator(q);
  if (den == 1)
    return num.str();
  return num.str() + "/" + den.str();
}

inline BigInt ipow(BigInt base, std::uint64_t exp)
{
  BigInt result = 1;
  while (exp != 0) {
    if (exp & 1u)
      result *= base;
    exp >>= 1u;
    if (exp != 0)
      base *= base;
  }
  return result;
}

inline bool is_prime(std::uint64_t n)
{
  if (n < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0)
      return false;
  }
  return true;
}

/// Prime factorization by trial division. Intended for group orders, whose
/// prime divisors never exceed the permutation degree, and for the small
/// rationals of the power-class code.
inline std::vector<std::pair<BigInt, unsigned>> factorize(BigInt n)
{
  std::vector<std::pair<BigInt, unsigned>> out;
  if (n < 0)
    n = -n;
  BigInt d = 2;
  while (d * d <= n) {
    if (n % d == 0) {
      unsigned e = 0;
      while (n % d == 0) {
        n /= d;
        ++e;
      }
      out.emplace_back(d, e);
    }
    d += (d == 2) ? 1 : 2;
  }
  if (n > 1)
    out.emplace_back(n, 1u);
  return out;
}

/// floor(log2(x)) for x > 0.
inline std::size_t floor_log2(BigInt const &x)
{
  return boost::multiprecision::msb(x);
}

/// Exact test of x <= 2^e for x >= 0 and arbitrarily large e.
inline bool leq_power_of_two(BigInt const &x, BigInt const &e)
{
  if (x <= 0)
    return true;
  BigInt const top = floor_log2(x);
  if (top < e)
    return true;
  if (top > e)
    return false;
  return x == ipow(2, static_cast<std::uint64_t>(top));
}

/// Exact integer logarithm: returns r with base^r == x, or -1 if x is not a power of base.
inline long exact_log(BigInt x, BigInt const &base)
{
  if (x < 1)
    return -1;
  long r = 0;
  while (x % base == 0) {
    x /= base;
    ++r;
  }
  return x == 1 ? r : -1;
}

inline BigInt gcd(BigInt const &a, BigInt const &b)
{
  return boost::multiprecision::gcd(a, b);
}

inline BigInt lcm(BigInt const &a, BigInt const &b)
{
  return boost::multiprecision::lcm(a, b);
}

} // namespace gw
