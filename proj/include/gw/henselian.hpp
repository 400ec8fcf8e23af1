#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gw/error.hpp"
#include "gw/laurent.hpp"
#include "gw/numeric.hpp"

namespace gw {

inline constexpr std::size_t kDefaultSeriesPrecision = 32;

/// Working precision: GW_PRECISION if set, otherwise 32 terms.
inline std::size_t default_series_precision()
{
  char const *env = std::getenv("GW_PRECISION");
  if (env == nullptr || *env == '\0')
    return kDefaultSeriesPrecision;
  std::string_view const text(env);
  std::size_t value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || value == 0)
    throw DomainError("GW_PRECISION must be a positive integer, got '" + std::string(text) + "'");
  return value;
}

namespace detail {

struct RationalFactors
{
  int sign = 1;
  std::vector<std::pair<BigInt, long>> exponents;  // primes of numerator (+) and denominator (-)
};

inline RationalFactors factor_rational(Rational const &q)
{
  if (q == 0)
    throw DomainError("zero has no power class (only non-zero rationals are considered)");
  RationalFactors f;
  f.sign = q < 0 ? -1 : 1;
  for (auto const &[p, e] : factorize(boost::multiprecision::numerator(q)))
    f.exponents.emplace_back(p, static_cast<long>(e));
  for (auto const &[p, e] : factorize(boost::multiprecision::denominator(q)))
    f.exponents.emplace_back(p, -static_cast<long>(e));
  return f;
}

inline std::string ordinal(std::uint64_t n)
{
  std::uint64_t const tens = n % 100;
  char const *suffix = (tens >= 11 && tens <= 13) ? "th"
                       : n % 10 == 1              ? "st"
                       : n % 10 == 2              ? "nd"
                       : n % 10 == 3              ? "rd"
                                                  : "th";
  return std::to_string(n) + suffix;
}

inline void require_positive(std::uint64_t n)
{
  if (n == 0)
    throw DomainError("n must be positive");
}

} // namespace detail

/// Normal form of the class of q in Q^x/(Q^x)^n: every prime exponent reduced
/// into [0, n), sign kept only when n is even (for odd n, -1 is an n-th
/// power). The result is always an integer; two rationals are equivalent iff
/// their normal forms agree.
inline BigInt canonical_power_class(Rational const &q, std::uint64_t n)
{
  detail::require_positive(n);
  auto const f = detail::factor_rational(q);
  BigInt out = 1;
  auto const nn = static_cast<long>(n);
  for (auto const &[p, e] : f.exponents)
    out *= ipow(p, static_cast<std::uint64_t>(((e % nn) + nn) % nn));
  if (n % 2 == 0 && f.sign < 0)
    out = -out;
  return out;
}

/// q in (Q^x)^n, decided by factorization.
inline bool is_nth_power_rational(Rational const &q, std::uint64_t n)
{
  return canonical_power_class(q, n) == 1;
}

/// The n-th root of an n-th power q: positive when n is even, of the sign of
/// q when n is odd.
inline Rational rational_nth_root(Rational const &q, std::uint64_t n)
{
  detail::require_positive(n);
  auto const f = detail::factor_rational(q);
  if (n % 2 == 0 && f.sign < 0)
    throw DomainError(to_string(q) + " is negative, so it has no even root");
  BigInt num = 1, den = 1;
  auto const nn = static_cast<long>(n);
  for (auto const &[p, e] : f.exponents) {
    if (e % nn != 0)
      throw DomainError(to_string(q) + " is not a " + detail::ordinal(n) + " power");
    if (e > 0)
      num *= ipow(p, static_cast<std::uint64_t>(e / nn));
    else
      den *= ipow(p, static_cast<std::uint64_t>(-e / nn));
  }
  Rational root(num, den);
  return f.sign < 0 ? Rational(-root) : root;
}

inline std::int64_t valuation(LaurentSeries const &x) { return x.valuation(); }

inline Rational unit_residue(LaurentSeries const &x) { return x.unit_residue(); }

/// x in (F^x)^n for F = Q((t)): v(x) divisible by n and the residue an n-th power in Q.
inline bool is_nth_power_series(LaurentSeries const &x, std::uint64_t n)
{
  detail::require_positive(n);
  if (x.is_zero())
    throw DomainError("zero series has no power class");
  auto const nn = static_cast<std::int64_t>(n);
  return x.valuation() % nn == 0 && is_nth_power_rational(x.unit_residue(), n);
}

/// Root y with v(y) = 0 and y^n = u to `prec` terms, by Newton iteration
/// y <- y - (y^n - u) / (n y^(n-1)) from the rational root of the residue,
/// doubling the precision each step.
inline LaurentSeries hensel_nth_root(LaurentSeries const &u, std::uint64_t n, std::size_t prec)
{
  detail::require_positive(n);
  if (prec == 0)
    throw DomainError("precision must be positive");
  if (u.is_zero())
    throw DomainError("hensel lift: input is the zero series");
  if (u.valuation() != 0)
    throw DomainError("hensel lift: input is not a unit (valuation " +
                      std::to_string(u.valuation()) + ")");
  if (!is_nth_power_rational(u.unit_residue(), n))
    throw DomainError("hensel lift: residue " + to_string(u.unit_residue()) + " is not a " +
                      detail::ordinal(n) + " power in Q");
  if (u.precision() < prec)
    throw DomainError("hensel lift: input known to " + std::to_string(u.precision()) +
                      " terms, " + std::to_string(prec) + " requested");
  Rational const r0 = rational_nth_root(u.unit_residue(), n);
  if (n == 1)
    return u.truncated(prec);
  Rational const n_q(static_cast<long long>(n));
  std::vector<Rational> start(1, r0);
  std::size_t known = 1;
  LaurentSeries y = LaurentSeries::from_coefficients(0, start);
  while (known < prec) {
    std::size_t const target = std::min(prec, 2 * known);
    // The current approximation is a polynomial, exact to any precision.
    std::vector<Rational> padded(target, Rational(0));
    for (std::size_t k = 0; k < y.precision(); ++k)
      padded[k] = y.coefficients()[k];
    LaurentSeries const yt = LaurentSeries::from_coefficients(0, std::move(padded));
    LaurentSeries const ut = u.truncated(target);
    LaurentSeries const y_pow = yt.pow(n - 1);
    LaurentSeries const residual = y_pow * yt - ut;
    if (!residual.is_zero())
      y = yt - residual / (n_q * y_pow);
    else
      y = yt;
    known = target;
  }
  return y.truncated(prec);
}

/// Certificate that x * t^i * b is an n-th power: x * t^i * b = t^(n*e) * unit
/// and root^n agrees with unit on `precision` terms, so the n-th root is
/// t^e * root. Here t^e is the normalizing element u with v(u^n) = v(x t^i).
struct PowerCertificate
{
  std::int64_t normalizer_exponent = 0;
  LaurentSeries unit = LaurentSeries::zero(0);
  LaurentSeries root = LaurentSeries::zero(0);
  std::size_t precision = 0;
  bool verified = false;
};

/// The representative t^i * b of the class of x^-1; x * t^i * b is an n-th power.
struct PowerClassRep
{
  std::int64_t i = 0;
  Rational b = 1;
  PowerCertificate certificate;
};

/// Root certificate for y = x * t^i * b, or nullopt if y is not an n-th power.
inline std::optional<PowerCertificate> certify_nth_power(LaurentSeries const &y, std::uint64_t n)
{
  if (!is_nth_power_series(y, n))
    return std::nullopt;
  auto const nn = static_cast<std::int64_t>(n);
  PowerCertificate cert;
  cert.normalizer_exponent = y.valuation() / nn;
  cert.unit = y.shifted(-y.valuation());
  cert.precision = cert.unit.precision();
  cert.root = hensel_nth_root(cert.unit, n, cert.precision);
  cert.verified = cert.root.pow(n).agrees_with(cert.unit) &&
                  cert.root.precision() == cert.precision;
  return cert;
}

inline PowerClassRep class_representative(LaurentSeries const &x, std::uint64_t n,
                                          std::vector<Rational> const &reps)
{
  detail::require_positive(n);
  if (x.is_zero())
    throw DomainError("zero series has no power class");
  auto const nn = static_cast<std::int64_t>(n);
  std::int64_t const i = ((-x.valuation()) % nn + nn) % nn;
  Rational const c = x.unit_residue();
  std::optional<Rational> match;
  for (auto const &b : reps) {
    if (is_nth_power_rational(c * b, n)) {
      if (match)
        throw DomainError("representatives " + to_string(*match) + " and " + to_string(b) +
                          " are equivalent modulo " + detail::ordinal(n) + " powers");
      match = b;
    }
  }
  if (!match)
    throw DomainError("no representative for the residue class " +
                      to_string(canonical_power_class(1 / c, n)) + " (mod " +
                      detail::ordinal(n) + " powers); add it to the set");
  PowerClassRep rep;
  rep.i = i;
  rep.b = *match;
  rep.certificate = *certify_nth_power((*match) * x.shifted(i), n);
  return rep;
}

struct SampleReduction
{
  LaurentSeries sample = LaurentSeries::zero(0);
  std::size_t matching_candidates = 0;
  std::optional<PowerClassRep> rep;
  std::string error;
  bool pass = false;
};

struct PowerClassReport
{
  std::uint64_t n = 1;
  std::size_t precision = 0;
  std::size_t classes = 0;
  std::size_t pairs_checked = 0;
  std::size_t equivalent_pairs = 0;
  std::vector<SampleReduction> samples;
  bool distinct = false;
  bool reductions_unique = false;
  bool overall = false;
};

/// Checks that the n * |reps| elements t^i * b are pairwise inequivalent and
/// that every sample is sent to exactly one of them, with a Hensel certificate.
inline PowerClassReport verify_power_class_decomposition(std::uint64_t n,
                                                         std::vector<Rational> const &reps,
                                                         std::vector<LaurentSeries> const &samples)
{
  detail::require_positive(n);
  for (std::size_t a = 0; a < reps.size(); ++a) {
    if (reps[a] == 0)
      throw DomainError("representative set contains 0");
    for (std::size_t b = a + 1; b < reps.size(); ++b) {
      if (is_nth_power_rational(reps[a] / reps[b], n))
        throw DomainError("representatives " + to_string(reps[a]) + " and " + to_string(reps[b]) +
                          " are equivalent modulo " + detail::ordinal(n) + " powers");
    }
  }
  auto const nn = static_cast<std::int64_t>(n);
  PowerClassReport report;
  report.n = n;
  report.classes = static_cast<std::size_t>(n) * reps.size();
  std::vector<std::pair<std::int64_t, Rational>> candidates;
  for (std::int64_t i = 0; i < nn; ++i) {
    for (auto const &b : reps)
      candidates.emplace_back(i, b);
  }
  for (std::size_t a = 0; a < candidates.size(); ++a) {
    for (std::size_t b = a + 1; b < candidates.size(); ++b) {
      auto const ratio = LaurentSeries::monomial(candidates[a].second / candidates[b].second,
                                                 candidates[a].first - candidates[b].first, 1);
      ++report.pairs_checked;
      if (is_nth_power_series(ratio, n))
        ++report.equivalent_pairs;
    }
  }
  report.distinct = report.equivalent_pairs == 0;
  report.reductions_unique = true;
  std::size_t precision = 0;
  for (auto const &x : samples) {
    SampleReduction red;
    red.sample = x;
    try {
      for (auto const &[i, b] : candidates) {
        if (is_nth_power_series(b * x.shifted(i), n))
          ++red.matching_candidates;
      }
      red.rep = class_representative(x, n, reps);
      red.pass = red.matching_candidates == 1 && red.rep->certificate.verified;
      precision = precision == 0 ? red.rep->certificate.precision
                                 : std::min(precision, red.rep->certificate.precision);
    } catch (DomainError const &err) {
      red.error = err.what();
    }
    report.reductions_unique = report.reductions_unique && red.pass;
    report.samples.push_back(std::move(red));
  }
  report.precision = precision;
  report.overall = report.distinct && report.reductions_unique;
  return report;
}

} // namespace gw
