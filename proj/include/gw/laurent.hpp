#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "gw/error.hpp"
#include "gw/numeric.hpp"

namespace gw {

/// Truncated Laurent series over Q in t: sum_{e >= v} a_e t^e + O(t^(v+precision)).
///
/// A non-zero series stores `precision` coefficients starting at its valuation
/// v, and the coefficient at v is non-zero. The zero series records only the
/// exponent up to which it is known to vanish. Arithmetic keeps the largest
/// precision the inputs justify.
class LaurentSeries
{
public:
  /// O(t^known_to): nothing known to be non-zero below that exponent.
  static LaurentSeries zero(std::int64_t known_to)
  {
    LaurentSeries s;
    s.zero_ = true;
    s.valuation_ = known_to;
    return s;
  }

  /// c * t^e with `precision` known terms.
  static LaurentSeries monomial(Rational const &c, std::int64_t e, std::size_t precision)
  {
    if (c == 0)
      return zero(e + static_cast<std::int64_t>(precision));
    std::map<std::int64_t, Rational> terms{{e, c}};
    return from_terms(terms, precision);
  }

  /// A finite sum of terms, known to `precision` terms past its leading one
  /// (all further coefficients are zero). With no non-zero term the result is
  /// the zero series known to O(t^precision).
  static LaurentSeries from_terms(std::map<std::int64_t, Rational> const &terms,
                                  std::size_t precision)
  {
    if (precision == 0)
      throw DomainError("series precision must be positive");
    auto lead = std::find_if(terms.begin(), terms.end(),
                             [](auto const &kv) { return kv.second != 0; });
    if (lead == terms.end())
      return zero(static_cast<std::int64_t>(precision));
    LaurentSeries s;
    s.valuation_ = lead->first;
    s.coeffs_.assign(precision, Rational(0));
    for (auto it = lead; it != terms.end(); ++it) {
      std::int64_t off = it->first - s.valuation_;
      if (off < static_cast<std::int64_t>(precision))
        s.coeffs_[static_cast<std::size_t>(off)] = it->second;
    }
    return s;
  }

  /// Series from explicit coefficients a_v, a_{v+1}, ...; leading zeros are
  /// stripped (each one costs a term of relative precision).
  static LaurentSeries from_coefficients(std::int64_t v, std::vector<Rational> coeffs)
  {
    std::size_t k = 0;
    while (k < coeffs.size() && coeffs[k] == 0)
      ++k;
    if (k == coeffs.size())
      return zero(v + static_cast<std::int64_t>(coeffs.size()));
    LaurentSeries s;
    s.valuation_ = v + static_cast<std::int64_t>(k);
    s.coeffs_.assign(coeffs.begin() + static_cast<std::ptrdiff_t>(k), coeffs.end());
    return s;
  }

  bool is_zero() const { return zero_; }

  std::int64_t valuation() const
  {
    if (zero_)
      throw DomainError("valuation of the zero series is undefined");
    return valuation_;
  }

  /// Leading coefficient of x * t^-v(x).
  Rational const &unit_residue() const
  {
    if (zero_)
      throw DomainError("the zero series has no unit residue");
    return coeffs_.front();
  }

  /// Number of known terms (relative precision); 0 for the zero series.
  std::size_t precision() const { return coeffs_.size(); }

  /// Exponent of the first unknown coefficient.
  std::int64_t absolute_precision() const
  {
    return valuation_ + static_cast<std::int64_t>(coeffs_.size());
  }

  Rational coefficient(std::int64_t e) const
  {
    if (e >= absolute_precision())
      throw DomainError("coefficient of t^" + std::to_string(e) + " is beyond the known precision");
    if (zero_ || e < valuation_)
      return 0;
    return coeffs_[static_cast<std::size_t>(e - valuation_)];
  }

  std::vector<Rational> const &coefficients() const { return coeffs_; }

  LaurentSeries truncated(std::size_t precision) const
  {
    if (zero_ || precision >= coeffs_.size())
      return *this;
    if (precision == 0)
      throw DomainError("series precision must be positive");
    LaurentSeries s = *this;
    s.coeffs_.resize(precision);
    return s;
  }

  /// Multiplication by t^k.
  LaurentSeries shifted(std::int64_t k) const
  {
    LaurentSeries s = *this;
    s.valuation_ += k;
    return s;
  }

  LaurentSeries operator-() const
  {
    LaurentSeries s = *this;
    for (auto &c : s.coeffs_)
      c = -c;
    return s;
  }

  friend LaurentSeries operator+(LaurentSeries const &a, LaurentSeries const &b)
  {
    std::int64_t const hi = std::min(a.absolute_precision(), b.absolute_precision());
    std::int64_t const lo = std::min(a.valuation_, b.valuation_);
    if (hi <= lo)
      return zero(hi);
    std::vector<Rational> c(static_cast<std::size_t>(hi - lo));
    for (std::int64_t e = lo; e < hi; ++e)
      c[static_cast<std::size_t>(e - lo)] = a.coefficient(e) + b.coefficient(e);
    return from_coefficients(lo, std::move(c));
  }

  friend LaurentSeries operator-(LaurentSeries const &a, LaurentSeries const &b)
  {
    return a + (-b);
  }

  friend LaurentSeries operator*(LaurentSeries const &a, LaurentSeries const &b)
  {
    // O(t^k) * (c t^v + ...) is O(t^(k+v)); a zero series stores k as its valuation.
    if (a.zero_ || b.zero_)
      return zero(a.valuation_ + b.valuation_);
    std::size_t const p = std::min(a.coeffs_.size(), b.coeffs_.size());
    std::vector<Rational> c(p, Rational(0));
    for (std::size_t i = 0; i < p; ++i) {
      if (a.coeffs_[i] == 0)
        continue;
      for (std::size_t j = 0; i + j < p; ++j)
        c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    LaurentSeries s;
    s.valuation_ = a.valuation_ + b.valuation_;
    s.coeffs_ = std::move(c);
    return s;
  }

  friend LaurentSeries operator*(Rational const &q, LaurentSeries const &a)
  {
    if (q == 0)
      throw DomainError("scaling by zero");
    LaurentSeries s = a;
    for (auto &c : s.coeffs_)
      c *= q;
    return s;
  }

  LaurentSeries inverse() const
  {
    if (zero_)
      throw DomainError("the zero series is not invertible");
    std::size_t const p = coeffs_.size();
    Rational const inv0 = 1 / coeffs_[0];
    std::vector<Rational> b(p, Rational(0));
    b[0] = inv0;
    for (std::size_t k = 1; k < p; ++k) {
      Rational acc = 0;
      for (std::size_t i = 1; i <= k; ++i)
        acc += coeffs_[i] * b[k - i];
      b[k] = -inv0 * acc;
    }
    LaurentSeries s;
    s.valuation_ = -valuation_;
    s.coeffs_ = std::move(b);
    return s;
  }

  friend LaurentSeries operator/(LaurentSeries const &a, LaurentSeries const &b)
  {
    return a * b.inverse();
  }

  LaurentSeries pow(std::uint64_t e) const
  {
    if (zero_)
      throw DomainError("power of the zero series");
    LaurentSeries result = monomial(1, 0, coeffs_.size());
    LaurentSeries base = *this;
    while (e != 0) {
      if (e & 1u)
        result = result * base;
      e >>= 1u;
      if (e != 0)
        base = base * base;
    }
    return result;
  }

  /// True when every coefficient known to both series agrees.
  bool agrees_with(LaurentSeries const &o) const
  {
    std::int64_t const hi = std::min(absolute_precision(), o.absolute_precision());
    std::int64_t const lo = std::min(zero_ ? hi : valuation_, o.zero_ ? hi : o.valuation_);
    for (std::int64_t e = lo; e < hi; ++e) {
      if (coefficient(e) != o.coefficient(e))
        return false;
    }
    return true;
  }

  /// Same literal syntax as the parser, followed by the O-term.
  std::string to_string() const
  {
    std::string out;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      Rational const &c = coeffs_[k];
      if (c == 0)
        continue;
      std::int64_t const e = valuation_ + static_cast<std::int64_t>(k);
      bool const neg = c < 0;
      Rational const mag = neg ? Rational(-c) : c;
      out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
      if (e == 0) {
        out += gw::to_string(mag);
        continue;
      }
      if (mag != 1)
        out += gw::to_string(mag) + "*";
      out += "t";
      if (e != 1)
        out += "^" + std::to_string(e);
    }
    if (out.empty())
      out = "0";
    return out + " + O(t^" + std::to_string(absolute_precision()) + ")";
  }

  friend bool operator==(LaurentSeries const &, LaurentSeries const &) = default;

private:
  LaurentSeries() = default;

  bool zero_ = false;
  std::int64_t valuation_ = 0;
  std::vector<Rational> coeffs_;
};

namespace detail {

class SeriesParser
{
public:
  explicit SeriesParser(std::string_view text) : text_(text) {}

  std::map<std::int64_t, Rational> parse()
  {
    std::map<std::int64_t, Rational> terms;
    skip_ws();
    bool negative = false;
    if (peek('-') || peek('+')) {
      negative = text_[pos_] == '-';
      ++pos_;
    }
    for (;;) {
      auto [e, c] = term();
      terms[e] += negative ? Rational(-c) : c;
      skip_ws();
      if (pos_ == text_.size())
        break;
      if (!peek('+') && !peek('-'))
        fail("expected '+', '-' or end of input", {"'+'", "'-'", "end of input"});
      negative = text_[pos_] == '-';
      ++pos_;
    }
    return terms;
  }

private:
  [[noreturn]] void fail(std::string const &msg, std::vector<std::string> expected = {})
  {
    throw ParseError(msg, 1, pos_ + 1, std::move(expected));
  }

  void skip_ws()
  {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool peek(char c)
  {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  BigInt natural()
  {
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected an integer", {"INT"});
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    return BigInt(std::string(text_.substr(start, pos_ - start)));
  }

  std::int64_t exponent()
  {
    skip_ws();
    bool neg = false;
    if (peek('-')) {
      neg = true;
      ++pos_;
    }
    BigInt v = natural();
    if (v > 1'000'000'000)
      fail("exponent too large");
    auto e = static_cast<std::int64_t>(v);
    return neg ? -e : e;
  }

  std::pair<std::int64_t, Rational> term()
  {
    Rational coeff = 1;
    bool have_coeff = false;
    if (!peek('t')) {
      BigInt num = natural();
      BigInt den = 1;
      if (peek('/')) {
        ++pos_;
        den = natural();
        if (den == 0)
          fail("zero denominator");
      }
      coeff = Rational(num, den);
      have_coeff = true;
      if (!peek('*'))
        return {0, coeff};
      ++pos_;
    }
    if (!peek('t'))
      fail(have_coeff ? "expected 't' after '*'" : "expected a term", {"'t'", "INT"});
    ++pos_;
    std::int64_t e = 1;
    if (peek('^')) {
      ++pos_;
      e = exponent();
    }
    return {e, coeff};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

} // namespace detail

/// Parses literals such as "3*t^-2 + t + 1/2*t^3" into a series known to
/// `precision` terms past its leading term.
inline LaurentSeries parse_series(std::string_view text, std::size_t precision)
{
  return LaurentSeries::from_terms(detail::SeriesParser(text).parse(), precision);
}

/// Parses an exact rational "a", "-a" or "a/b".
inline Rational parse_rational(std::string_view text)
{
  std::size_t k = 0;
  auto fail = [&](std::string const &msg) -> Rational {
    throw ParseError(msg + " in rational '" + std::string(text) + "'", 1, k + 1, {"INT", "INT/INT"});
  };
  auto digits = [&]() -> BigInt {
    std::size_t const start = k;
    while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k])))
      ++k;
    if (k == start)
      fail("expected digits");
    return BigInt(std::string(text.substr(start, k - start)));
  };
  bool negative = false;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
    negative = text[0] == '-';
    k = 1;
  }
  BigInt const num = digits();
  BigInt den = 1;
  if (k < text.size() && text[k] == '/') {
    ++k;
    den = digits();
    if (den == 0)
      return fail("zero denominator");
  }
  if (k != text.size())
    return fail("unexpected character");
  Rational q(num, den);
  return negative ? Rational(-q) : q;
}

} // namespace gw
