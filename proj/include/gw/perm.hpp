#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gw/error.hpp"
#include "gw/numeric.hpp"

namespace gw {

using Point = std::uint32_t;

/// A permutation of {0, ..., degree-1} stored as its image list.
///
/// Products compose left to right: (a * b)[x] == b[a[x]], i.e. x^(ab) = (x^a)^b.
/// Conjugation follows the same convention: a.conjugate(g) == g^-1 * a * g.
class Permutation
{
public:
  Permutation() = default;

  explicit Permutation(std::size_t degree) : images_(degree)
  {
    for (std::size_t i = 0; i < degree; ++i)
      images_[i] = static_cast<Point>(i);
  }

  /// Validates that `images` is a bijection; the diagnostic names the first
  /// repeated (or out-of-range) point.
  static Permutation from_images(std::vector<Point> images)
  {
    std::vector<bool> seen(images.size(), false);
    for (std::size_t i = 0; i < images.size(); ++i) {
      Point p = images[i];
      if (p >= images.size())
        throw DomainError("image " + std::to_string(p) + " of point " +
                          std::to_string(i) + " is outside degree " +
                          std::to_string(images.size()));
      if (seen[p])
        throw DomainError("not a bijection: point " + std::to_string(p) +
                          " appears twice as an image");
      seen[p] = true;
    }
    Permutation out;
    out.images_ = std::move(images);
    return out;
  }

  /// Parses disjoint-cycle notation such as "(0 1 2)(3 4)"; "()" is the identity.
  static Permutation from_cycles(std::size_t degree, std::string_view text)
  {
    Permutation out(degree);
    std::vector<bool> used(degree, false);
    std::size_t i = 0;
    auto skip_ws = [&] {
      while (i < text.size() && (text[i] == ' ' || text[i] == '\t' ||
                                 text[i] == '\n' || text[i] == '\r'))
        ++i;
    };
    skip_ws();
    while (i < text.size()) {
      if (text[i] != '(')
        throw DomainError("expected '(' in cycle notation at offset " +
                          std::to_string(i));
      ++i;
      std::vector<Point> cycle;
      for (;;) {
        skip_ws();
        if (i < text.size() && text[i] == ',') {
          ++i;
          continue;
        }
        if (i < text.size() && text[i] == ')') {
          ++i;
          break;
        }
        if (i >= text.size() || text[i] < '0' || text[i] > '9')
          throw DomainError("expected point or ')' in cycle notation at offset " +
                            std::to_string(i));
        std::uint64_t v = 0;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
          v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
          if (v > degree)
            break;
          ++i;
        }
        if (v >= degree)
          throw DomainError("point " + std::to_string(v) +
                            " out of range for degree " + std::to_string(degree));
        if (used[v])
          throw DomainError("not a bijection: point " + std::to_string(v) +
                            " appears twice in cycle notation");
        used[v] = true;
        cycle.push_back(static_cast<Point>(v));
      }
      for (std::size_t k = 0; k < cycle.size(); ++k)
        out.images_[cycle[k]] = cycle[(k + 1) % cycle.size()];
      skip_ws();
    }
    return out;
  }

  std::size_t degree() const { return images_.size(); }
  Point operator[](Point x) const { return images_[x]; }
  std::span<Point const> images() const { return images_; }

  bool is_identity() const
  {
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (images_[i] != i)
        return false;
    }
    return true;
  }

  std::optional<Point> smallest_moved_point() const
  {
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (images_[i] != i)
        return static_cast<Point>(i);
    }
    return std::nullopt;
  }

  Permutation inverse() const
  {
    Permutation out;
    out.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i)
      out.images_[images_[i]] = static_cast<Point>(i);
    return out;
  }

  friend Permutation operator*(Permutation const &a, Permutation const &b)
  {
    Permutation out;
    out.images_.resize(a.images_.size());
    for (std::size_t i = 0; i < a.images_.size(); ++i)
      out.images_[i] = b.images_[a.images_[i]];
    return out;
  }

  Permutation &operator*=(Permutation const &rhs)
  {
    for (auto &x : images_)
      x = rhs.images_[x];
    return *this;
  }

  Permutation conjugate(Permutation const &g) const
  {
    // g^-1 * this * g maps g[x] to g[this[x]].
    Permutation out;
    out.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i)
      out.images_[g.images_[i]] = g.images_[images_[i]];
    return out;
  }

  Permutation pow(std::int64_t e) const
  {
    Permutation base = e < 0 ? inverse() : *this;
    std::uint64_t n = e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1
                            : static_cast<std::uint64_t>(e);
    Permutation result(images_.size());
    while (n != 0) {
      if (n & 1u)
        result *= base;
      n >>= 1u;
      if (n != 0)
        base = base * base;
    }
    return result;
  }

  /// Least common multiple of the cycle lengths.
  BigInt order() const
  {
    BigInt result = 1;
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (seen[i])
        continue;
      std::size_t len = 0;
      for (std::size_t j = i; !seen[j]; j = images_[j]) {
        seen[j] = true;
        ++len;
      }
      result = lcm(result, BigInt(len));
    }
    return result;
  }

  /// Places this permutation on points [offset, offset+degree) of a larger domain.
  Permutation shifted(std::size_t offset, std::size_t new_degree) const
  {
    Permutation out(new_degree);
    for (std::size_t i = 0; i < images_.size(); ++i)
      out.images_[offset + i] = static_cast<Point>(offset + images_[i]);
    return out;
  }

  std::string to_cycle_string() const
  {
    std::string out;
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (seen[i] || images_[i] == i)
        continue;
      out += '(';
      for (std::size_t j = i; !seen[j]; j = images_[j]) {
        seen[j] = true;
        if (j != i)
          out += ' ';
        out += std::to_string(j);
      }
      out += ')';
    }
    return out.empty() ? "()" : out;
  }

  friend bool operator==(Permutation const &, Permutation const &) = default;
  friend auto operator<=>(Permutation const &a, Permutation const &b)
  {
    return a.images_ <=> b.images_;
  }

private:
  std::vector<Point> images_;
};

struct PermutationHash
{
  std::size_t operator()(Permutation const &p) const noexcept
  {
    std::size_t h = 1469598103934665603ull;
    for (Point x : p.images()) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }
};

} // namespace gw
