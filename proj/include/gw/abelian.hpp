#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gw/error.hpp"
#include "gw/numeric.hpp"
#include "gw/perm_group.hpp"

namespace gw {

/// Invariant factors d_1 | d_2 | ... | d_r (each >= 2) of G/G'.
struct AbelianInvariants
{
  std::vector<BigInt> factors;

  BigInt order() const
  {
    BigInt out = 1;
    for (auto const &d : factors)
      out *= d;
    return out;
  }

  /// Number of factors divisible by p, i.e. the p-rank of the group.
  std::size_t rank_at(BigInt const &p) const
  {
    return static_cast<std::size_t>(
        std::count_if(factors.begin(), factors.end(),
                      [&](BigInt const &d) { return d % p == 0; }));
  }

  std::string to_string() const
  {
    std::string out = "[";
    for (std::size_t i = 0; i < factors.size(); ++i)
      out += (i ? ", " : "") + factors[i].str();
    return out + "]";
  }

  friend bool operator==(AbelianInvariants const &, AbelianInvariants const &) = default;
};

namespace detail {

inline void require_prime(std::uint64_t p)
{
  if (!is_prime(p))
    throw DomainError(std::to_string(p) + " is not prime");
}

/// <G', g^e : g a generator of G>. Normal because it contains G'.
inline PermGroup derived_times_powers(PermGroup const &G, PermGroup const &derived,
                                      BigInt const &e)
{
  auto chain = std::make_shared<StabilizerChain>(G.degree());
  std::vector<Permutation> gens;
  for (auto const &d : derived.generators()) {
    if (chain->add_generator(d))
      gens.push_back(d);
  }
  for (auto const &g : G.generators()) {
    // Only e modulo the element order matters.
    BigInt const ord = g.order();
    Permutation h = g.pow(static_cast<std::int64_t>(e % ord));
    if (chain->add_generator(h))
      gens.push_back(std::move(h));
  }
  return PermGroup::from_chain(std::move(chain), std::move(gens));
}

} // namespace detail

/// M_p(G): intersection of all normal subgroups with quotient C_p, computed as
/// G' * <g^p : g a generator>.
inline PermGroup mp_subgroup(PermGroup const &G, std::uint64_t p)
{
  detail::require_prime(p);
  return detail::derived_times_powers(G, derived_subgroup(G), p);
}

/// r_p(G) with G/M_p(G) = C_p^r.
inline std::size_t p_rank(PermGroup const &G, std::uint64_t p)
{
  detail::require_prime(p);
  BigInt const quotient = G.order() / mp_subgroup(G, p).order();
  long r = exact_log(quotient, p);
  if (r < 0)
    throw Error("internal error: |G/M_p(G)| = " + to_string(quotient) +
                " is not a power of " + std::to_string(p));
  return static_cast<std::size_t>(r);
}

/// Invariant factors of G/G'. For each prime p dividing |G/G'| the p-primary
/// part is read off the layer sizes of G'G^p >= G'G^(p^2) >= ...; the primary
/// parts are then merged into a divisibility chain.
inline AbelianInvariants abelian_invariants(PermGroup const &G,
                                            PermGroup const &derived)
{
  BigInt const quotient = G.order() / derived.order();
  if (quotient == 1)
    return {};
  // p-primary exponents, largest first, per prime.
  std::vector<std::vector<BigInt>> primary;
  for (auto const &[p, e] : factorize(quotient)) {
    std::vector<std::size_t> layer_ranks;  // number of cyclic factors of exponent > j
    BigInt prev = G.order();
    BigInt power = p;
    std::size_t accounted = 0;
    while (accounted < e) {
      BigInt const next = detail::derived_times_powers(G, derived, power).order();
      long r = exact_log(prev / next, p);
      if (r <= 0)
        throw Error("internal error: degenerate p-power layer");
      layer_ranks.push_back(static_cast<std::size_t>(r));
      accounted += static_cast<std::size_t>(r);
      prev = next;
      power *= p;
    }
    std::vector<BigInt> parts;
    for (std::size_t j = 0; j < layer_ranks.size(); ++j) {
      std::size_t const above = j + 1 < layer_ranks.size() ? layer_ranks[j + 1] : 0;
      for (std::size_t c = 0; c < layer_ranks[j] - above; ++c)
        parts.push_back(ipow(p, j + 1));
    }
    std::sort(parts.begin(), parts.end(), std::greater<>());
    primary.push_back(std::move(parts));
  }
  std::size_t width = 0;
  for (auto const &parts : primary)
    width = std::max(width, parts.size());
  AbelianInvariants out;
  out.factors.assign(width, 1);
  // Largest invariant factor collects the largest primary part of each prime.
  for (auto const &parts : primary) {
    for (std::size_t i = 0; i < parts.size(); ++i)
      out.factors[width - 1 - i] *= parts[i];
  }
  return out;
}

inline AbelianInvariants abelian_invariants(PermGroup const &G)
{
  return abelian_invariants(G, derived_subgroup(G));
}

} // namespace gw
