#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "gw/config.hpp"
#include "gw/perm_group.hpp"

namespace gw {

/// C_n acting regularly on n points.
inline PermGroup cyclic_group(std::size_t n)
{
  if (n == 0)
    throw DomainError("cyclic group order must be positive");
  if (n == 1)
    return PermGroup::trivial(1);
  std::vector<Point> img(n);
  for (std::size_t i = 0; i < n; ++i)
    img[i] = static_cast<Point>((i + 1) % n);
  return PermGroup::build(n, {Permutation::from_images(std::move(img))});
}

/// C_p^k acting regularly on p^k points; point x is the vector of its base-p
/// digits and generator i adds 1 to digit i.
inline PermGroup elementary_abelian_group(std::size_t p, std::size_t k,
                                          Guards const &guards = {})
{
  if (!is_prime(p))
    throw DomainError("E(p,k) needs a prime p, got " + std::to_string(p));
  if (k == 0)
    throw DomainError("E(p,k) needs k >= 1");
  BigInt const size = ipow(p, k);
  if (size > guards.max_degree)
    guards.check_degree(guards.max_degree + 1, "E(" + std::to_string(p) + "," +
                                                    std::to_string(k) + ")");
  auto const n = static_cast<std::size_t>(size);
  std::vector<Permutation> gens;
  std::size_t stride = 1;
  for (std::size_t i = 0; i < k; ++i, stride *= p) {
    std::vector<Point> img(n);
    for (std::size_t x = 0; x < n; ++x) {
      std::size_t digit = (x / stride) % p;
      std::size_t next = (digit + 1) % p;
      img[x] = static_cast<Point>(x - digit * stride + next * stride);
    }
    gens.push_back(Permutation::from_images(std::move(img)));
  }
  return PermGroup::build(n, std::move(gens));
}

inline Permutation cycle_on(std::size_t degree, std::size_t first, std::size_t last)
{
  std::vector<Point> img(degree);
  for (std::size_t i = 0; i < degree; ++i)
    img[i] = static_cast<Point>(i);
  for (std::size_t i = first; i < last; ++i)
    img[i] = static_cast<Point>(i + 1);
  img[last] = static_cast<Point>(first);
  return Permutation::from_images(std::move(img));
}

/// A_n on n points, generated by (0 1 2) and an n-cycle (n odd) or the
/// (n-1)-cycle (1 ... n-1) (n even).
inline PermGroup alternating_group(std::size_t n)
{
  if (n == 0)
    throw DomainError("A(n) needs n >= 1");
  if (n < 3)
    return PermGroup::trivial(n);
  std::vector<Permutation> gens{cycle_on(n, 0, 2)};
  if (n > 3)
    gens.push_back(n % 2 == 1 ? cycle_on(n, 0, n - 1) : cycle_on(n, 1, n - 1));
  return PermGroup::build(n, std::move(gens));
}

inline PermGroup symmetric_group(std::size_t n)
{
  if (n == 0)
    throw DomainError("S(n) needs n >= 1");
  if (n == 1)
    return PermGroup::trivial(1);
  std::vector<Permutation> gens{cycle_on(n, 0, 1)};
  if (n > 2)
    gens.push_back(cycle_on(n, 0, n - 1));
  return PermGroup::build(n, std::move(gens));
}

/// Direct product on the disjoint union of the factors' domains.
inline PermGroup direct_product(std::vector<PermGroup> const &factors,
                                Guards const &guards = {})
{
  std::size_t degree = 0;
  for (auto const &f : factors)
    degree += f.degree();
  guards.check_degree(degree, "direct product");
  if (factors.empty())
    return PermGroup::trivial(1);
  std::vector<Permutation> gens;
  std::size_t offset = 0;
  for (auto const &f : factors) {
    for (auto const &g : f.generators())
      gens.push_back(g.shifted(offset, degree));
    offset += f.degree();
  }
  return PermGroup::build(degree, std::move(gens));
}

inline PermGroup direct_power(PermGroup const &G, std::size_t k,
                              Guards const &guards = {})
{
  if (k == 0)
    throw DomainError("direct power exponent must be positive");
  guards.check_degree(G.degree() * k, "direct power");
  return direct_product(std::vector<PermGroup>(k, G), guards);
}

/// Right regular representation. Elements are sorted lexicographically by
/// image list, so point 0 is the identity and point i is the i-th element in
/// that order; a generator g maps point x to the index of (element x) * g.
inline PermGroup regular_representation(PermGroup const &G,
                                        Guards const &guards = {})
{
  BigInt const order = G.order();
  if (order > guards.max_regular_degree)
    throw GuardError("regular-degree",
                     "regular representation needs degree " + to_string(order) +
                         " > " + std::to_string(guards.max_regular_degree));
  auto elements = G.elements();
  std::sort(elements.begin(), elements.end());
  std::unordered_map<Permutation, Point, PermutationHash> index;
  index.reserve(elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i)
    index.emplace(elements[i], static_cast<Point>(i));
  std::size_t const n = elements.size();
  std::vector<Permutation> gens;
  for (auto const &g : G.generators()) {
    std::vector<Point> img(n);
    for (std::size_t x = 0; x < n; ++x)
      img[x] = index.at(elements[x] * g);
    gens.push_back(Permutation::from_images(std::move(img)));
  }
  return PermGroup::build(n, std::move(gens));
}

/// A point whose stabilizer is non-trivial, or the first point outside the
/// orbit of 0, for diagnostics on non-regular input.
inline std::string regularity_witness(PermGroup const &G)
{
  auto orb = orbit_of(G, 0);
  if (orb.size() != G.degree())
    return "not transitive: orbit of 0 has length " + std::to_string(orb.size()) +
           " of " + std::to_string(G.degree());
  return "stabilizer of point 0 has order " + to_string(G.order() / G.degree());
}

/// Top-group element of a wreath product for sigma in S.
inline Permutation top_element(WreathInfo const &info, Permutation const &sigma)
{
  std::size_t const a = info.base_factor.degree();
  std::size_t const s = info.top.degree();
  Permutation const inv = sigma.inverse();
  std::vector<Point> img(a * s);
  for (std::size_t x = 0; x < s; ++x) {
    for (std::size_t y = 0; y < a; ++y)
      img[x * a + y] = static_cast<Point>(inv[static_cast<Point>(x)] * a + y);
  }
  return Permutation::from_images(std::move(img));
}

/// A wr S on |A|*|S| points. Requires both factors in regular action.
///
/// Base element f (one value of A per element of S) acts on block x by
/// f(tau_x). The top element sigma sends block x to block x^(sigma^-1), which
/// makes conjugation by it realize f^sigma(tau) = f(tau * sigma). Generators:
/// the generators of A on block 0, then the block permutations of S's
/// generators.
inline PermGroup wreath(PermGroup const &A, PermGroup const &S,
                        Guards const &guards = {})
{
  if (!is_regular(A))
    throw DomainError("wreath base factor is not regular: " + regularity_witness(A));
  if (!is_regular(S))
    throw DomainError("wreath top group is not regular: " + regularity_witness(S));
  std::size_t const a = A.degree();
  std::size_t const s = S.degree();
  guards.check_degree(a * s, "wreath product");
  BigInt const order = ipow(A.order(), s) * S.order();
  guards.check_order(order, "wreath product");

  auto info = std::make_shared<WreathInfo const>(WreathInfo{A, S});
  std::size_t const n = a * s;
  std::vector<Permutation> gens;
  for (auto const &alpha : A.generators())
    gens.push_back(alpha.shifted(0, n));
  for (auto const &sigma : S.generators())
    gens.push_back(top_element(*info, sigma));
  auto W = PermGroup::build(n, std::move(gens));
  if (W.order() != order)
    throw Error("internal error: wreath order " + to_string(W.order()) +
                " differs from |A|^|S|*|S| = " + to_string(order));
  return W.with_wreath_info(std::move(info));
}

/// Element of the base group of a wreath product with value values[x] (an
/// element of A) on block x.
inline Permutation base_element(WreathInfo const &info,
                                std::vector<Permutation> const &values)
{
  std::size_t const a = info.base_factor.degree();
  std::size_t const s = info.top.degree();
  if (values.size() != s)
    throw DomainError("base element needs one value per block");
  std::vector<Point> img(a * s);
  for (std::size_t x = 0; x < s; ++x) {
    for (std::size_t y = 0; y < a; ++y)
      img[x * a + y] = static_cast<Point>(x * a + values[x][static_cast<Point>(y)]);
  }
  return Permutation::from_images(std::move(img));
}

struct WreathBase
{
  PermGroup full;  ///< B = A^S
  PermGroup zero;  ///< B_0, kernel of the coordinate-product map
};

/// B and B_0 of a wreath product, in the wreath product's degree.
///
/// B_0 is the normal closure in B of {alpha on block x, alpha^-1 on block 0}.
/// For abelian A this is exactly the kernel of f -> prod f(sigma); in general
/// it is the kernel of the product map into the abelianization of A.
inline WreathBase wreath_base_parts(PermGroup const &W)
{
  auto const &info = W.wreath_info();
  if (!info)
    throw DomainError("group carries no wreath product structure; base/b0 "
                      "need a group built by wr(...)");
  std::size_t const a = info->base_factor.degree();
  std::size_t const s = info->top.degree();
  std::size_t const n = a * s;
  std::vector<Permutation> base_gens;
  std::vector<Permutation> zero_seeds;
  for (auto const &alpha : info->base_factor.generators()) {
    Permutation const at0 = alpha.shifted(0, n);
    Permutation const inv0 = alpha.inverse().shifted(0, n);
    base_gens.push_back(at0);
    for (std::size_t x = 1; x < s; ++x) {
      Permutation atx = alpha.shifted(x * a, n);
      base_gens.push_back(atx);
      zero_seeds.push_back(atx * inv0);
    }
  }
  auto B = PermGroup::build(n, std::move(base_gens));
  auto B0 = normal_closure(B, zero_seeds);
  return {std::move(B), std::move(B0)};
}

} // namespace gw
