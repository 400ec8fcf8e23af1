#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gw/abelian.hpp"
#include "gw/config.hpp"
#include "gw/constructions.hpp"
#include "gw/cyclic_counts.hpp"
#include "gw/error.hpp"
#include "gw/henselian.hpp"
#include "gw/laurent.hpp"
#include "gw/numeric.hpp"
#include "gw/perm_group.hpp"

namespace gw {

struct Assertion
{
  std::string description;
  std::string expected;
  std::string actual;
  bool pass = false;
};

/// Outcome of one check. Every value is exact; the elapsed time is an integer
/// number of microseconds.
struct CheckReport
{
  std::string check_id;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<Assertion> assertions;
  std::int64_t elapsed_us = 0;

  bool overall() const
  {
    for (auto const &a : assertions) {
      if (!a.pass)
        return false;
    }
    return true;
  }

  void parameter(std::string name, std::string value)
  {
    parameters.emplace_back(std::move(name), std::move(value));
  }

  void check(std::string description, std::string expected, std::string actual, bool pass)
  {
    assertions.push_back({std::move(description), std::move(expected), std::move(actual), pass});
  }

  void check_equal(std::string description, BigInt const &expected, BigInt const &actual)
  {
    check(std::move(description), to_string(expected), to_string(actual), expected == actual);
  }
};

/// A group together with the text used to refer to it in reports.
struct NamedGroup
{
  std::string label;
  PermGroup group;
};

namespace detail {

class Stopwatch
{
public:
  std::int64_t elapsed_us() const
  {
    return std::chrono::duration_cast<std::chrono::microseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline std::string pass_word(bool b) { return b ? "true" : "false"; }

inline BigInt projective_count(std::uint64_t p, std::size_t rank)
{
  return (ipow(p, rank) - 1) / (p - 1);
}

inline BigInt factorial(std::uint64_t m)
{
  BigInt out = 1;
  for (std::uint64_t k = 2; k <= m; ++k)
    out *= k;
  return out;
}

inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n)
{
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0)
        n /= p;
    }
  }
  if (n > 1)
    out.push_back(n);
  return out;
}

inline BigInt cyclic_count(AbelianInvariants const &inv, std::uint64_t n)
{
  return n == 1 ? BigInt(1) : cyclic_quotients_from_invariants(inv, n);
}

inline void require_non_abelian_simple(NamedGroup const &S, Guards const &guards)
{
  guards.check_oracle(S.group.order(), S.label);
  if (is_perfect(S.group) && !S.group.is_trivial() &&
      NormalSubgroupLattice(S.group, guards).size() == 2)
    return;
  throw DomainError(S.label + " is not a non-abelian simple group");
}

inline PermGroup as_regular(PermGroup const &G, Guards const &guards)
{
  return is_regular(G) ? G : regular_representation(G, guards);
}

} // namespace detail

/// I_G(p) by brute force against (p^r - 1)/(p - 1), r the p-rank.
inline CheckReport check_rank_formula(NamedGroup const &G, std::uint64_t p,
                                      Guards const &guards = {})
{
  detail::Stopwatch clock;
  detail::require_prime(p);
  guards.check_oracle(G.group.order(), G.label);
  CheckReport r;
  r.check_id = "rank-formula";
  r.parameter("G", G.label);
  r.parameter("p", std::to_string(p));
  std::size_t const rank = p_rank(G.group, p);
  BigInt const brute = brute_force_cyclic_quotients(G.group, p, guards).value;
  r.check_equal("I_G(p) by brute force equals (p^r - 1)/(p - 1) with r = " +
                    std::to_string(rank),
                detail::projective_count(p, rank), brute);
  r.elapsed_us = clock.elapsed_us();
  return r;
}

/// I_G(n) <= 2^(n^s), s = sum of I_G(p) over the primes p dividing n.
inline CheckReport check_prime_reduction_bound(NamedGroup const &G, std::uint64_t n)
{
  detail::Stopwatch clock;
  if (n == 0)
    throw DomainError("n must be positive");
  CheckReport r;
  r.check_id = "prime-reduction";
  r.parameter("G", G.label);
  r.parameter("n", std::to_string(n));
  auto const inv = abelian_invariants(G.group);
  BigInt s = 0;
  for (std::uint64_t p : detail::prime_divisors(n))
    s += detail::cyclic_count(inv, p);
  BigInt const value = detail::cyclic_count(inv, n);
  // n^s >= 2^s, so for large s exceeding the bit length of I_G(n) the bound
  // holds without expanding n^s.
  bool holds = false;
  std::string exponent_text = "(" + std::to_string(n) + "^" + to_string(s) + ")";
  if (s > 64 && s > BigInt(floor_log2(value > 0 ? value : BigInt(1))) + 1) {
    holds = true;
  } else {
    BigInt const exponent = ipow(n, static_cast<std::uint64_t>(s));
    exponent_text = to_string(exponent);
    holds = leq_power_of_two(value, exponent);
  }
  r.check("I_G(n) <= 2^(n^s) with s = " + to_string(s), "<= 2^" + exponent_text,
          to_string(value), holds);
  r.elapsed_us = clock.elapsed_us();
  return r;
}

/// The simple-power statements for S^k: no cyclic quotients, the normal
/// subgroups are the sub-products (k <= 2), and I(n,m) <= 2^(m!).
inline CheckReport check_simple_power(NamedGroup const &S, std::uint64_t k, std::uint64_t n_max,
                                      std::uint64_t m, Guards const &guards = {})
{
  detail::Stopwatch clock;
  if (k == 0 || m == 0)
    throw DomainError("k and m must be positive");
  detail::require_non_abelian_simple(S, guards);
  CheckReport r;
  r.check_id = "simple-power";
  r.parameter("S", S.label);
  r.parameter("k", std::to_string(k));
  r.parameter("n_max", std::to_string(n_max));
  r.parameter("m", std::to_string(m));
  guards.check_order(ipow(S.group.order(), k), "pow(" + S.label + "," + std::to_string(k) + ")");
  PermGroup const G = direct_power(S.group, k, guards);
  auto const inv = abelian_invariants(G);
  for (std::uint64_t n = 2; n <= n_max; ++n)
    r.check_equal("I_G(" + std::to_string(n) + ") = 0", 0, detail::cyclic_count(inv, n));

  if (k <= 2) {
    NormalSubgroupLattice lattice(G, guards);
    std::size_t const d = S.group.degree();
    std::vector<PermGroup> factors;
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<Permutation> gens;
      for (auto const &g : S.group.generators())
        gens.push_back(g.shifted(i * d, k * d));
      factors.push_back(PermGroup::build(k * d, std::move(gens)));
    }
    std::size_t sub_products = 0;
    for (std::size_t i = 0; i < lattice.size(); ++i) {
      PermGroup const N = PermGroup::build(k * d, lattice.generators(i));
      std::size_t contained = 0;
      for (auto const &F : factors)
        contained += is_subgroup(N, F) ? 1 : 0;
      if (N.order() == ipow(S.group.order(), contained))
        ++sub_products;
    }
    std::size_t const expected = std::size_t{1} << k;
    r.check("normal subgroups of S^k are exactly the sub-products",
            std::to_string(expected) + " normal subgroups, all sub-products",
            std::to_string(lattice.size()) + " normal subgroups, " +
                std::to_string(sub_products) + " sub-products",
            lattice.size() == expected && sub_products == expected);
  }

  auto const subs = subgroups_up_to_index(G, m, guards);
  std::vector<AbelianInvariants> sub_invariants;
  for (auto const &H : subs)
    sub_invariants.push_back(abelian_invariants(H));
  BigInt const exponent = detail::factorial(m);
  for (std::uint64_t n = 2; n <= n_max; ++n) {
    BigInt best = 0;
    for (auto const &hinv : sub_invariants)
      best = std::max(best, detail::cyclic_count(hinv, n));
    r.check("I_G(" + std::to_string(n) + ", m) <= 2^(m!) over " + std::to_string(subs.size()) +
                " subgroups",
            "<= 2^" + to_string(exponent), to_string(best), leq_power_of_two(best, exponent));
  }
  r.elapsed_us = clock.elapsed_us();
  return r;
}

/// The perfect extension of S by C_p^k: Gamma' for Gamma = E(p,k0) wr S.
struct PerfectExtension
{
  PermGroup P;
  PermGroup B0;
  CheckReport report;
};

/// Judges a candidate (P, B0). All three statements must hold together:
/// P perfect, |P| = p^(k0(|S|-1)) |S|, and B0 <= P of p-rank k0(|S|-1) and index |S|.
inline CheckReport assess_perfect_extension(PermGroup const &P, PermGroup const &B0,
                                            BigInt const &s_order, std::uint64_t p,
                                            std::uint64_t k0)
{
  detail::Stopwatch clock;
  CheckReport r;
  r.check_id = "perfect-extension";
  std::uint64_t const rank = k0 * (static_cast<std::uint64_t>(s_order) - 1);
  bool const perfect = is_perfect(P);
  r.check("P is perfect", "true", detail::pass_word(perfect), perfect);
  r.check_equal("|P| = p^(k0(|S| - 1)) * |S|", ipow(p, rank) * s_order, P.order());
  bool const inside = is_subgroup(P, B0);
  r.check("B_0 <= P", "true", detail::pass_word(inside), inside);
  r.check_equal("r_p(B_0) = k0(|S| - 1)", rank, p_rank(B0, p));
  r.check_equal("|P : B_0| = |S|", s_order, inside ? index_of(P, B0) : BigInt(0));
  r.elapsed_us = clock.elapsed_us();
  return r;
}

inline PerfectExtension build_perfect_extension(NamedGroup const &S, std::uint64_t p,
                                                std::uint64_t k0, Guards const &guards = {})
{
  detail::Stopwatch clock;
  detail::require_prime(p);
  if (k0 == 0)
    throw DomainError("k0 must be positive");
  std::string const label = "wr(E(" + std::to_string(p) + "," + std::to_string(k0) + ")," +
                            S.label + ")";
  BigInt const s_order = S.group.order();
  BigInt const a_order = ipow(p, k0);
  guards.check_degree(static_cast<std::size_t>(a_order * s_order), label);
  guards.check_order(ipow(a_order, static_cast<std::uint64_t>(s_order)) * s_order, label);
  PermGroup const A = elementary_abelian_group(p, k0, guards);
  PermGroup const W = wreath(A, detail::as_regular(S.group, guards), guards);
  PermGroup P = derived_subgroup(W);
  PermGroup B0 = wreath_base_parts(W).zero;
  CheckReport report = assess_perfect_extension(P, B0, s_order, p, k0);
  report.parameters = {{"S", S.label}, {"p", std::to_string(p)}, {"k0", std::to_string(k0)}};
  report.elapsed_us = clock.elapsed_us();
  return {std::move(P), std::move(B0), std::move(report)};
}

struct StageWitness
{
  std::size_t stage = 0;
  std::uint64_t rank = 0;
  BigInt index = 0;
  BigInt count = 0;
  BigInt bound = 0;
};

struct StagewiseResult
{
  CheckReport report;
  std::vector<StageWitness> witnesses;
};

/// Finite stages G_t = P_{k0(1)} x ... x P_{k0(t)} of the product of perfect
/// extensions: each G_t is perfect, yet the subgroup H that swaps the
/// highest-rank factor for its B_0 has index |S| and I_H(p) unbounded in t.
inline StagewiseResult check_stagewise_gap(NamedGroup const &S, std::uint64_t p,
                                           std::vector<std::uint64_t> const &stages,
                                           Guards const &guards = {}, std::uint64_t n_max = 6)
{
  detail::Stopwatch clock;
  detail::require_prime(p);
  StagewiseResult out;
  CheckReport &r = out.report;
  r.check_id = "stagewise-gap";
  r.parameter("S", S.label);
  r.parameter("p", std::to_string(p));
  std::string joined;
  for (std::size_t i = 0; i < stages.size(); ++i)
    joined += (i ? "," : "") + std::to_string(stages[i]);
  r.parameter("stages", joined);
  if (stages.empty()) {
    r.check("empty product is perfect", "true", "true", true);
    r.elapsed_us = clock.elapsed_us();
    return out;
  }
  BigInt const s_order = S.group.order();
  BigInt total = 1;
  for (std::uint64_t k0 : stages)
    total *= ipow(p, k0 * (static_cast<std::uint64_t>(s_order) - 1)) * s_order;
  guards.check_order(total, "stage product");

  std::map<std::uint64_t, PerfectExtension> built;
  std::vector<PermGroup const *> P;
  std::vector<PermGroup const *> B0;
  for (std::uint64_t k0 : stages) {
    auto it = built.find(k0);
    if (it == built.end())
      it = built.emplace(k0, build_perfect_extension(S, p, k0, guards)).first;
    P.push_back(&it->second.P);
    B0.push_back(&it->second.B0);
  }

  for (std::size_t t = 1; t <= stages.size(); ++t) {
    std::string const tag = "G_" + std::to_string(t);
    std::vector<PermGroup> factors;
    std::size_t top = 0;
    for (std::size_t i = 0; i < t; ++i) {
      factors.push_back(*P[i]);
      if (stages[i] > stages[top])
        top = i;
    }
    PermGroup const G = direct_product(factors, guards);
    PermGroup const derived = derived_subgroup(G);
    bool const perfect = derived.order() == G.order();
    r.check(tag + " is perfect", "true", detail::pass_word(perfect), perfect);
    auto const inv = abelian_invariants(G, derived);
    for (std::uint64_t n = 2; n <= n_max; ++n)
      r.check_equal("I_" + tag + "(" + std::to_string(n) + ") = 0", 0,
                    detail::cyclic_count(inv, n));

    factors[top] = *B0[top];
    PermGroup const H = direct_product(factors, guards);
    StageWitness w;
    w.stage = t;
    w.rank = stages[top] * (static_cast<std::uint64_t>(s_order) - 1);
    w.bound = detail::projective_count(p, w.rank);
    w.index = index_of(G, H);
    w.count = count_cyclic_quotients(H, p).value;
    r.check_equal("(" + tag + " : H) = |S|", s_order, w.index);
    r.check("I_H(p) >= (p^k - 1)/(p - 1) with k = " + std::to_string(w.rank),
            ">= " + to_string(w.bound), to_string(w.count), w.count >= w.bound);
    if (!out.witnesses.empty()) {
      auto const &prev = out.witnesses.back();
      bool const grows = w.rank > prev.rank ? w.bound > prev.bound : w.bound >= prev.bound;
      r.check("witness bound grows with the stage rank",
              w.rank > prev.rank ? "> " + to_string(prev.bound) : ">= " + to_string(prev.bound),
              to_string(w.bound), grows);
    }
    out.witnesses.push_back(std::move(w));
  }
  r.elapsed_us = clock.elapsed_us();
  return out;
}

/// A finite product of perfect groups is perfect with no cyclic quotients.
inline CheckReport check_perfect_product(std::vector<NamedGroup> const &factors,
                                         std::uint64_t n_max, Guards const &guards = {})
{
  detail::Stopwatch clock;
  CheckReport r;
  r.check_id = "perfect-product";
  std::string joined;
  for (std::size_t i = 0; i < factors.size(); ++i)
    joined += (i ? ";" : "") + factors[i].label;
  r.parameter("factors", joined);
  r.parameter("n_max", std::to_string(n_max));
  BigInt order = 1;
  std::vector<PermGroup> groups;
  for (auto const &f : factors) {
    if (!is_perfect(f.group))
      throw DomainError("factor " + f.label + " is not perfect");
    order *= f.group.order();
    groups.push_back(f.group);
  }
  guards.check_order(order, "product");
  if (groups.empty()) {
    r.check("empty product is perfect", "true", "true", true);
    r.elapsed_us = clock.elapsed_us();
    return r;
  }
  PermGroup const G = direct_product(groups, guards);
  PermGroup const derived = derived_subgroup(G);
  bool const perfect = derived.order() == G.order();
  r.check("product is perfect", "true", detail::pass_word(perfect), perfect);
  auto const inv = abelian_invariants(G, derived);
  for (std::uint64_t n = 2; n <= n_max; ++n)
    r.check_equal("I_G(" + std::to_string(n) + ") = 0", 0, detail::cyclic_count(inv, n));
  r.elapsed_us = clock.elapsed_us();
  return r;
}

/// Pseudo-random series whose residue classes are all covered by `reps`:
/// c t^v + higher terms with c = q^n / b for a random representative b.
inline std::vector<LaurentSeries> sample_series(std::uint64_t n, std::vector<Rational> const &reps,
                                                std::size_t count, std::uint64_t seed,
                                                std::size_t precision)
{
  if (reps.empty())
    throw DomainError("representative set is empty");
  std::mt19937_64 rng(seed);
  auto pick = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
  std::vector<LaurentSeries> out;
  for (std::size_t s = 0; s < count; ++s) {
    Rational const &b = reps[static_cast<std::size_t>(pick(0, static_cast<long>(reps.size()) - 1))];
    Rational q(pick(1, 12), pick(1, 12));
    if (n % 2 == 1 && pick(0, 1) == 1)
      q = -q;
    Rational c = 1;
    for (std::uint64_t e = 0; e < n; ++e)
      c *= q;
    std::int64_t const v = pick(-12, 12);
    std::map<std::int64_t, Rational> terms{{v, c / b}};
    for (int extra = static_cast<int>(pick(0, 4)); extra > 0; --extra)
      terms[v + pick(1, static_cast<long>(precision) + 4)] = Rational(pick(-20, 20), pick(1, 9));
    out.push_back(LaurentSeries::from_terms(terms, precision));
  }
  return out;
}

/// Power-class decomposition of Q((t))^x as a check report.
inline CheckReport check_henselian_classes(std::uint64_t n, std::vector<Rational> const &reps,
                                           std::vector<LaurentSeries> const &samples)
{
  detail::Stopwatch clock;
  CheckReport r;
  r.check_id = "henselian-classes";
  r.parameter("n", std::to_string(n));
  std::string joined;
  for (std::size_t i = 0; i < reps.size(); ++i)
    joined += (i ? "," : "") + to_string(reps[i]);
  r.parameter("reps", joined);
  r.parameter("samples", std::to_string(samples.size()));
  auto const rep = verify_power_class_decomposition(n, reps, samples);
  r.parameter("precision", std::to_string(rep.precision));
  r.check("the " + std::to_string(rep.classes) + " representatives t^i b are pairwise inequivalent",
          "0 equivalent pairs of " + std::to_string(rep.pairs_checked),
          std::to_string(rep.equivalent_pairs) + " equivalent pairs of " +
              std::to_string(rep.pairs_checked),
          rep.distinct);
  std::size_t reduced = 0;
  for (auto const &s : rep.samples)
    reduced += s.pass ? 1 : 0;
  r.check("every sample reduces to exactly one representative with a verified certificate",
          std::to_string(samples.size()) + " of " + std::to_string(samples.size()),
          std::to_string(reduced) + " of " + std::to_string(samples.size()),
          rep.reductions_unique);
  for (std::size_t i = 0; i < rep.samples.size(); ++i) {
    auto const &s = rep.samples[i];
    if (s.pass)
      continue;
    r.check("sample " + std::to_string(i) + " (" + s.sample.to_string() + ") reduces uniquely",
            "1 matching representative",
            s.error.empty() ? std::to_string(s.matching_candidates) + " matching" : s.error, false);
  }
  r.elapsed_us = clock.elapsed_us();
  return r;
}

} // namespace gw
