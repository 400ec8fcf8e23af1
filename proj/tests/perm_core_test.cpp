#include <gtest/gtest.h>

#include <random>

#include "gw/constructions.hpp"
#include "gw/error.hpp"
#include "gw/group_expr.hpp"
#include "gw/perm.hpp"
#include "gw/perm_group.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace gw;

namespace {

Permutation cyc(std::size_t n, std::string_view text) { return Permutation::from_cycles(n, text); }

} // namespace

TEST(Permutation, ComposesLeftToRight)
{
  auto a = cyc(3, "(0 1)");
  auto b = cyc(3, "(1 2)");
  // x^(ab) = (x^a)^b
  EXPECT_EQ((a * b)[0], 2u);
  EXPECT_EQ((a * b).to_cycle_string(), "(0 2 1)");
  EXPECT_EQ((b * a).to_cycle_string(), "(0 1 2)");
}

TEST(Permutation, InverseOrderAndPowers)
{
  auto g = cyc(7, "(0 1 2)(3 4)");
  EXPECT_TRUE((g * g.inverse()).is_identity());
  EXPECT_EQ(g.order(), 6);
  EXPECT_EQ(g.pow(6), Permutation(7));
  EXPECT_EQ(g.pow(-1), g.inverse());
  EXPECT_EQ(g.pow(5), g.inverse());
  EXPECT_EQ(g.smallest_moved_point(), 0u);
  EXPECT_FALSE(Permutation(4).smallest_moved_point());
}

TEST(Permutation, ConjugationIsGInverseXG)
{
  auto x = cyc(4, "(0 1)");
  auto g = cyc(4, "(1 2 3)");
  EXPECT_EQ(x.conjugate(g), g.inverse() * x * g);
  EXPECT_EQ(x.conjugate(g).to_cycle_string(), "(0 2)");
}

TEST(Permutation, CycleNotationRoundTrips)
{
  EXPECT_EQ(cyc(5, "()").to_cycle_string(), "()");
  EXPECT_EQ(cyc(5, "(3 1)(0 4)").to_cycle_string(), "(0 4)(1 3)");
  EXPECT_EQ(cyc(5, "(0,1,2)").to_cycle_string(), "(0 1 2)");
}

TEST(Permutation, RejectsInvalidInput)
{
  EXPECT_THROW(Permutation::from_images({0, 0, 1}), DomainError);
  try {
    Permutation::from_images({1, 2, 1});
    FAIL();
  } catch (DomainError const &e) {
    EXPECT_NE(std::string(e.what()).find('1'), std::string::npos);
  }
  EXPECT_THROW(Permutation::from_images({0, 3}), DomainError);
  EXPECT_THROW(cyc(3, "(0 5)"), DomainError);
  EXPECT_THROW(cyc(3, "(0 1 0)"), DomainError);
}

TEST(StabilizerChain, OrdersMatchClosureOracle)
{
  for (auto const &text : corpus::small_groups()) {
    auto G = eval_expr(text);
    auto elements = oracle::closure(G.degree(), oracle::to_perms(G.generators()));
    EXPECT_EQ(G.order(), elements.size()) << text;
    auto listed = G.elements();
    EXPECT_EQ(listed.size(), elements.size()) << text;
  }
}

TEST(StabilizerChain, MembershipAgreesWithClosure)
{
  auto S4 = symmetric_group(4);
  auto A4 = alternating_group(4);
  auto members = oracle::closure(4, oracle::to_perms(A4.generators()));
  for (auto const &g : S4.elements()) {
    bool in = std::binary_search(members.begin(), members.end(), oracle::images(g));
    EXPECT_EQ(A4.contains(g), in) << g.to_cycle_string();
  }
  EXPECT_THROW(A4.contains(Permutation(5)), DomainError);
}

TEST(StabilizerChain, KnownOrdersAndBase)
{
  EXPECT_EQ(symmetric_group(6).order(), 720);
  EXPECT_EQ(alternating_group(7).order(), 2520);
  EXPECT_EQ(symmetric_group(12).order(), BigInt("479001600"));
  auto G = symmetric_group(5);
  BigInt product = 1;
  for (auto len : G.orbit_lengths())
    product *= len;
  EXPECT_EQ(product, G.order());
  EXPECT_EQ(G.base().front(), 0u);
  EXPECT_TRUE(PermGroup::trivial(3).is_trivial());
}

TEST(StabilizerChain, ChainIndependentOfGeneratorOrder)
{
  std::mt19937_64 rng(7);
  auto S = symmetric_group(6);
  auto elems = S.elements();
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Permutation> gens;
    for (int k = 0; k < 3; ++k)
      gens.push_back(elems[rng() % elems.size()]);
    auto G1 = PermGroup::build(6, gens);
    std::reverse(gens.begin(), gens.end());
    auto G2 = PermGroup::build(6, gens);
    EXPECT_EQ(G1.order(), G2.order());
    EXPECT_EQ(G1.order(), oracle::closure(6, oracle::to_perms(gens)).size());
  }
}

TEST(Subgroups, NormalClosureAndDerived)
{
  auto S4 = symmetric_group(4);
  auto N = normal_closure(S4, std::vector<Permutation>{cyc(4, "(0 1)(2 3)")});
  EXPECT_EQ(N.order(), 4);
  EXPECT_TRUE(is_normal(S4, N));
  EXPECT_EQ(derived_subgroup(S4).order(), 12);
  EXPECT_EQ(derived_subgroup(alternating_group(4)).order(), 4);
  EXPECT_TRUE(is_perfect(alternating_group(5)));
  EXPECT_FALSE(is_perfect(symmetric_group(5)));
  EXPECT_EQ(index_of(S4, alternating_group(4)), 2);
  EXPECT_FALSE(is_normal(S4, PermGroup::build(4, {cyc(4, "(0 1)")})));
}

TEST(Subgroups, CommutatorDefinition)
{
  auto a = cyc(4, "(0 1 2)");
  auto b = cyc(4, "(1 2 3)");
  EXPECT_EQ(commutator(a, b), a.inverse() * b.inverse() * a * b);
}

TEST(Subgroups, OrbitsAndRegularity)
{
  EXPECT_TRUE(is_regular(cyclic_group(7)));
  EXPECT_FALSE(is_regular(symmetric_group(3)));
  auto G = PermGroup::build(5, {cyc(5, "(0 1)(2 3)")});
  EXPECT_EQ(orbit_of(G, 2).size(), 2u);
  EXPECT_EQ(orbit_of(G, 4).size(), 1u);
}
