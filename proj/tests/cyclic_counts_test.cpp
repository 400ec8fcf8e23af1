#include <gtest/gtest.h>

#include "gw/cyclic_counts.hpp"
#include "gw/group_expr.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace gw;

TEST(CyclicCounts, FormulaExamples)
{
  EXPECT_EQ(count_cyclic_quotients(eval_expr("prod(C(2),C(2))"), 2).value, 3);
  EXPECT_EQ(count_cyclic_quotients(eval_expr("C(6)"), 6).value, 1);
  EXPECT_EQ(count_cyclic_quotients(eval_expr("C(6)"), 4).value, 0);
  EXPECT_EQ(count_cyclic_quotients(eval_expr("A(5)"), 2).value, 0);
  EXPECT_EQ(count_cyclic_quotients(eval_expr("prod(C(4),C(4))"), 4).value, 6);
  EXPECT_EQ(count_cyclic_quotients(eval_expr("S(4)"), 1).value, 1);
  EXPECT_EQ(count_cyclic_quotients(eval_expr("S(4)"), 2).mode, CountMode::formula);
  EXPECT_THROW(count_cyclic_quotients(eval_expr("S(4)"), 0), DomainError);
}

TEST(CyclicCounts, FormulaAndBruteForceMatchHomomorphismOracle)
{
  for (auto const &text : corpus::small_groups()) {
    auto G = eval_expr(text);
    oracle::HomCounter homs(G.degree(), oracle::to_perms(G.generators()));
    for (std::uint64_t n = 1; n <= 12; ++n) {
      BigInt const expected = homs.cyclic_quotients(n);
      EXPECT_EQ(count_cyclic_quotients(G, n).value, expected) << text << " n=" << n;
      EXPECT_EQ(brute_force_cyclic_quotients(G, n).value, expected) << text << " n=" << n;
    }
  }
}

TEST(NormalSubgroups, MatchElementSetOracle)
{
  for (auto const *text : {"S(4)", "A(4)", "prod(C(2),C(4))", "gens(4;(0 1 2 3),(1 3))",
                           "wr(C(2),C(3))", "pow(A(5),2)", "pow(S(3),2)"}) {
    auto G = eval_expr(text);
    auto elements = oracle::closure(G.degree(), oracle::to_perms(G.generators()));
    auto expected = oracle::normal_subgroups(G.degree(), elements);
    NormalSubgroupLattice lattice(G);
    EXPECT_EQ(lattice.size(), expected.size()) << text;
    std::multiset<std::size_t> orders;
    for (auto const &N : expected)
      orders.insert(N.size());
    auto got = lattice.orders();
    EXPECT_EQ(std::multiset<std::size_t>(got.begin(), got.end()), orders) << text;
  }
}

TEST(NormalSubgroups, OracleBoundIsEnforced)
{
  Guards g;
  g.oracle_bound = 100;
  try {
    brute_force_cyclic_quotients(eval_expr("S(5)"), 2, g);
    FAIL();
  } catch (GuardError const &e) {
    EXPECT_EQ(e.guard(), "oracle-bound");
  }
}

namespace {

std::set<std::vector<oracle::Perm>> as_element_sets(std::vector<PermGroup> const &subs)
{
  std::set<std::vector<oracle::Perm>> out;
  for (auto const &H : subs)
    out.insert(oracle::closure(H.degree(), oracle::to_perms(H.generators())));
  return out;
}

} // namespace

TEST(Subgroups, FullLatticeOfA5)
{
  auto A5 = alternating_group(5);
  auto all = subgroups_up_to_index(A5, 60, {}, SubgroupSearch::full_lattice);
  EXPECT_EQ(all.size(), 59u);
  auto elements = oracle::closure(5, oracle::to_perms(A5.generators()));
  EXPECT_EQ(as_element_sets(all), oracle::two_generated_subgroups(5, elements));
  for (std::size_t i = 1; i < all.size(); ++i)
    EXPECT_GE(all[i - 1].order(), all[i].order());
}

TEST(Subgroups, LowIndexAgreesWithFullLattice)
{
  for (auto const *text : {"A(5)", "S(4)", "S(3)", "prod(C(2),C(2))", "gens(4;(0 1 2 3),(1 3))",
                           "A(4)", "prod(S(3),C(2))"}) {
    auto G = eval_expr(text);
    for (std::uint64_t m : {1, 2, 3, 4, 5, 6, 8, 10, 12}) {
      auto low = subgroups_up_to_index(G, m, {}, SubgroupSearch::low_index);
      auto full = subgroups_up_to_index(G, m, {}, SubgroupSearch::full_lattice);
      EXPECT_EQ(as_element_sets(low), as_element_sets(full)) << text << " m=" << m;
      for (auto const &H : low)
        EXPECT_LE(G.order() / H.order(), m);
    }
  }
  auto A5 = alternating_group(5);
  EXPECT_EQ(subgroups_up_to_index(A5, 5, {}, SubgroupSearch::low_index).size(), 6u);
  EXPECT_EQ(subgroups_up_to_index(A5, 6, {}, SubgroupSearch::low_index).size(), 12u);
  EXPECT_EQ(subgroups_up_to_index(A5, 10, {}, SubgroupSearch::low_index).size(), 22u);
  EXPECT_EQ(subgroups_up_to_index(eval_expr("pow(A(5),2)"), 6).size(), 23u);
  EXPECT_EQ(subgroups_up_to_index(eval_expr("S(3)"), 2).size(), 2u);
}

TEST(Subgroups, GuardsNameTheLimit)
{
  Guards g;
  g.low_index_bound = 4;
  g.oracle_bound = 10;
  try {
    subgroups_up_to_index(alternating_group(5), 5, g);
    FAIL();
  } catch (GuardError const &e) {
    EXPECT_EQ(e.guard(), "oracle-bound");
  }
  try {
    subgroups_up_to_index(alternating_group(5), 5, g, SubgroupSearch::low_index);
    FAIL();
  } catch (GuardError const &e) {
    EXPECT_EQ(e.guard(), "low-index-bound");
  }
}

TEST(UniformCount, ExhaustiveA5)
{
  auto A5 = alternating_group(5);
  auto r = uniform_count(A5, 2, 60, {}, SubgroupSearch::full_lattice);
  EXPECT_EQ(r.value, 3);
  EXPECT_EQ(r.mode, CountMode::exhaustive_subgroups);
  EXPECT_EQ(r.witness_index, 15);
  EXPECT_EQ(uniform_count(A5, 2, 1).value, 0);
}

TEST(UniformCount, A5UpToIndexFive)
{
  // Index <= 5 gives A5 itself and five copies of A4; A4 has a quotient C3.
  std::vector<BigInt> got;
  for (std::uint64_t n = 2; n <= 6; ++n)
    got.push_back(uniform_count(alternating_group(5), n, 5, {}, SubgroupSearch::low_index).value);
  EXPECT_EQ(got, (std::vector<BigInt>{0, 1, 0, 0, 0}));
}

TEST(UniformCount, WitnessLowerBound)
{
  auto r = uniform_count(eval_expr("wr(C(2),C(3))"), 2, 3, parse_group_expr("base(wr(C(2),C(3)))"));
  EXPECT_EQ(r.mode, CountMode::witness_lower_bound);
  EXPECT_EQ(r.witness_index, 3);
  EXPECT_EQ(r.value, 7);
  EXPECT_THROW(uniform_count(eval_expr("wr(C(2),C(3))"), 2, 2,
                             parse_group_expr("base(wr(C(2),C(3)))")),
               DomainError);
}
