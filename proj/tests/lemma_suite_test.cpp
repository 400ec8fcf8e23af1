#include <gtest/gtest.h>

#include "gw/constructions.hpp"
#include "gw/group_expr.hpp"
#include "gw/lemma_suite.hpp"
#include "support/oracles.hpp"

using namespace gw;

namespace {

NamedGroup named(std::string const &text) { return {text, eval_expr(text)}; }

std::string failures(CheckReport const &r)
{
  std::string out;
  for (auto const &a : r.assertions) {
    if (!a.pass)
      out += a.description + ": expected " + a.expected + ", actual " + a.actual + "\n";
  }
  return out;
}

} // namespace

TEST(RankFormula, Examples)
{
  for (auto [text, p] : std::vector<std::pair<std::string, std::uint64_t>>{
           {"prod(C(2),C(2))", 2}, {"A(5)", 2}, {"S(4)", 2}, {"E(3,3)", 3}, {"C(10)", 5}}) {
    auto r = check_rank_formula(named(text), p);
    EXPECT_TRUE(r.overall()) << text << "\n" << failures(r);
    EXPECT_EQ(r.check_id, "rank-formula");
  }
  auto r = check_rank_formula(named("prod(C(2),C(2))"), 2);
  ASSERT_EQ(r.assertions.size(), 1u);
  EXPECT_EQ(r.assertions[0].actual, "3");
}

TEST(RankFormula, GuardAndDomain)
{
  Guards g;
  g.oracle_bound = 10;
  EXPECT_THROW(check_rank_formula(named("S(4)"), 2, g), GuardError);
  EXPECT_THROW(check_rank_formula(named("S(4)"), 6), DomainError);
}

TEST(PrimeReduction, Examples)
{
  auto v = check_prime_reduction_bound(named("prod(C(2),C(2))"), 2);
  EXPECT_TRUE(v.overall());
  EXPECT_EQ(v.assertions[0].actual, "3");
  EXPECT_EQ(v.assertions[0].expected, "<= 2^8");
  auto c6 = check_prime_reduction_bound(named("C(6)"), 6);
  EXPECT_TRUE(c6.overall());
  EXPECT_EQ(c6.assertions[0].expected, "<= 2^36");
  auto a5 = check_prime_reduction_bound(named("A(5)"), 12);
  EXPECT_TRUE(a5.overall());
  EXPECT_EQ(a5.assertions[0].expected, "<= 2^1");
  auto big = check_prime_reduction_bound(named("E(2,8)"), 12);
  EXPECT_TRUE(big.overall());
}

TEST(SimplePower, Examples)
{
  auto sq = check_simple_power(named("A(5)"), 2, 6, 6);
  EXPECT_TRUE(sq.overall()) << failures(sq);
  bool saw_structure = false;
  for (auto const &a : sq.assertions) {
    if (a.description.find("sub-products") != std::string::npos) {
      saw_structure = true;
      EXPECT_EQ(a.actual, "4 normal subgroups, 4 sub-products");
    }
  }
  EXPECT_TRUE(saw_structure);
  EXPECT_TRUE(check_simple_power(named("A(5)"), 1, 2, 1).overall());
  // The 2^(m!) bound holds for m = 5 even though A4 contributes I(3) = 1.
  auto five = check_simple_power(named("A(5)"), 1, 6, 5);
  EXPECT_TRUE(five.overall()) << failures(five);
}

TEST(SimplePower, RejectsNonSimple)
{
  EXPECT_THROW(check_simple_power(named("A(4)"), 1, 3, 2), DomainError);
  EXPECT_THROW(check_simple_power(named("C(5)"), 1, 3, 2), DomainError);
}

TEST(PerfectExtension, AFiveOverTwo)
{
  auto ext = build_perfect_extension(named("A(5)"), 2, 1);
  EXPECT_TRUE(ext.report.overall()) << failures(ext.report);
  EXPECT_EQ(ext.P.order(), BigInt("34587645138205409280"));
  EXPECT_EQ(ext.P.order(), ipow(2, 59) * 60);
  EXPECT_EQ(p_rank(ext.B0, 2), 59u);
}

TEST(PerfectExtension, SmallestSimpleOverThree)
{
  auto ext = build_perfect_extension(named("A(5)"), 3, 1);
  EXPECT_TRUE(ext.report.overall()) << failures(ext.report);
  EXPECT_EQ(ext.P.order(), ipow(3, 59) * 60);
}

TEST(PerfectExtension, RightOrderAloneIsNotEnough)
{
  // C2^59 x A5 has the order of the extension but is not perfect.
  auto A5 = alternating_group(5);
  std::vector<PermGroup> parts;
  for (int i = 0; i < 59; ++i)
    parts.push_back(cyclic_group(2));
  parts.push_back(A5);
  auto fake = direct_product(parts);
  ASSERT_EQ(fake.order(), ipow(2, 59) * 60);
  std::vector<PermGroup> base_parts(parts.begin(), parts.end() - 1);
  base_parts.push_back(PermGroup::trivial(5));
  auto fake_base = direct_product(base_parts);
  auto r = assess_perfect_extension(fake, fake_base, 60, 2, 1);
  EXPECT_FALSE(r.overall());
  EXPECT_FALSE(r.assertions[0].pass);
  EXPECT_TRUE(r.assertions[1].pass);
}

TEST(StagewiseGap, OneAndTwoStages)
{
  auto one = check_stagewise_gap(named("A(5)"), 2, {1});
  EXPECT_TRUE(one.report.overall()) << failures(one.report);
  ASSERT_EQ(one.witnesses.size(), 1u);
  EXPECT_EQ(one.witnesses[0].bound, BigInt("576460752303423487"));
  EXPECT_EQ(one.witnesses[0].index, 60);

  auto none = check_stagewise_gap(named("A(5)"), 2, {});
  EXPECT_TRUE(none.report.overall());
  EXPECT_TRUE(none.witnesses.empty());
}

TEST(StagewiseGap, NonIncreasingStagesDoNotGrow)
{
  auto r = check_stagewise_gap(named("A(5)"), 2, {1, 1});
  EXPECT_TRUE(r.report.overall()) << failures(r.report);
  ASSERT_EQ(r.witnesses.size(), 2u);
  EXPECT_EQ(r.witnesses[0].bound, r.witnesses[1].bound);
}

TEST(PerfectProduct, Examples)
{
  EXPECT_TRUE(check_perfect_product({named("A(5)"), named("A(5)")}, 6).overall());
  EXPECT_TRUE(check_perfect_product({named("A(5)"), named("derived(wr(E(2,1),A(5)))")}, 6).overall());
  EXPECT_TRUE(check_perfect_product({}, 6).overall());
  try {
    check_perfect_product({named("A(5)"), named("S(3)")}, 6);
    FAIL();
  } catch (DomainError const &e) {
    EXPECT_NE(std::string(e.what()).find("S(3)"), std::string::npos);
  }
}

TEST(HenselianClasses, SampledDecomposition)
{
  std::vector<Rational> reps{1, 2, 3, 5, 6, 7, 10, 11, 13, 14};
  auto samples = sample_series(2, reps, 30, 7, 16);
  EXPECT_EQ(samples, sample_series(2, reps, 30, 7, 16));
  auto r = check_henselian_classes(2, reps, samples);
  EXPECT_TRUE(r.overall()) << failures(r);
  auto bad = check_henselian_classes(2, {1, 2}, {parse_series("3*t", 8)});
  EXPECT_FALSE(bad.overall());
}

TEST(CheckReport, OverallIsConjunction)
{
  CheckReport r;
  EXPECT_TRUE(r.overall());
  r.check("a", "1", "1", true);
  EXPECT_TRUE(r.overall());
  r.check_equal("b", 2, 3);
  EXPECT_FALSE(r.overall());
  EXPECT_EQ(r.assertions[1].expected, "2");
  EXPECT_EQ(r.assertions[1].actual, "3");
}
