#include "fixtures.hpp"

#include <cfprob/checker.hpp>

#include <gtest/gtest.h>

using namespace cfprob;
using namespace cfprob::testing;

namespace {

const CpmModel& model()
{
    static const CpmModel m = fig1();
    return m;
}

constexpr double kEps = 1e-12;

}  // namespace

TEST(Sequence, RankGrouping)
{
    const AdmissibleSequence seq = build_sequence(model());
    ASSERT_EQ(seq.size(), 3u);
    EXPECT_TRUE(seq.is_admissible());

    EXPECT_EQ(seq.entries()[0].rank, 1.0);
    EXPECT_EQ(seq.entries()[0].dist.support(), worlds({"~A B C", "~A B ~C"}));
    EXPECT_DOUBLE_EQ(seq.entries()[0].dist.mass(w("~A B C")), 0.5);
    EXPECT_DOUBLE_EQ(seq.entries()[0].dist.mass(w("~A B ~C")), 0.3);

    EXPECT_EQ(seq.entries()[1].rank, 0.6);
    EXPECT_EQ(seq.entries()[1].dist.support(), worlds({"A B C", "A B ~C"}));
    EXPECT_DOUBLE_EQ(seq.entries()[1].dist.mass(w("A B C")), 0.08);

    EXPECT_EQ(seq.entries()[2].rank, 0.4);
    EXPECT_EQ(seq.entries()[2].dist.support(), worlds({"A ~B C", "~A ~B C"}));
    EXPECT_DOUBLE_EQ(seq.entries()[2].dist.mass(w("~A ~B C")), 0.03);
}

TEST(Sequence, SingleRank)
{
    const CpmModel m(PossibilityModel(abc(), std::vector<double>(8, 1.0)), std::vector<double>(8, 0.25));
    EXPECT_EQ(build_sequence(m).size(), 1u);
    EXPECT_EQ(build_family(m).entries().size(), 1u);
    EXPECT_EQ(build_family(m).entries()[0].extension, abc().all_worlds());
}

TEST(Sequence, OverlappingSupportsAreNotAdmissible)
{
    const WorldDistribution d(8, {{w("A B C"), 1.0}});
    EXPECT_FALSE(AdmissibleSequence(std::vector<RankedDistribution>{{1.0, d}, {0.5, d}}).is_admissible());
    EXPECT_FALSE(AdmissibleSequence(std::vector<RankedDistribution>{}).is_admissible());
}

TEST(Sequence, MostPossibleFunction)
{
    const AdmissibleSequence seq = build_sequence(model());
    EXPECT_EQ(most_possible_function(seq, f("A"), abc()), 0.6);
    EXPECT_EQ(most_possible_function(seq, f("true"), abc()), 1.0);
    EXPECT_FALSE(most_possible_function(seq, f("~B & ~C"), abc()).has_value());
}

TEST(Sequence, Revision)
{
    const AdmissibleSequence seq = build_sequence(model());
    EXPECT_NEAR(*revise_via_sequence(seq, f("A"), f("C"), abc()), 2.0 / 3.0, kEps);
    EXPECT_NEAR(*revise_via_sequence(seq, f("true"), f("C"), abc()), 0.625, kEps);
    EXPECT_FALSE(revise_via_sequence(seq, f("~B & ~C"), f("A"), abc()).has_value());
}

TEST(Family, Sentences)
{
    const CharacterizingFamily fam = build_family(model());
    ASSERT_EQ(fam.entries().size(), 3u);
    EXPECT_TRUE(fam.is_admissible());
    EXPECT_EQ(fam.entries()[0].extension, models(f("~A & B"), abc()));
    EXPECT_EQ(fam.entries()[1].extension, models(f("A & B"), abc()));
    EXPECT_EQ(fam.entries()[2].extension, models(f("~B & C"), abc()));
    EXPECT_TRUE(entails(fam.entries()[0].extension, ~fam.entries()[1].alpha));
    EXPECT_EQ(fam.single_dist().support(), model().base().possible_worlds());
}

TEST(Family, AlphaFor)
{
    const CharacterizingFamily fam = build_family(model());
    ASSERT_NE(alpha_for(fam, f("A")), nullptr);
    EXPECT_EQ(alpha_for(fam, f("A"))->rank, 0.6);
    EXPECT_EQ(alpha_for(fam, f("C"))->rank, 1.0);
    EXPECT_EQ(alpha_for(fam, f("~B & ~C")), nullptr);
}

TEST(Family, Revision)
{
    const CharacterizingFamily fam = build_family(model());
    EXPECT_NEAR(*revise_via_single(fam, f("A"), f("C")), 2.0 / 3.0, kEps);
    EXPECT_NEAR(*revise_via_single(fam, f("true"), f("C")), 0.625, kEps);
    EXPECT_FALSE(revise_via_single(fam, f("false"), f("C")).has_value());
}

TEST(Family, SingleDistributionNeedsAlphaConditioning)
{
    // B is fully believed, yet the raw single distribution gives it less
    // than 1; conditioning on the top sentence restores certainty.
    const CharacterizingFamily fam = build_family(model());
    const WorldSet b = models(f("B"), abc());
    EXPECT_LT(fam.single_dist().probability(b), 1.0);
    EXPECT_NEAR(*revise_via_single(fam, f("true"), f("B")), 1.0, kEps);
}

class ThreeWayAgreement : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(ThreeWayAgreement, RandomModels)
{
    const CpmModel m = battery_model(GetParam());
    const FormulaPool pool = formula_pool(m.vocab(), 2, GetParam());
    const AdmissibleSequence seq = build_sequence(m);
    const CharacterizingFamily fam = build_family(m);
    ASSERT_TRUE(seq.is_admissible());
    ASSERT_TRUE(fam.is_admissible());
    for (const auto& a : pool.entries()) {
        const bool possible = pi_measure(m.base(), a.extension) > 0.0;
        for (const auto& b : pool.entries()) {
            const auto direct = counterfactual_prob(m, b.extension, a.extension);
            const auto s = revise_via_sequence(seq, a.extension, b.extension);
            const auto one = revise_via_single(fam, a.extension, b.extension);
            ASSERT_EQ(direct.has_value(), possible);
            ASSERT_EQ(s.has_value(), possible);
            ASSERT_EQ(one.has_value(), possible);
            if (possible) {
                ASSERT_NEAR(*direct, *s, 1e-9) << a.text << " / " << b.text;
                ASSERT_NEAR(*direct, *one, 1e-9) << a.text << " / " << b.text;
            }
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Seeds, ThreeWayAgreement, ::testing::Range<std::uint64_t>(0, 8));
