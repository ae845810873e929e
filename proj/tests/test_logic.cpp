#include "fixtures.hpp"

#include <cfprob/checker.hpp>
#include <cfprob/logic.hpp>

#include <gtest/gtest.h>

using namespace cfprob;
using cfprob::testing::abc;
using cfprob::testing::f;
using cfprob::testing::w;
using cfprob::testing::worlds;

namespace {

Formula A() { return Formula::atom(0); }
Formula B() { return Formula::atom(1); }
Formula C() { return Formula::atom(2); }

std::size_t syntax_error_position(const std::string& text)
{
    try {
        (void)parse_formula(text, abc());
    } catch (const SyntaxError& e) {
        return e.position();
    }
    ADD_FAILURE() << "no syntax error for '" << text << "'";
    return 0;
}

}  // namespace

TEST(Parse, NegationBindsTighterThanConjunction)
{
    EXPECT_EQ(f("~A & B"), ~A() & B());
}

TEST(Parse, ImplicationIsRightAssociative)
{
    EXPECT_EQ(f("A -> B -> C"), Formula::implication(A(), Formula::implication(B(), C())));
}

TEST(Parse, PrecedenceLadder)
{
    // ~ > & > | > -> > <->
    EXPECT_EQ(f("A | B & C"), A() | (B() & C()));
    EXPECT_EQ(f("A & B | C"), (A() & B()) | C());
    EXPECT_EQ(f("A | B -> C"), Formula::implication(A() | B(), C()));
    EXPECT_EQ(f("A -> B <-> C"), Formula::biconditional(Formula::implication(A(), B()), C()));
    EXPECT_EQ(f("~(A & B)"), ~(A() & B()));
    EXPECT_EQ(f("A & B & C"), (A() & B()) & C());
}

TEST(Parse, UnicodeAliases)
{
    EXPECT_EQ(f("¬A ∧ B"), f("~A & B"));
    EXPECT_EQ(f("A ∨ B → C ↔ ⊤"), f("A | B -> C <-> true"));
    EXPECT_EQ(f("⊥"), Formula::bottom());
}

TEST(Parse, DoubleAmpersandIsRejectedAtSecondAmpersand)
{
    EXPECT_EQ(syntax_error_position("A && B"), 3u);
}

TEST(Parse, Errors)
{
    EXPECT_THROW(parse_formula("", abc()), SyntaxError);
    EXPECT_THROW(parse_formula("(A & B", abc()), SyntaxError);
    EXPECT_THROW(parse_formula("A B", abc()), SyntaxError);
    EXPECT_THROW(parse_formula("A $ B", abc()), SyntaxError);
    EXPECT_EQ(syntax_error_position("A & "), 4u);
    try {
        (void)parse_formula("A & D", abc());
        FAIL();
    } catch (const UnknownAtom& e) {
        EXPECT_EQ(e.name(), "D");
    }
}

TEST(Eval, TruthTable)
{
    EXPECT_TRUE(eval(w("~A B C"), f("~A & B")));
    EXPECT_TRUE(eval(w("A ~B ~C"), f("true")));
    EXPECT_FALSE(eval(w("A ~B ~C"), f("A -> B")));
    EXPECT_TRUE(eval(w("A B ~C"), f("A <-> B")));
    EXPECT_FALSE(eval(w("A B ~C"), f("false")));
}

TEST(Models, Examples)
{
    EXPECT_EQ(models(f("~A & B"), abc()), worlds({"~A B C", "~A B ~C"}));
    EXPECT_TRUE(models(f("false"), abc()).empty());
    EXPECT_EQ(models(f("A | ~A"), abc()).size(), 8u);
    EXPECT_EQ(models(f("true"), abc()), abc().all_worlds());
}

TEST(Vocabulary, Validation)
{
    std::vector<std::string> many;
    for (int i = 0; i < 21; ++i) many.push_back("p" + std::to_string(i));
    EXPECT_THROW(Vocabulary{many}, VocabularyTooLarge);
    EXPECT_NO_THROW(Vocabulary(many, 21));
    EXPECT_THROW(Vocabulary({"A", "A"}), InvalidVocabulary);
    EXPECT_THROW(Vocabulary({"1x"}), InvalidVocabulary);
    EXPECT_THROW(Vocabulary({"true"}), InvalidVocabulary);
    EXPECT_NO_THROW(Vocabulary({"rain", "wet_grass", "x2"}));
}

TEST(Entails, Examples)
{
    const WorldSet ws = worlds({"~A B C", "~A B ~C"});
    EXPECT_TRUE(entails(ws, f("B")));
    EXPECT_TRUE(entails(abc().no_worlds(), f("false")));
    EXPECT_FALSE(entails(ws, f("C")));
}

TEST(Dnf, Examples)
{
    const WorldSet ws = worlds({"~A B C", "~A B ~C"});
    const Formula d = dnf_of_worlds(ws, abc());
    EXPECT_EQ(models(d, abc()), ws);
    EXPECT_EQ(to_string(d, abc()), "~A & B & ~C | ~A & B & C");
    EXPECT_EQ(dnf_of_worlds(abc().no_worlds(), abc()), Formula::bottom());
    EXPECT_EQ(models(dnf_of_worlds(abc().all_worlds(), abc()), abc()), abc().all_worlds());
}

TEST(Dnf, RoundTripsEverySubsetOfThreeAtomWorlds)
{
    for (std::uint32_t mask = 0; mask < 256; ++mask) {
        WorldSet s = abc().no_worlds();
        for (std::uint32_t i = 0; i < 8; ++i)
            if ((mask >> i) & 1U) s.insert(World{i});
        ASSERT_EQ(models(dnf_of_worlds(s, abc()), abc()), s) << mask;
    }
}

TEST(WorldLiterals, ParseAndPrint)
{
    EXPECT_EQ(parse_world_literals("C ~A B", abc()), w("~A B C"));
    EXPECT_EQ(world_literals(w("A ~B C"), abc()), "A ~B C");
    EXPECT_THROW(parse_world_literals("A B", abc()), Error);
    EXPECT_THROW(parse_world_literals("A B C ~A", abc()), Error);
    EXPECT_THROW(parse_world_literals("A B D", abc()), UnknownAtom);
}

// Property checks over seeded random formulas.
class FormulaProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(FormulaProperties, SetAlgebraPrintParseAndEntailment)
{
    const Vocabulary vocab({"A", "B", "C", "D"});
    Rng rng(GetParam());
    const WorldSet all = vocab.all_worlds();
    for (int k = 0; k < 40; ++k) {
        const Formula x = detail::random_formula(rng, vocab.size(), 1 + rng.index(4));
        const Formula y = detail::random_formula(rng, vocab.size(), 1 + rng.index(4));
        const WorldSet mx = models(x, vocab);
        const WorldSet my = models(y, vocab);
        ASSERT_EQ(models(~x, vocab), all - mx);
        ASSERT_EQ(models(x & y, vocab), mx & my);
        ASSERT_EQ(models(x | y, vocab), mx | my);
        ASSERT_EQ(models(Formula::implication(x, y), vocab), (all - mx) | my);

        const std::string printed = to_string(Formula::biconditional(x, Formula::implication(y, x)), vocab);
        ASSERT_EQ(parse_formula(printed, vocab), Formula::biconditional(x, Formula::implication(y, x))) << printed;
        ASSERT_EQ(parse_formula(to_string(x, vocab), vocab), x);

        ASSERT_EQ(models(dnf_of_worlds(mx, vocab), vocab), mx);
        ASSERT_EQ(entails(mx, y), mx.is_subset_of(my));
        ASSERT_EQ(entails(mx, y), entails(mx, my));
    }
}

INSTANTIATE_TEST_SUITE_P(Seeds, FormulaProperties, ::testing::Values(1u, 2u, 3u, 17u, 99u));

TEST(Print, ParenthesizesOnlyWhereNeeded)
{
    EXPECT_EQ(to_string(A() & (B() & C()), abc()), "A & (B & C)");
    EXPECT_EQ(to_string((A() & B()) & C(), abc()), "A & B & C");
    EXPECT_EQ(to_string(Formula::implication(Formula::implication(A(), B()), C()), abc()), "(A -> B) -> C");
    EXPECT_EQ(to_string(~(A() | B()), abc()), "~(A | B)");
    EXPECT_EQ(to_string(~~A(), abc()), "~~A");
}
