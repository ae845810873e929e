#include "fixtures.hpp"

#include <cfprob/checker.hpp>

#include <gtest/gtest.h>

using namespace cfprob;
using namespace cfprob::testing;

namespace {

std::size_t parse_error_line(const std::string& text)
{
    try {
        (void)parse_model(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    ADD_FAILURE() << "no parse error";
    return 0;
}

}  // namespace

TEST(ModelFile, LoadsShippedFixture)
{
    const LoadedModel m = load_model(std::string(CFPROB_MODELS_DIR) + "/fig1.cpm");
    ASSERT_TRUE(m.has_weights());
    EXPECT_EQ(m.cpm().weights(), fig1().weights());
    EXPECT_EQ(m.base().degrees(), fig1().base().degrees());
}

TEST(ModelFile, PossibilityOnly)
{
    const LoadedModel m = parse_model("atoms P Q\nworld P Q pi=1\nworld ~P Q pi=0.5\n");
    EXPECT_FALSE(m.has_weights());
    EXPECT_THROW(m.cpm(), ValidationError);
    EXPECT_EQ(m.base().possible_worlds().size(), 2u);
    EXPECT_EQ(m.vocab().atoms(), (std::vector<std::string>{"P", "Q"}));
}

TEST(ModelFile, SyntaxErrors)
{
    EXPECT_EQ(parse_error_line("world A pi=1\n"), 1u);
    EXPECT_EQ(parse_error_line("atoms A\n\nworld A pi=abc\n"), 3u);
    EXPECT_EQ(parse_error_line("atoms A\nworld A\n"), 2u);
    EXPECT_EQ(parse_error_line("atoms A\nworld A pi=1 pi=1\n"), 2u);
    EXPECT_EQ(parse_error_line("atoms A\nworlds A pi=1\n"), 2u);
    EXPECT_EQ(parse_error_line("atoms A B\nworld A pi=1\n"), 2u);
    EXPECT_EQ(parse_error_line("atoms A B\nworld A B C pi=1\n"), 2u);
    EXPECT_EQ(parse_error_line("atoms A A\n"), 1u);
    EXPECT_EQ(parse_error_line("# nothing\n"), 2u);
}

TEST(ModelFile, ValidationErrors)
{
    EXPECT_THROW(parse_model("atoms A\nworld A pi=1\nworld A pi=0.5\n"), ValidationError);
    EXPECT_THROW(parse_model("atoms A\nworld A pi=1.5\n"), ValidationError);
    EXPECT_THROW(parse_model("atoms A\nworld A pi=0.5\n"), ValidationError);
    EXPECT_THROW(parse_model("atoms A\nworld A pi=1 p=0\n"), ValidationError);
    EXPECT_THROW(parse_model("atoms A\nworld A pi=1 p=-2\n"), ValidationError);
    EXPECT_THROW(parse_model("atoms A\nworld A pi=1 p=1\nworld ~A pi=0 p=1\n"), ValidationError);
    EXPECT_THROW(parse_model("atoms A\nworld A pi=1 p=1\nworld ~A pi=0.5\n"), ValidationError);
}

TEST(ModelFile, AtomLimit)
{
    std::string text = "atoms";
    for (int i = 0; i < 21; ++i) text += " p" + std::to_string(i);
    EXPECT_THROW(parse_model(text + "\n"), VocabularyTooLarge);
}

TEST(ModelFile, DumpIsStable)
{
    const std::string dumped = dump_model(fig1());
    EXPECT_EQ(dumped,
              "atoms A B C\n"
              "world ~A B ~C pi=1 p=0.3\n"
              "world A B ~C pi=0.6 p=0.04\n"
              "world ~A ~B C pi=0.4 p=0.03\n"
              "world A ~B C pi=0.4 p=0.05\n"
              "world ~A B C pi=1 p=0.5\n"
              "world A B C pi=0.6 p=0.08\n"
              "# unlisted worlds have pi=0 (impossible)\n");
}

TEST(ModelFile, RoundTripsRandomModels)
{
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const CpmModel m = battery_model(seed);
        const LoadedModel back = parse_model(dump_model(m));
        ASSERT_TRUE(back.has_weights());
        ASSERT_EQ(back.cpm().weights(), m.weights());
        ASSERT_EQ(back.base().degrees(), m.base().degrees());
        ASSERT_EQ(dump_model(back), dump_model(m));
    }
    const LoadedModel plain = parse_model("atoms X\nworld X pi=1\nworld ~X pi=0.25\n");
    EXPECT_EQ(dump_model(parse_model(dump_model(plain))), dump_model(plain));
}
