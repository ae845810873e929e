#include "cli_app.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using cfprob::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result cli(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

const std::string kFig1 = std::string(CFPROB_MODELS_DIR) + "/fig1.cpm";

std::string temp_file(const std::string& name, const std::string& content)
{
    const std::string path = ::testing::TempDir() + name;
    std::ofstream(path) << content;
    return path;
}

}  // namespace

TEST(Cli, QueryPi)
{
    const auto r = cli({"query", "--model", kFig1, "--pi", "A"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "0.6\n");
}

TEST(Cli, QueryCounterfactual)
{
    const auto r = cli({"query", "--model", kFig1, "--cf", "C", "--given", "A"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "0.6666666667\n");
}

TEST(Cli, QueryUndefined)
{
    const auto r = cli({"query", "--model", kFig1, "--cf", "C", "--given", "~B & ~C"});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.out, "undefined\n");
    EXPECT_FALSE(r.err.empty());
    EXPECT_EQ(cli({"query", "--model", kFig1, "--cond", "C", "--given", "A"}).code, 1);
}

TEST(Cli, OtherQueries)
{
    EXPECT_EQ(cli({"query", "--model", kFig1, "--believes", "~A & B"}).out, "true\n");
    EXPECT_EQ(cli({"query", "--model", kFig1, "--status", "C"}).out, "indeterminate\n");
    EXPECT_EQ(cli({"query", "--model", kFig1, "--n", "B"}).out, "0.6\n");
    EXPECT_EQ(cli({"query", "--model", kFig1, "--p", "C"}).out, "0.625\n");
    EXPECT_EQ(cli({"query", "--model", kFig1, "--cond", "C", "--given", "B"}).out, "0.625\n");
    EXPECT_EQ(cli({"query", "--model", kFig1, "--conditional", "A => B"}).out, "true\n");
    EXPECT_EQ(cli({"query", "--model", kFig1, "--conditional", "A => C"}).out, "false\n");
}

TEST(Cli, QueryJson)
{
    const auto r = cli({"--json", "query", "--model", kFig1, "--cf", "C", "--given", "A"});
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["query"], "cf");
    EXPECT_NEAR(j["value"].get<double>(), 2.0 / 3.0, 1e-12);
    EXPECT_EQ(j["defined"], true);
}

TEST(Cli, UsageErrors)
{
    EXPECT_EQ(cli({"query", "--model", kFig1}).code, 2);
    EXPECT_EQ(cli({"query", "--model", kFig1, "--pi", "A", "--p", "A"}).code, 2);
    EXPECT_EQ(cli({"query", "--model", kFig1, "--pi", "A &&"}).code, 2);
    EXPECT_EQ(cli({"query", "--model", kFig1, "--cf", "C"}).code, 2);
    EXPECT_EQ(cli({"bogus"}).code, 2);
    EXPECT_EQ(cli({"query", "--model", "/nonexistent/model.cpm", "--pi", "A"}).code, 2);
    const std::string bad = temp_file("bad.cpm", "atoms A\nworld A pi=0.9\n");
    const auto r = cli({"worlds", "--model", bad});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("no world with pi=1"), std::string::npos);
}

TEST(Cli, Parse)
{
    const auto r = cli({"parse", "--atoms", "A B C", "~A & B"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "~A & B\n  ~A B ~C\n  ~A B C\n");
}

TEST(Cli, Worlds)
{
    const auto r = cli({"worlds", "--model", kFig1});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("~A B C  pi=1 p=0.5  *"), std::string::npos);
    EXPECT_NE(r.out.find("A ~B ~C  pi=0\n"), std::string::npos);
    EXPECT_NE(r.out.find("complete no"), std::string::npos);
}

TEST(Cli, Revise)
{
    const auto r = cli({"revise", "--model", kFig1, "--by", "A"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("A B ~C    0.3333333333\n"), std::string::npos);
    EXPECT_NE(r.out.find("A B C     0.6666666667\n"), std::string::npos);
    EXPECT_NE(r.out.find("K* A & B & ~C | A & B & C"), std::string::npos);

    const auto n = cli({"--json", "revise", "--model", kFig1, "--by", "A", "--natural"});
    ASSERT_EQ(n.code, 0);
    const auto j = nlohmann::json::parse(n.out);
    EXPECT_EQ(j["natural"]["pi"]["~A B C"], 0.5);
    EXPECT_EQ(j["natural"]["pi"]["A ~B C"], 0.2);

    EXPECT_EQ(cli({"revise", "--model", kFig1, "--by", "~B & ~C"}).code, 1);
    EXPECT_EQ(cli({"revise", "--model", kFig1, "--by", "A", "--natural", "--demotion", "1.5"}).code, 2);
}

TEST(Cli, Image)
{
    const auto r = cli({"image", "--model", kFig1, "--by", "A", "--policy", "centered"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("A B C     0.6666666667\n"), std::string::npos);
    EXPECT_NE(r.out.find("agrees with revision: yes"), std::string::npos);

    const std::string table = temp_file("table.sel", "select ~A B C | A -> A B C\nselect ~A B ~C | A -> A B ~C\n");
    const auto t = cli({"image", "--model", kFig1, "--by", "A", "--policy", "file", "--table", table});
    EXPECT_EQ(t.code, 0);
    EXPECT_NE(t.out.find("A B C     0.625\n"), std::string::npos);
    EXPECT_NE(t.out.find("A B ~C    0.375\n"), std::string::npos);

    EXPECT_EQ(cli({"image", "--model", kFig1, "--by", "false"}).code, 1);
    EXPECT_EQ(cli({"image", "--model", kFig1, "--by", "A", "--policy", "nearest"}).code, 2);
}

TEST(Cli, Simulate)
{
    const auto r = cli({"simulate", "--model", kFig1, "--by", "A", "--of", "C"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("direct    0.6666666667"), std::string::npos);
    EXPECT_NE(r.out.find("sequence  0.6666666667  (rank 0.6)"), std::string::npos);
    EXPECT_NE(r.out.find("single    0.6666666667"), std::string::npos);
    EXPECT_EQ(cli({"simulate", "--model", kFig1, "--by", "~B & ~C", "--of", "A"}).code, 1);
}

TEST(Cli, CheckAndGen)
{
    const auto r = cli({"check", "--model", kFig1});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("result PASS"), std::string::npos);

    const auto b = cli({"--json", "check", "--suite", "theorems", "--seed", "4", "--battery", "2"});
    EXPECT_EQ(b.code, 0);
    EXPECT_EQ(nlohmann::json::parse(b.out)["passed"], true);

    EXPECT_EQ(cli({"check", "--suite", "nope"}).code, 2);

    const auto g1 = cli({"gen", "--seed", "9", "--atoms", "4", "--ranks", "3"});
    const auto g2 = cli({"gen", "--seed", "9", "--atoms", "4", "--ranks", "3"});
    EXPECT_EQ(g1.code, 0);
    EXPECT_EQ(g1.out, g2.out);
    const std::string gen = temp_file("gen.cpm", g1.out);
    EXPECT_EQ(cli({"check", "--model", gen, "--depth", "1"}).code, 0);
}

TEST(Cli, Deterministic)
{
    const std::vector<std::string> args = {"--json", "check", "--model", kFig1, "--seed", "3"};
    EXPECT_EQ(cli(args).out, cli(args).out);
}
