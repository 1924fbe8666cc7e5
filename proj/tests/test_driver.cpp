#include <gtest/gtest.h>

#include "skewcat/skewcat.hpp"

using namespace skewcat;

namespace {
const std::string dir = SKEWCAT_FIXTURES;

Report run_on(const std::string& cmd, const std::string& fixture, std::size_t n = 2)
{
    Job j;
    j.command = cmd;
    j.input = dir + "/" + fixture + ".json";
    j.max_degree = n;
    return run(j);
}

std::vector<std::string> axioms(const Report& r, const char* section)
{
    std::vector<std::string> out;
    for (const auto& v : r.doc["validation"][section]["violations"]) out.push_back(v["axiom"].get<std::string>());
    return out;
}
} // namespace

TEST(Validate, GoodFixtures)
{
    for (const char* f : {"end_k", "kxk", "dual_numbers", "dual_c2", "two_object_swap", "swap_full", "s3_point"}) {
        auto r = run_on("validate", f);
        EXPECT_EQ(r.exit_code, 0) << f << "\n" << r.text;
        EXPECT_EQ(r.doc["status"], "pass");
    }
}

TEST(Validate, CorruptedFixturesNameTheAxiom)
{
    const std::vector<std::tuple<std::string, const char*, std::string>> cases{
        {"bad_group_latin", "group", "latin square"},
        {"bad_group_identity", "group", "identity"},
        {"bad_identity_law", "category", "identity law"},
        {"bad_associativity", "category", "associativity"},
        {"bad_action_identity", "action", "s(id_x) = id_sx"},
        {"bad_grading_leak", "grading", "degree leak"},
    };
    for (const auto& [f, section, axiom] : cases) {
        auto r = run_on("validate", f);
        EXPECT_EQ(r.exit_code, exit_code::failed) << f;
        auto got = axioms(r, section);
        ASSERT_FALSE(got.empty()) << f;
        EXPECT_EQ(got.front(), axiom) << f;
        EXPECT_FALSE(r.doc["validation"][section]["violations"][0]["witness"].get<std::string>().empty());
    }
}

TEST(Hh, ClassTableOnDualNumbersSkew)
{
    Job j;
    j.command = "hh";
    j.input = dir + "/dual_c2.json";
    j.max_degree = 1;
    j.classes = true;
    auto r = run(j);
    ASSERT_EQ(r.exit_code, 0) << r.text;
    std::map<std::string, std::vector<std::size_t>> by;
    for (const auto& e : r.doc["homology"]) by[e["class"].get<std::string>()].push_back(e["dim_homology"].get<std::size_t>());
    EXPECT_EQ(by["{1}"], (std::vector<std::size_t>{1, 0}));
    EXPECT_EQ(by["{s}"], (std::vector<std::size_t>{1, 1}));
    EXPECT_EQ(by["ALL"], (std::vector<std::size_t>{2, 1}));
}

TEST(Hh, VariantsAndEntries)
{
    Job j;
    j.command = "hh";
    j.input = dir + "/dual_c2.json";
    j.variant = "coinvariants";
    auto r = run(j);
    ASSERT_EQ(r.exit_code, 0);
    const auto& e = r.doc["homology"][0];
    EXPECT_EQ(e["variant"], "coinvariants");
    EXPECT_EQ(e["class"], "ALL");
    EXPECT_TRUE(e.contains("dim_chain"));
    j.command = "hhc";
    j.variant = "invariants";
    r = run(j);
    std::vector<std::size_t> h;
    for (const auto& x : r.doc["cohomology"]) h.push_back(x["dim_cohomology"].get<std::size_t>());
    EXPECT_EQ(h, (std::vector<std::size_t>{1, 1, 1}));
}

TEST(Oracle, TwoObjects)
{
    auto r = run_on("oracle", "kxk", 2);
    ASSERT_EQ(r.exit_code, 0) << r.text;
    EXPECT_EQ(r.doc["oracle"]["homology"]["category"], io::json({2, 0, 0}));
    EXPECT_EQ(r.doc["oracle"]["homology"]["algebra"], io::json({2, 0, 0}));
}

TEST(Verify, AllGoodFixturesPass)
{
    for (const auto& [f, n] : std::vector<std::pair<const char*, std::size_t>>{
             {"end_k", 2}, {"kxk", 2}, {"dual_numbers", 2}, {"dual_c2", 2}, {"two_object_swap", 2}, {"swap_full", 2},
             {"s3_point", 1}}) {
        auto r = run_on("verify", f, n);
        EXPECT_EQ(r.exit_code, 0) << f << "\n" << r.text;
    }
}

TEST(Verify, RationalField)
{
    Job j;
    j.command = "verify";
    j.input = dir + "/dual_c2.json";
    j.field = "rational";
    auto r = run(j);
    EXPECT_EQ(r.exit_code, 0) << r.text;
    EXPECT_EQ(r.doc["field"], "rational");
}

TEST(Verify, CharacteristicDividingGroupOrderIsAnInputError)
{
    Job j;
    j.command = "verify";
    j.input = dir + "/dual_c2.json";
    j.field = "p:2";
    EXPECT_EQ(run(j).exit_code, exit_code::input);
}

TEST(Errors, ExitCodes)
{
    EXPECT_EQ(run_on("quotient", "dual_c2").exit_code, exit_code::input);
    EXPECT_EQ(run_on("hh", "dual_numbers", 20).exit_code, exit_code::budget);
    EXPECT_EQ(run_on("hh", "missing").exit_code, exit_code::input);
    auto r = run_on("frobnicate", "dual_c2");
    EXPECT_EQ(r.exit_code, exit_code::input);
    EXPECT_EQ(r.doc["status"], "error");
}

TEST(Constructions, OutputsReparse)
{
    for (const char* cmd : {"skew", "mg"}) {
        auto r = run_on(cmd, "dual_c2");
        ASSERT_EQ(r.exit_code, 0) << r.text;
        Job j;
        j.command = "validate";
        j.document = io::parse_document(r.doc["output"].dump(), cmd);
        EXPECT_EQ(run(j).exit_code, 0) << cmd;
    }
    auto q = run_on("quotient", "swap_full");
    ASSERT_EQ(q.exit_code, 0) << q.text;
    EXPECT_EQ(q.doc["summary"]["morphisms"], 2);
}

TEST(Transversal, OverrideByNameOrIndex)
{
    for (const char* t : {"b", "1"}) {
        Job j;
        j.command = "quotient";
        j.input = dir + "/swap_full.json";
        j.transversal = std::vector<std::string>{t};
        auto r = run(j);
        EXPECT_EQ(r.exit_code, 0) << r.text;
        EXPECT_EQ(r.doc["output"]["category"]["objects"][0], "[b]");
    }
    Job bad;
    bad.command = "quotient";
    bad.input = dir + "/swap_full.json";
    bad.transversal = std::vector<std::string>{"zz"};
    EXPECT_EQ(run(bad).exit_code, exit_code::input);
}

TEST(Determinism, ThreadCountDoesNotChangeReport)
{
    Job j;
    j.command = "verify";
    j.input = dir + "/dual_c2.json";
    j.threads = 1;
    const auto a = run(j).doc.dump();
    j.threads = 3;
    const auto b = run(j).doc.dump();
    EXPECT_EQ(a, b);
    EXPECT_EQ(run(j).doc.dump(), b);
}
