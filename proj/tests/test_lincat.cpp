#include <gtest/gtest.h>

#include "builders.hpp"

using namespace skewcat;

namespace {
const PrimeField F101(101);
}

TEST(Category, ValidExamples)
{
    EXPECT_TRUE(validate_category(fx::end_k(F101)).ok());
    EXPECT_TRUE(validate_category(fx::dual_numbers(F101)).ok());
    EXPECT_TRUE(validate_category(fx::two_objects(F101, false)).ok());
    EXPECT_TRUE(validate_category(fx::two_objects(F101, true)).ok());
}

TEST(Category, IdentityLawViolation)
{
    LinCat<PrimeField> c(F101, {"*"});
    auto one = c.add_morphism("1", 0, 0);
    auto x = c.add_morphism("x", 0, 0);
    c.set_composite(x, x, c.basis_vector(one));
    c.set_composite(one, one, c.basis_vector(one));
    c.set_identity(0, c.basis_vector(one));
    auto r = validate_category(c);
    ASSERT_FALSE(r.ok());
    EXPECT_EQ(r.violations.front().axiom, "identity law");
    EXPECT_NE(r.violations.front().witness.find("x"), std::string::npos);
}

TEST(Category, AssociativityViolation)
{
    LinCat<PrimeField> c(F101, {"*"});
    auto one = c.add_morphism("1", 0, 0);
    auto p = c.add_morphism("p", 0, 0);
    auto q = c.add_morphism("q", 0, 0);
    for (auto m : {one, p, q}) {
        c.set_composite(one, m, c.basis_vector(m));
        c.set_composite(m, one, c.basis_vector(m));
    }
    c.set_composite(p, p, c.basis_vector(q));
    c.set_composite(q, p, c.basis_vector(p));
    c.set_identity(0, c.basis_vector(one));
    auto r = validate_category(c);
    ASSERT_FALSE(r.ok());
    EXPECT_EQ(r.violations.front().axiom, "associativity");
}

TEST(Action, Examples)
{
    auto d = fx::dual_numbers(F101);
    EXPECT_TRUE(validate_action(d, GActionOnCat<PrimeField>::trivial(d, FinGroup::symmetric3())).ok());
    EXPECT_TRUE(validate_action(d, fx::sign_action(d)).ok());

    auto bad = fx::sign_action(d);
    bad.mor[1][0] = {{0, -F101.one()}};
    auto r = validate_action(d, bad);
    ASSERT_FALSE(r.ok());
    EXPECT_EQ(r.violations.front().axiom, "s(id_x) = id_sx");

    auto twice = fx::sign_action(d);
    twice.mor[1][1] = {{1, F101.from_int(2)}};
    auto r2 = validate_action(d, twice);
    ASSERT_FALSE(r2.ok());
    EXPECT_EQ(r2.violations.front().axiom, "t(sf) = (ts)f");

    auto sw = fx::two_objects(F101, true);
    EXPECT_TRUE(validate_action(sw, fx::swap_action(sw)).ok());
}

TEST(Action, InverseElementsInvert)
{
    auto sw = fx::two_objects(F101, true);
    auto a = fx::swap_action(sw);
    for (std::size_t s = 0; s < a.group.order(); ++s)
        for (std::size_t f = 0; f < sw.num_morphisms(); ++f)
            EXPECT_EQ(a.act(a.group.inv(s), a.mor[s][f]), sw.basis_vector(f));
}

TEST(Grading, Examples)
{
    auto d = fx::dual_numbers(F101);
    EXPECT_TRUE(validate_grading(GradedLinCat<PrimeField>::trivially(d, FinGroup::cyclic(2))).ok());

    LinCat<PrimeField> c(F101, {"*"});
    auto one = c.add_morphism("1", 0, 0);
    auto x = c.add_morphism("x", 0, 0);
    c.set_composite(one, one, c.basis_vector(one));
    c.set_composite(one, x, c.basis_vector(x));
    c.set_composite(x, one, c.basis_vector(x));
    c.set_composite(x, x, c.basis_vector(x));
    c.set_identity(0, c.basis_vector(one));
    ASSERT_TRUE(validate_category(c).ok());
    GradedLinCat<PrimeField> g{c, FinGroup::cyclic(2), {0, 1}};
    auto r = validate_grading(g);
    ASSERT_FALSE(r.ok());
    EXPECT_EQ(r.violations.front().axiom, "degree leak");
}

TEST(Algebra, Examples)
{
    auto d = fx::dual_numbers(F101);
    auto a = algebra_of(d);
    EXPECT_EQ(a.num_morphisms(), 2u);
    EXPECT_TRUE(validate_category(a).ok());

    auto kk = fx::two_objects(F101, false);
    auto akk = algebra_of(kk);
    EXPECT_EQ(akk.num_morphisms(), 2u);
    EXPECT_TRUE(validate_category(akk).ok());
    EXPECT_EQ(akk.identity(0).size(), 2u);

    auto full = fx::two_objects(F101, true);
    EXPECT_EQ(algebra_of(full).num_morphisms(), full.total_dim());
    EXPECT_TRUE(validate_category(algebra_of(full)).ok());
}

TEST(Functor, IdentityFunctor)
{
    auto c = fx::two_objects(F101, true);
    LinFunctor<PrimeField> id{{0, 1}, {}};
    for (std::size_t m = 0; m < c.num_morphisms(); ++m) id.mor_map.push_back(c.basis_vector(m));
    EXPECT_TRUE(validate_functor(c, c, id).ok());
    EXPECT_TRUE(is_fully_faithful(c, c, id));
    EXPECT_TRUE(check_dense(c, id, {}));

    auto bad = id;
    bad.mor_map[2] = {};
    EXPECT_FALSE(validate_functor(c, c, bad).ok());
    EXPECT_FALSE(is_fully_faithful(c, c, bad));
}
