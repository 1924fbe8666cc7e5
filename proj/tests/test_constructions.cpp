#include <gtest/gtest.h>

#include "builders.hpp"
#include "skewcat/constructions.hpp"

using namespace skewcat;

namespace {
const PrimeField F101(101);
using Vec = LinCat<PrimeField>::Vec;
} // namespace

TEST(Skew, DimensionsAndGrading)
{
    auto d = fx::dual_numbers(F101);
    auto sk = skew(d, fx::sign_action(d));
    EXPECT_TRUE(validate_category(sk.cat.cat).ok());
    EXPECT_TRUE(validate_grading(sk.cat).ok());
    EXPECT_EQ(sk.cat.cat.hom(0, 0).size(), 4u);
    EXPECT_EQ(sk.cat.cat.name(sk.id(1, 1)), "[x]^s");

    // [x]^s [x]^s = [x ∘ (−x)]^1 = 0
    EXPECT_TRUE(sk.cat.cat.composite(sk.id(1, 1), sk.id(1, 1)).empty());
    // [1]^s [x]^1 = [s·x]^s = −[x]^s
    EXPECT_EQ(sk.cat.cat.composite(sk.id(0, 1), sk.id(1, 0)), (Vec{{sk.id(1, 1), -F101.one()}}));
}

TEST(Skew, TrivialGroupIsOriginal)
{
    auto c = fx::two_objects(F101, true);
    auto sk = skew(c, GActionOnCat<PrimeField>::trivial(c, FinGroup::trivial()));
    EXPECT_EQ(sk.cat.cat.num_morphisms(), c.num_morphisms());
    for (std::size_t g = 0; g < c.num_morphisms(); ++g)
        for (std::size_t f = 0; f < c.num_morphisms(); ++f) EXPECT_EQ(sk.cat.cat.composite(g, f), c.composite(g, f));
}

TEST(Skew, SingleObjectIsSkewGroupAlgebra)
{
    // Λ[G] = Λ ⊗ kG with s ⊗ a ↦ sa ⊗ s: ([a]^s)([b]^t) = [a·(s b)]^{st}
    auto d = fx::dual_numbers(F101);
    auto a = fx::sign_action(d);
    auto sk = skew(d, a);
    const auto& g = a.group;
    EXPECT_EQ(sk.cat.cat.hom(0, 0).size(), g.order() * d.num_morphisms());
    for (std::size_t s = 0; s < 2; ++s)
        for (std::size_t t = 0; t < 2; ++t)
            for (std::size_t p = 0; p < 2; ++p)
                for (std::size_t q = 0; q < 2; ++q) {
                    Vec expect;
                    for (const auto& e : d.compose(d.basis_vector(p), a.mor[s][q]))
                        expect.push_back({sk.id(e.index, g.mul(s, t)), e.value});
                    EXPECT_EQ(sk.cat.cat.composite(sk.id(p, s), sk.id(q, t)), expect);
                }
}

TEST(MatrixCategory, DualNumbers)
{
    auto d = fx::dual_numbers(F101);
    auto mg = matrix_category(d, fx::sign_action(d));
    EXPECT_EQ(mg.cat.num_objects(), 2u);
    EXPECT_EQ(mg.cat.num_morphisms(), 8u);
    EXPECT_TRUE(validate_category(mg.cat).ok());
    EXPECT_TRUE(validate_action(mg.cat, mg.action).ok());
    EXPECT_TRUE(validate_functor(mg.cat, d, mg.functor_L).ok());
    EXPECT_TRUE(mg.functor_L.fully_faithful);
    EXPECT_TRUE(mg.functor_L.dense);
    auto t = orbits_transversal(mg.action.group, mg.action.objects);
    EXPECT_TRUE(t.free);
    EXPECT_EQ(mg.action.objects.perm[1], (std::vector<std::size_t>{1, 0}));
}

TEST(MatrixCategory, TrivialGroup)
{
    auto c = fx::two_objects(F101, true);
    auto mg = matrix_category(c, GActionOnCat<PrimeField>::trivial(c, FinGroup::trivial()));
    EXPECT_EQ(mg.cat.num_morphisms(), c.num_morphisms());
    EXPECT_EQ(mg.functor_L.obj_map, (std::vector<std::size_t>{0, 1}));
}

TEST(Quotient, Examples)
{
    auto diag = fx::two_objects(F101, false);
    auto a = fx::swap_action(diag);
    auto t = orbits_transversal(a.group, a.objects);
    auto q = quotient_category(diag, a, t);
    EXPECT_EQ(q.cat.cat.num_objects(), 1u);
    EXPECT_EQ(q.cat.cat.hom(0, 0).size(), 1u);
    EXPECT_TRUE(validate_grading(q.cat).ok());

    auto full = fx::two_objects(F101, true);
    auto af = fx::swap_action(full);
    auto qf = quotient_category(full, af, orbits_transversal(af.group, af.objects));
    EXPECT_EQ(qf.cat.cat.hom(0, 0).size(), 2u);
    EXPECT_TRUE(validate_category(qf.cat.cat).ok());
    EXPECT_TRUE(validate_grading(qf.cat).ok());
    std::vector<std::size_t> degs = qf.cat.degree;
    std::sort(degs.begin(), degs.end());
    EXPECT_EQ(degs, (std::vector<std::size_t>{0, 1}));

    auto d = fx::dual_numbers(F101);
    auto ad = fx::sign_action(d);
    EXPECT_THROW(quotient_category(d, ad, orbits_transversal(ad.group, ad.objects)), NonFreeAction);
}

TEST(Quotient, MatchesTransversalSubcategory)
{
    auto d = fx::dual_numbers(F101);
    auto mg = matrix_category(d, fx::sign_action(d));
    for (std::size_t pref : {0u, 1u}) {
        auto t = orbits_transversal(mg.action.group, mg.action.objects, std::vector<std::size_t>{pref});
        auto q = quotient_category(mg.cat, mg.action, t);
        auto sk = skew(mg.cat, mg.action);
        auto sub = transversal_subcategory(mg.cat, mg.action, sk, t);
        EXPECT_EQ(compare_quotient_transversal(q, sub, sk), "");
        EXPECT_TRUE(validate_category(q.cat.cat).ok());
    }
}

TEST(TransversalSub, WitnessesAndFlags)
{
    auto full = fx::two_objects(F101, true);
    auto a = fx::swap_action(full);
    auto t = orbits_transversal(a.group, a.objects);
    auto sk = skew(full, a);
    auto sub = transversal_subcategory(full, a, sk, t);
    EXPECT_EQ(sub.cat.cat.num_objects(), 1u);
    // end(x) = Σ_s dim hom(sx, x) = 2
    EXPECT_EQ(sub.cat.cat.hom(0, 0).size(), 2u);
    EXPECT_TRUE(sub.inclusion.fully_faithful);
    EXPECT_TRUE(sub.inclusion.dense);
    EXPECT_TRUE(validate_functor(sub.cat.cat, sk.cat.cat, sub.inclusion).ok());
    const auto& w = sub.witnesses[1];
    EXPECT_EQ(sk.cat.cat.compose(w.a, w.b), sk.cat.cat.identity(1));
    EXPECT_EQ(sk.cat.cat.compose(w.b, w.a), sk.cat.cat.identity(0));
}

TEST(TransversalSub, TrivialGroup)
{
    auto c = fx::two_objects(F101, false);
    auto a = GActionOnCat<PrimeField>::trivial(c, FinGroup::trivial());
    auto t = orbits_transversal(a.group, a.objects);
    auto sk = skew(c, a);
    auto sub = transversal_subcategory(c, a, sk, t);
    EXPECT_EQ(sub.cat.cat.num_morphisms(), c.num_morphisms());
    EXPECT_EQ(sub.cat.cat.num_objects(), 2u);
}

TEST(SkewOfFunctor, LIsHomogeneousEquivalence)
{
    auto d = fx::dual_numbers(F101);
    auto a = fx::sign_action(d);
    auto mg = matrix_category(d, a);
    auto skm = skew(mg.cat, mg.action);
    auto skd = skew(d, a);
    auto lg = skew_of_functor(skm, skd, mg.functor_L);
    EXPECT_TRUE(validate_functor(skm.cat.cat, skd.cat.cat, lg).ok());
    EXPECT_TRUE(is_fully_faithful(skm.cat.cat, skd.cat.cat, lg));
    for (std::size_t m = 0; m < lg.mor_map.size(); ++m)
        for (const auto& e : lg.mor_map[m]) EXPECT_EQ(skd.cat.degree[e.index], skm.cat.degree[m]);
}
