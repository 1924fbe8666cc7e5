#include <gtest/gtest.h>

#include "skewcat/group.hpp"

using namespace skewcat;

TEST(Group, ValidTables)
{
    EXPECT_TRUE(validate_group_table({"1", "s"}, {{0, 1}, {1, 0}}).ok());
    auto s3 = FinGroup::symmetric3();
    EXPECT_TRUE(validate_group_table(s3.names(), s3.table()).ok());
    EXPECT_EQ(s3.order(), 6u);
    for (std::size_t a = 0; a < 6; ++a) EXPECT_EQ(s3.mul(a, s3.inv(a)), s3.identity());
}

TEST(Group, Violations)
{
    auto r = validate_group_table({"1", "s"}, {{0, 1}, {1, 1}});
    ASSERT_FALSE(r.ok());
    EXPECT_EQ(r.violations.front().axiom, "latin square");

    // Latin, but no identity: a*b = -a-b mod 3
    auto r2 = validate_group_table({"a", "b", "c"}, {{0, 2, 1}, {2, 1, 0}, {1, 0, 2}});
    ASSERT_FALSE(r2.ok());
    bool has_identity = false;
    for (auto& v : r2.violations) has_identity |= v.axiom == "identity";
    EXPECT_TRUE(has_identity);
    EXPECT_THROW(FinGroup::from_table({"a", "b", "c"}, {{0, 2, 1}, {2, 1, 0}, {1, 0, 2}}), AxiomViolation);
}

TEST(Group, ConjugacyClasses)
{
    auto c4 = FinGroup::cyclic(4);
    EXPECT_EQ(conjugacy_classes(c4).size(), 4u);

    auto s3 = FinGroup::symmetric3();
    auto cl = conjugacy_classes(s3);
    ASSERT_EQ(cl.size(), 3u);
    EXPECT_EQ(cl[0].members, std::vector<std::size_t>{s3.identity()});
    EXPECT_EQ(cl[1].members.size(), 3u);
    EXPECT_EQ(cl[2].members.size(), 2u);

    auto t = conjugacy_classes(FinGroup::trivial());
    ASSERT_EQ(t.size(), 1u);
}

TEST(Group, ClassProperties)
{
    for (const auto& g : {FinGroup::symmetric3(), FinGroup::cyclic(5), FinGroup::trivial()}) {
        auto cl = conjugacy_classes(g);
        auto idx = class_index(g, cl);
        std::size_t total = 0;
        for (auto& c : cl) total += c.members.size();
        EXPECT_EQ(total, g.order());
        for (std::size_t x = 0; x < g.order(); ++x)
            for (std::size_t s = 0; s < g.order(); ++s) EXPECT_EQ(idx[g.conjugate(s, x)], idx[x]);
    }
}

TEST(GSet, Transversals)
{
    auto c2 = FinGroup::cyclic(2);
    GSetAction swap{2, {{0, 1}, {1, 0}}};
    ASSERT_TRUE(validate_gset(c2, swap).ok());
    auto t = orbits_transversal(c2, swap);
    EXPECT_EQ(t.reps, std::vector<std::size_t>{0});
    EXPECT_TRUE(t.free);
    EXPECT_EQ(t.witness[1], 1u);

    auto triv = GSetAction::trivial(c2, 1);
    auto t2 = orbits_transversal(c2, triv);
    EXPECT_EQ(t2.reps, std::vector<std::size_t>{0});
    EXPECT_FALSE(t2.free);

    GSetAction part{3, {{0, 1, 2}, {1, 0, 2}}};
    auto t3 = orbits_transversal(c2, part);
    EXPECT_EQ(t3.reps, (std::vector<std::size_t>{0, 2}));
    EXPECT_FALSE(t3.free);

    auto t4 = orbits_transversal(c2, swap, std::vector<std::size_t>{1});
    EXPECT_EQ(t4.reps, std::vector<std::size_t>{1});
    EXPECT_EQ(t4.witness[0], 1u);
    EXPECT_THROW(orbits_transversal(c2, swap, std::vector<std::size_t>{0, 1}), InputError);
}

TEST(GSet, Reproducible)
{
    auto s3 = FinGroup::symmetric3();
    GSetAction a{3, {}};
    for (std::size_t s = 0; s < 6; ++s) {
        // S3 acts on {0,1,2} through its defining permutations
        static const std::vector<std::vector<std::size_t>> perms = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0},
                                                                    {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
        a.perm.push_back(perms[s]);
    }
    ASSERT_TRUE(validate_gset(s3, a).ok());
    auto t1 = orbits_transversal(s3, a), t2 = orbits_transversal(s3, a);
    EXPECT_EQ(t1.reps, t2.reps);
    EXPECT_EQ(t1.witness, t2.witness);
    EXPECT_FALSE(t1.free);
    for (std::size_t x = 0; x < 3; ++x) EXPECT_EQ(a.apply(t1.witness[x], t1.rep_of(x)), x);
}

TEST(GSet, BrokenAction)
{
    auto c2 = FinGroup::cyclic(2);
    GSetAction bad{2, {{1, 0}, {1, 0}}};
    auto r = validate_gset(c2, bad);
    ASSERT_FALSE(r.ok());
}
