#include <gtest/gtest.h>

#include <random>

#include "skewcat/linalg.hpp"

using namespace skewcat;

namespace {

template <class F>
Matrix<typename F::element_type> dense(const F& f, std::vector<std::vector<long long>> rows)
{
    std::vector<std::vector<typename F::element_type>> g;
    for (auto& r : rows) {
        g.emplace_back();
        for (auto v : r) g.back().push_back(f.from_int(v));
    }
    return Matrix<typename F::element_type>::from_dense(g);
}

template <class F>
Matrix<typename F::element_type> random_matrix(const F& f, std::mt19937& rng, std::size_t r, std::size_t c, int sparsity)
{
    std::uniform_int_distribution<int> val(-3, 3), keep(0, 9);
    std::vector<std::vector<long long>> rows(r, std::vector<long long>(c, 0));
    for (auto& row : rows)
        for (auto& x : row)
            if (keep(rng) < sparsity) x = val(rng);
    return dense(f, rows);
}

} // namespace

TEST(Rank, Examples)
{
    RationalField q;
    EXPECT_EQ(rank(Matrix<Rational>::identity(2, q.one())), 2u);
    EXPECT_EQ(rank(Matrix<Rational>(3, 3)), 0u);
    EXPECT_EQ(rank(dense(q, {{1, 2}, {2, 4}})), 1u);
}

TEST(Kernel, Examples)
{
    RationalField q;
    EXPECT_EQ(kernel_basis(q, Matrix<Rational>::identity(2, q.one())).dim(), 0u);

    auto k = kernel_basis(q, dense(q, {{1, -1}}));
    ASSERT_EQ(k.dim(), 1u);
    EXPECT_EQ(k.vectors.at(0, 0), k.vectors.at(1, 0));

    auto k2 = kernel_basis(q, dense(q, {{1, 2}, {2, 4}}));
    ASSERT_EQ(k2.dim(), 1u);
    // proportional to (2, -1)
    EXPECT_EQ(k2.vectors.at(0, 0) + q.from_int(2) * k2.vectors.at(1, 0), q.zero());
    EXPECT_FALSE(k2.vectors.at(0, 0).is_zero());
}

TEST(QuotientDim, Examples)
{
    RationalField q;
    using V = SparseVec<Rational>;
    std::vector<V> none;
    EXPECT_EQ(quotient_dim<Rational>(4, none), 4u);
    std::vector<V> std3 = {{{0, q.one()}}, {{1, q.one()}}, {{2, q.one()}}};
    EXPECT_EQ(quotient_dim<Rational>(3, std3), 0u);
    std::vector<V> two = {{{0, q.one()}}, {{0, q.one()}, {1, q.one()}}};
    EXPECT_EQ(quotient_dim<Rational>(4, two), 2u);
    std::vector<V> bad = {{{5, q.one()}}};
    EXPECT_THROW(quotient_dim<Rational>(4, bad), std::invalid_argument);
}

TEST(LinalgProperties, RankTransposeAndRankNullity)
{
    PrimeField f(101);
    std::mt19937 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t r = 1 + rng() % 9, c = 1 + rng() % 9;
        auto m = random_matrix(f, rng, r, c, 1 + trial % 8);
        const auto rk = rank(m);
        EXPECT_EQ(rk, rank(m.transpose()));
        auto k = kernel_basis(f, m);
        EXPECT_EQ(c, rk + k.dim());
        EXPECT_TRUE((m * k.vectors).is_zero());
        EXPECT_EQ(rank(k.vectors), k.dim());
    }
}

TEST(LinalgProperties, PermutationInvariance)
{
    RationalField q;
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t r = 2 + rng() % 6, c = 2 + rng() % 6;
        auto m = random_matrix(q, rng, r, c, 5);
        std::vector<std::size_t> rows(r), cols(c);
        for (std::size_t i = 0; i < r; ++i) rows[i] = i;
        for (std::size_t j = 0; j < c; ++j) cols[j] = j;
        std::shuffle(rows.begin(), rows.end(), rng);
        std::shuffle(cols.begin(), cols.end(), rng);
        EXPECT_EQ(rank(m), rank(m.select_rows(rows).select_columns(cols)));
    }
}

TEST(LinalgProperties, ComposableZeroProducts)
{
    PrimeField f(7);
    std::mt19937 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        auto a = random_matrix(f, rng, 4, 6, 6);
        auto k = kernel_basis(f, a);
        // a · k = 0, so rank a + rank k ≤ 6
        EXPECT_TRUE((a * k.vectors).is_zero());
        EXPECT_LE(rank(a) + rank(k.vectors), 6u);
    }
}

TEST(Echelon, ReduceGivesNormalForm)
{
    PrimeField f(101);
    Echelon<Zp> e(3);
    e.insert({{0, f.one()}, {1, f.one()}});
    auto r = e.reduce({{0, f.from_int(2)}, {2, f.one()}});
    EXPECT_EQ(coefficient(r, 0), Zp());
    EXPECT_EQ(coefficient(r, 1), f.from_int(-2));
    EXPECT_EQ(coefficient(r, 2), f.one());
    EXPECT_TRUE(e.contains({{0, f.from_int(3)}, {1, f.from_int(3)}}));
}

TEST(Inverse, RoundTrip)
{
    RationalField q;
    auto m = dense(q, {{2, 1}, {1, 1}});
    auto inv = inverse(q, m);
    EXPECT_EQ(m * inv, Matrix<Rational>::identity(2, q.one()));
    EXPECT_THROW(inverse(q, dense(q, {{1, 2}, {2, 4}})), std::domain_error);
}

TEST(KernelBasis, CoordinatesReconstruct)
{
    PrimeField f(101);
    std::mt19937 rng(5);
    auto m = random_matrix(f, rng, 3, 7, 6);
    auto k = kernel_basis(f, m);
    // a random kernel combination is recovered from its free coordinates
    SparseVec<Zp> v;
    for (std::size_t j = 0; j < k.dim(); ++j) axpy(f.from_int(j + 2), k.vectors.column(j), v);
    auto c = k.coordinates(v);
    EXPECT_EQ(k.vectors.apply(c), v);
}
