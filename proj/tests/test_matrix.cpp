#include <gtest/gtest.h>

#include <random>
#include <set>

#include "ntcodes/error.hpp"
#include "ntcodes/matrix.hpp"

using namespace ntc;

namespace {

FMatrix random_matrix(const FieldPtr& F, std::size_t rows, std::size_t cols, std::mt19937_64& rng)
{
    FMatrix m(F, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = Felt{static_cast<std::uint32_t>(rng() % F->order())};
    return m;
}

// Rank by brute force: the number of distinct vectors in the row span is Q^rank.
std::size_t span_rank(const FMatrix& m)
{
    const auto& F = *m.field();
    const std::uint64_t Q = F.order();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < m.rows(); ++i) total *= Q;
    std::set<std::vector<std::uint32_t>> seen;
    for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<std::uint32_t> v(m.cols(), 0);
        std::uint64_t rest = code;
        for (std::size_t r = 0; r < m.rows(); ++r, rest /= Q) {
            const Felt c{static_cast<std::uint32_t>(rest % Q)};
            for (std::size_t j = 0; j < m.cols(); ++j) v[j] = F.add(Felt{v[j]}, F.mul(c, m.at(r, j))).index;
        }
        seen.insert(v);
    }
    std::size_t rank = 0;
    for (std::uint64_t s = 1; s < seen.size(); s *= Q) ++rank;
    return rank;
}

}  // namespace

TEST(Matrix, RankMatchesSpanCount)
{
    const auto F = Field::build(3, 1, 2);
    std::mt19937_64 rng(1);
    for (int t = 0; t < 30; ++t) {
        const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 5;
        FMatrix m = random_matrix(F, rows, cols, rng);
        if (t % 3 == 0 && rows > 1) {
            // Force a dependency.
            for (std::size_t c = 0; c < cols; ++c) m.at(rows - 1, c) = F->mul(Felt{2}, m.at(0, c));
        }
        EXPECT_EQ(rank(m), span_rank(m));
    }
}

TEST(Matrix, RrefShape)
{
    const auto F = Field::build(2, 1, 3);
    std::mt19937_64 rng(2);
    for (int t = 0; t < 50; ++t) {
        const FMatrix m = random_matrix(F, 1 + rng() % 6, 1 + rng() % 8, rng);
        const auto res = rref(m);
        EXPECT_EQ(res.reduced.rows(), res.rank);
        EXPECT_TRUE(same_row_space(res.reduced, m));
        for (std::size_t i = 0; i < res.rank; ++i) {
            EXPECT_EQ(res.reduced.at(i, res.pivots[i]), F->one());
            for (std::size_t k = 0; k < res.rank; ++k)
                if (k != i) EXPECT_TRUE(res.reduced.at(k, res.pivots[i]).is_zero());
            if (i > 0) EXPECT_LT(res.pivots[i - 1], res.pivots[i]);
        }
    }
}

TEST(Matrix, NullspaceIsKernelOfRightSize)
{
    const auto F = Field::build(2, 2, 2);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 40; ++t) {
        const std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 9;
        const FMatrix m = random_matrix(F, rows, cols, rng);
        const FMatrix N = nullspace(m);
        EXPECT_EQ(N.cols(), cols);
        EXPECT_EQ(N.rows() + rank(m), cols);
        EXPECT_EQ(rank(N), N.rows());
        if (N.rows() > 0) EXPECT_TRUE(m.multiply(N.transpose()).is_zero());
    }
}

TEST(Matrix, RowSpaceMembership)
{
    const auto F = Field::build(2, 1, 3);
    const FMatrix m = FMatrix::from_rows(F, {{Felt{1}, Felt{0}, Felt{3}}, {Felt{0}, Felt{1}, Felt{5}}}, 3);
    const std::vector<Felt> in{Felt{2}, Felt{4}, F->add(F->mul(Felt{2}, Felt{3}), F->mul(Felt{4}, Felt{5}))};
    EXPECT_TRUE(in_row_space(m, in));
    const std::vector<Felt> out{Felt{1}, Felt{1}, Felt{1}};
    EXPECT_EQ(in_row_space(m, out), F->add(Felt{3}, Felt{5}) == Felt{1});
}

TEST(Matrix, SelectTransposeIdentity)
{
    const auto F = Field::build(3, 1, 2);
    std::mt19937_64 rng(4);
    const FMatrix m = random_matrix(F, 3, 5, rng);
    EXPECT_EQ(m.transpose().transpose(), m);
    EXPECT_EQ(FMatrix::identity(F, 3).multiply(m), m);
    const std::vector<std::size_t> cols{4, 0};
    const FMatrix s = m.select_columns(cols);
    EXPECT_EQ(s.cols(), 2u);
    EXPECT_EQ(s.at(1, 0), m.at(1, 4));
    EXPECT_EQ(s.at(2, 1), m.at(2, 0));
    EXPECT_THROW(FMatrix::from_rows(F, {{Felt{1}}, {Felt{1}, Felt{2}}}, 1), Error);
}
