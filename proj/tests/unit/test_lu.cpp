#include "oracles/dense.hpp"
#include "toda_darboux/error.hpp"
#include "toda_darboux/lu.hpp"

#include <gtest/gtest.h>

using namespace toda_darboux;

namespace {

BandedHessenberg two_by_two()
{
    return BandedHessenberg(1, 2, {{2.0, 3.0}, {1.0}});
}

BandedHessenberg upper_bidiagonal(std::vector<Scalar> diag, int p)
{
    const int n = static_cast<int>(diag.size());
    std::vector<std::vector<Scalar>> bands{std::move(diag)};
    for (int d = 1; d <= p; ++d) {
        bands.emplace_back(static_cast<std::size_t>(n - d));
    }
    return BandedHessenberg(p, n, std::move(bands));
}

} // namespace

TEST(LuFactorize, AlreadyUpperIsUntouched)
{
    const auto j = upper_bidiagonal({2.0, -1.0, 3.0, 0.5}, 2);
    const auto f = lu_factorize({j, 0.0});
    for (int d = 1; d <= 2; ++d) {
        for (Scalar v : f.lower.band(d)) {
            EXPECT_EQ(v, Scalar{});
        }
    }
    EXPECT_EQ(f.upper.values()[1], Scalar(-1.0));
    EXPECT_EQ(f.upper.values()[3], Scalar(0.5));
}

TEST(LuFactorize, TwoByTwoMatchesDenseOracle)
{
    const auto f = lu_factorize({two_by_two(), 0.0});
    const auto ref = oracle::lu(oracle::dense(two_by_two()));
    EXPECT_NEAR(std::abs(f.lower(1, 0) - ref.lower(1, 0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(f.upper.values()[0] - ref.upper(0, 0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(f.upper.values()[1] - ref.upper(1, 1)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(f.lower(1, 0) - 0.5), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(f.upper.values()[1] - 2.5), 0.0, 1e-15);
}

TEST(LuFactorize, RandomInstancesAgainstDenseLu)
{
    for (int p = 1; p <= 4; ++p) {
        for (int seed = 1; seed <= 6; ++seed) {
            const int n = 10;
            const auto j = random_hessenberg(p, n, static_cast<std::uint64_t>(seed), Mode::complex);
            const Scalar c(0.25, -0.5);
            const auto f = lu_factorize({j, c});
            const auto ref = oracle::lu(oracle::shifted(oracle::dense(j), c));
            double scale = 1.0;
            for (auto v : ref.lower.a) {
                scale = std::max(scale, std::abs(v));
            }
            for (auto v : ref.upper.a) {
                scale = std::max(scale, std::abs(v));
            }
            EXPECT_LE(oracle::max_gap(oracle::dense(f.lower), ref.lower, n), 1e-12 * scale);
            EXPECT_LE(oracle::max_gap(oracle::dense(f.upper), ref.upper, n), 1e-12 * scale);
            const auto product = oracle::dense(f.lower) * oracle::dense(f.upper);
            EXPECT_LE(oracle::max_gap(product, oracle::shifted(oracle::dense(j), c), n), 1e-12 * scale);
        }
    }
}

TEST(LuFactorize, SingularLeadingMinorReportsIndex)
{
    // Leading 2x2 block of J - 0 I is [[1,1],[1,1]].
    const BandedHessenberg j(1, 3, {{1.0, 1.0, 4.0}, {1.0, 2.0}});
    try {
        lu_factorize({j, 0.0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SingularLeadingMinor);
        EXPECT_EQ(e.index(), 2);
    }
}

TEST(LuFactorize, TruncationCommutes)
{
    const auto j = random_hessenberg(3, 11, 77, Mode::complex);
    const auto big = lu_factorize({j, 0.3});
    const auto small = lu_factorize({truncate(j, 6), 0.3});
    EXPECT_EQ(oracle::max_gap(oracle::dense(truncate(big.lower, 6)), oracle::dense(small.lower), 6), 0.0);
    EXPECT_EQ(oracle::max_gap(oracle::dense(truncate(big.upper, 6)), oracle::dense(small.upper), 6), 0.0);
}

TEST(CharPoly, ZeroOrder)
{
    const auto v = char_poly({two_by_two(), 0.0}, 0);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0], Scalar(1.0));
}

TEST(CharPoly, TwoByTwo)
{
    const auto v = char_poly({two_by_two(), 0.0}, 2);
    ASSERT_EQ(v.size(), 3u);
    EXPECT_NEAR(std::abs(v[1] - Scalar(-2.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(v[2] - Scalar(5.0)), 0.0, 1e-15);
}

TEST(CharPoly, MatchesDeterminantOracle)
{
    for (int p = 1; p <= 4; ++p) {
        for (int seed = 1; seed <= 4; ++seed) {
            const auto j = random_hessenberg(p, 9, static_cast<std::uint64_t>(seed + 10), Mode::complex);
            const Scalar c(-0.7, 1.1);
            const auto poly = char_poly({j, c}, 8);
            const oracle::Dense cij = oracle::shifted(oracle::dense(j), c);
            for (int k = 1; k <= 8; ++k) {
                // det(C I_k - J_k) = (-1)^k det(J_k - C I_k)
                oracle::Dense minus(k);
                const auto lead = oracle::leading(cij, k);
                for (std::size_t e = 0; e < lead.a.size(); ++e) {
                    minus.a[e] = -lead.a[e];
                }
                EXPECT_LE(oracle::relative(poly[static_cast<std::size_t>(k)], oracle::det(minus)), 1e-10)
                    << "p=" << p << " k=" << k;
            }
        }
    }
}

TEST(CharPoly, RejectsOutOfRangeOrder)
{
    EXPECT_THROW(char_poly({two_by_two(), 0.0}, 3), Error);
    EXPECT_THROW(char_poly({two_by_two(), 0.0}, -1), Error);
}

TEST(PivotGammas, UpperBidiagonalGivesDiagonal)
{
    const std::vector<Scalar> d{2.0, -1.0, 3.0, Scalar(0.5, 1.0)};
    const auto g = pivot_gammas({upper_bidiagonal(d, 1), 0.0}, 4);
    ASSERT_EQ(g.size(), 4u);
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_NEAR(std::abs(g[k] - d[k]), 0.0, 1e-15);
    }
}

TEST(PivotGammas, TwoByTwo)
{
    const auto g = pivot_gammas({two_by_two(), 0.0}, 2);
    EXPECT_NEAR(std::abs(g[0] - Scalar(2.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(g[1] - Scalar(2.5)), 0.0, 1e-15);
}

TEST(PivotGammas, RouteEqualityAndDeterminantRatio)
{
    for (int p = 1; p <= 4; ++p) {
        for (int seed = 1; seed <= 8; ++seed) {
            const int n = 10;
            const auto j = random_hessenberg(p, n, static_cast<std::uint64_t>(seed + 50), Mode::real);
            const Scalar c(0.1, 0.0);
            const auto lu = lu_factorize({j, c});
            const auto g = pivot_gammas({j, c}, n);
            const oracle::Dense jc = oracle::shifted(oracle::dense(j), c);
            Scalar product{1.0, 0.0};
            for (int k = 0; k < n; ++k) {
                EXPECT_LE(oracle::relative(g[static_cast<std::size_t>(k)], lu.upper.values()[static_cast<std::size_t>(k)]),
                          1e-9);
                product *= g[static_cast<std::size_t>(k)];
                EXPECT_LE(oracle::relative(product, oracle::det(oracle::leading(jc, k + 1))), 1e-9)
                    << "p=" << p << " seed=" << seed << " k=" << k;
            }
        }
    }
}

TEST(PivotGammas, SingularMinor)
{
    const BandedHessenberg j(1, 3, {{1.0, 1.0, 4.0}, {1.0, 2.0}});
    try {
        pivot_gammas({j, 0.0}, 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SingularLeadingMinor);
        EXPECT_EQ(e.index(), 2);
    }
}
