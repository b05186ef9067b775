#include "oracles/dense.hpp"
#include "toda_darboux/error.hpp"
#include "toda_darboux/lattice.hpp"
#include "toda_darboux/pipeline.hpp"

#include <gtest/gtest.h>

using namespace toda_darboux;

namespace {

BandedHessenberg factored_instance(int p, int n, std::uint64_t seed, Mode mode, Scalar shift = 0.0)
{
    RunConfig config;
    config.p = p;
    config.seed = seed;
    config.mode = mode;
    config.shift = shift;
    config.family = Family::factored;
    return make_instance(config, n).matrix;
}

double max_gap(const BandedHessenberg& a, const BandedHessenberg& b)
{
    return oracle::max_gap(oracle::dense(a), oracle::dense(b), a.size());
}

} // namespace

TEST(TodaRhs, DiagonalMatrixIsStationary)
{
    const BandedHessenberg j(2, 5, {{1.0, -2.0, 3.0, 0.5, 4.0}, {0.0, 0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}});
    for (const auto& band : toda_rhs(j)) {
        for (Scalar v : band) {
            EXPECT_EQ(v, Scalar{});
        }
    }
}

TEST(TodaRhs, TwoByTwo)
{
    const Scalar c(0.7, -0.2);
    const BandedHessenberg j(1, 2, {{0.0, 0.0}, {c}});
    const Bands rates = toda_rhs(j);
    EXPECT_EQ(rates[0][0], c);
    EXPECT_EQ(rates[0][1], -c);
    EXPECT_EQ(rates[1][0], Scalar{});
}

TEST(TodaRhs, MatchesFormulaOnRandomMatrix)
{
    const int p = 3, n = 9;
    const auto j = random_hessenberg(p, n, 5, Mode::complex);
    const Bands rates = toda_rhs(j);
    for (int d = 0; d <= p; ++d) {
        for (int c = 0; c + d < n; ++c) {
            const int r = c + d;
            // a(r+1, c) is outside the band when r + 1 - c > p.
            const Scalar below = r + 1 - c <= p ? j(r + 1, c) : Scalar{};
            const Scalar left = c >= 1 && r - (c - 1) <= p ? j(r, c - 1) : Scalar{};
            const Scalar expected = (j(r, r) - j(c, c)) * j(r, c) + below - left;
            EXPECT_LE(std::abs(rates[static_cast<std::size_t>(d)][static_cast<std::size_t>(c)] - expected), 1e-14);
        }
    }
}

TEST(TodaRhs, ShiftInvariant)
{
    const auto j = random_hessenberg(2, 7, 6, Mode::complex);
    const Scalar s(1.5, 0.5);
    auto bands = j.bands();
    for (auto& v : bands[0]) {
        v += s;
    }
    const Bands a = toda_rhs(j);
    const Bands b = toda_rhs(BandedHessenberg(2, 7, bands));
    for (std::size_t d = 0; d < a.size(); ++d) {
        for (std::size_t c = 0; c < a[d].size(); ++c) {
            EXPECT_LE(std::abs(a[d][c] - b[d][c]), 1e-13);
        }
    }
}

TEST(KdvRhs, ConstantSequenceIsStationaryInside)
{
    const int p = 2;
    const GammaTable t(p, 5, std::vector<Scalar>(15, Scalar(0.3, 0.1)));
    const auto rates = kdv_rhs(t);
    for (long n = p + 1; n + p <= t.count(); ++n) {
        EXPECT_LE(std::abs(rates[static_cast<std::size_t>(n - 1)]), 1e-15) << n;
    }
}

TEST(KdvRhs, OneBandExample)
{
    const GammaTable t(1, 2, {1.0, 2.0, 3.0, 4.0});
    const auto rates = kdv_rhs(t);
    EXPECT_EQ(rates[1], Scalar(4.0));
    // Boundary: gamma_0 = 0 and gamma_5 = 0.
    EXPECT_EQ(rates[0], Scalar(2.0));
    EXPECT_EQ(rates[3], Scalar(-12.0));
}

TEST(Evolve, StationaryStateStaysPut)
{
    const BandedHessenberg j(1, 4, {{1.0, 2.0, 3.0, 4.0}, {0.0, 0.0, 0.0}});
    const auto traj = evolve_toda(j, 1e-2, 10);
    ASSERT_EQ(traj.samples(), 11u);
    EXPECT_DOUBLE_EQ(traj.times.back(), 0.1);
    EXPECT_EQ(max_gap(traj.states.back(), j), 0.0);
}

TEST(Evolve, RejectsBadStep)
{
    const auto j = random_hessenberg(1, 4, 1, Mode::real);
    EXPECT_THROW(evolve_toda(j, 0.0, 10), Error);
    EXPECT_THROW(evolve_toda(j, 1e-3, 0), Error);
}

TEST(Evolve, BlowUpIsReported)
{
    // gamma_1' = gamma_1 gamma_2 and gamma_2' = -gamma_2 gamma_1 keep
    // the product finite, so use a single huge entry and a large step.
    const GammaTable t(1, 2, {1e200, 1e200, 1e200, 1e200});
    try {
        evolve_kdv(t, 1.0, 50);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::BlowUp);
        EXPECT_GE(e.index(), 0);
    }
}

// Halving the step should cut the error at a fixed time by about 2^4.
TEST(Evolve, FourthOrderSelfConvergence)
{
    const auto j = factored_instance(2, 10, 3, Mode::complex);
    const double horizon = 0.4;
    const auto coarse = evolve_toda(j, horizon / 10, 10).states.back();
    const auto mid = evolve_toda(j, horizon / 20, 20).states.back();
    const auto fine = evolve_toda(j, horizon / 40, 40).states.back();
    const double ratio = max_gap(coarse, mid) / max_gap(mid, fine);
    EXPECT_GT(ratio, 12.0);
    EXPECT_LT(ratio, 20.0);
}

TEST(Evolve, KdvFourthOrderSelfConvergence)
{
    const GammaTable t = random_gamma_table(3, 8, 2, Mode::complex, 0.5, 0.1);
    const double horizon = 1.0;
    auto end = [&](int steps) { return evolve_kdv(t, horizon / steps, steps).states.back(); };
    const auto a = end(10), b = end(20), c = end(40);
    double ab = 0.0, bc = 0.0;
    for (long n = 1; n <= t.count(); ++n) {
        ab = std::max(ab, std::abs(a[n] - b[n]));
        bc = std::max(bc, std::abs(b[n] - c[n]));
    }
    EXPECT_GT(ab / bc, 12.0);
    EXPECT_LT(ab / bc, 20.0);
}

TEST(VerifyToda, PassesOnFactoredInstance)
{
    const auto j = factored_instance(2, 8, 4, Mode::real);
    const auto report = verify_toda(evolve_toda(j, 1e-3, 100), 1e-5);
    EXPECT_TRUE(report.pass) << report.max_residual;
    EXPECT_LE(report.max_residual, 1e-5);
}

TEST(VerifyToda, InjectedFaultIsLocated)
{
    const auto j = factored_instance(2, 8, 4, Mode::real);
    auto traj = evolve_toda(j, 1e-3, 20);
    auto bands = traj.states[7].bands();
    bands[1][2] += 1e-3;  // entry (3, 2)
    traj.states[7] = BandedHessenberg(2, 8, bands);
    const auto report = verify_toda(traj, 1e-5);
    EXPECT_FALSE(report.pass);
    EXPECT_EQ(report.argmax_entry, "a[3,2]");
    EXPECT_TRUE(report.argmax_time == 6 || report.argmax_time == 8) << report.argmax_time;
}

// Row i is checked only when row i + 1 exists inside the window.
TEST(VerifyToda, WindowExcludesBoundaryRows)
{
    const auto j = factored_instance(1, 6, 2, Mode::real);
    auto traj = evolve_toda(j, 1e-3, 10);
    auto bands = traj.states[5].bands();
    bands[0][4] += 1.0;  // entry (4, 4)
    traj.states[5] = BandedHessenberg(1, 6, bands);
    EXPECT_TRUE(verify_toda(traj, 1e-5, 5).pass);
    EXPECT_FALSE(verify_toda(traj, 1e-5).pass);
}

TEST(VerifyToda, NeedsThreeSamples)
{
    const auto traj = evolve_toda(random_hessenberg(1, 4, 1, Mode::real), 1e-3, 1);
    try {
        verify_toda(traj, 1e-5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InsufficientSamples);
    }
}

TEST(VerifyKdv, PassesAndCatchesFaults)
{
    const GammaTable t = random_gamma_table(2, 10, 5, Mode::complex, 0.5, 0.1);
    auto traj = evolve_kdv(t, 1e-3, 50);
    EXPECT_TRUE(verify_kdv(traj, 1e-6).pass);
    std::vector<Scalar> g(traj.states[20].values().begin(), traj.states[20].values().end());
    g[4] += 1e-4;
    traj.states[20] = GammaTable(2, 10, g);
    const auto report = verify_kdv(traj, 1e-6);
    EXPECT_FALSE(report.pass);
    EXPECT_EQ(report.argmax_entry, "g[5]");
}

TEST(ComparePaths, ReportsLargestGap)
{
    const auto j = factored_instance(1, 6, 1, Mode::real);
    const auto a = evolve_toda(j, 1e-3, 5);
    auto b = a;
    auto bands = b.states[3].bands();
    bands[0][1] += 0.25;
    b.states[3] = BandedHessenberg(1, 6, bands);
    const auto report = compare_paths(a, b, 6, 1e-4, "path");
    EXPECT_EQ(report.name, "path");
    EXPECT_NEAR(report.max_residual, 0.25, 1e-15);
    EXPECT_EQ(report.argmax_time, 3u);
    EXPECT_FALSE(report.pass);
    EXPECT_TRUE(compare_paths(a, b, 1, 1e-4, "path").pass);
}

TEST(Identities, PolynomialDerivative)
{
    for (int p = 1; p <= 4; ++p) {
        const auto j = random_hessenberg(p, 10, static_cast<std::uint64_t>(p + 60), Mode::complex);
        const Bands rates = toda_rhs(j);
        EXPECT_LE(check_poly_derivative(j, rates, Scalar(0.3, -0.4), 9), 1e-10);
        Bands wrong = rates;
        wrong[0][2] += 1e-3;
        EXPECT_GT(check_poly_derivative(j, wrong, Scalar(0.3, -0.4), 9), 1e-8);
    }
}

TEST(Identities, DeltaDerivative)
{
    for (int p = 1; p <= 4; ++p) {
        const GammaTable t = random_gamma_table(p, 10, static_cast<std::uint64_t>(p), Mode::complex, 1.0, 1.0);
        const auto rates = kdv_rhs(t);
        EXPECT_LE(check_delta_derivative(t, rates), 1e-10);
        auto wrong = rates;
        wrong[static_cast<std::size_t>(p + 1)] += 1e-3;
        EXPECT_GT(check_delta_derivative(t, wrong), 1e-8);
    }
}

TEST(Diagram, WorkingSize)
{
    EXPECT_EQ(diagram_working_size(2, 8, 10), 8 + 1 + 10 + 2);
}

TEST(Diagram, OneBandSmallWindow)
{
    const auto j = factored_instance(1, diagram_working_size(1, 6, 10), 1, Mode::real);
    Rng rng(1);
    DiagramOptions options;
    options.window = 6;
    const auto report = theorem1_diagram(j, 0.0, ParameterSet::empty(1), rng, options);
    ASSERT_EQ(report.reports.size(), 5u);
    EXPECT_EQ(report.reports[0].name, "reconstruction_t0");
    EXPECT_EQ(report.reports[1].name, "path_J0");
    EXPECT_EQ(report.reports[2].name, "toda_J0");
    EXPECT_EQ(report.reports[3].name, "toda_J1");
    EXPECT_EQ(report.reports[4].name, "kdv_gamma");
    for (const auto& r : report.reports) {
        EXPECT_TRUE(r.pass) << r.name << " " << r.max_residual;
    }
}

TEST(Diagram, ZeroStepsChecksReconstructionOnly)
{
    RunConfig config;
    config.p = 2;
    config.steps = 0;
    config.family = Family::factored;
    const auto report = run_verify(config);
    ASSERT_EQ(report.reports.size(), 1u);
    EXPECT_EQ(report.reports[0].name, "reconstruction_t0");
    EXPECT_TRUE(report.all_pass());
}

TEST(Diagram, ComplexShiftedTwoBands)
{
    RunConfig config;
    config.p = 2;
    config.mode = Mode::complex;
    config.shift = Scalar(0.2, -0.1);
    config.seed = 11;
    config.family = Family::factored;
    const auto report = run_verify(config);
    EXPECT_EQ(report.reports.size(), 6u);
    for (const auto& r : report.reports) {
        EXPECT_TRUE(r.pass) << r.name << " " << r.max_residual;
    }
}

TEST(Diagram, RejectsUndersizedInput)
{
    Rng rng(1);
    const auto j = factored_instance(1, 8, 1, Mode::real);
    try {
        theorem1_diagram(j, 0.0, ParameterSet::empty(1), rng, DiagramOptions{});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Size);
    }
}

// Error at a fixed horizon against a much finer run, for halving steps.
TEST(Diagram, CentralDifferenceResidualIsSecondOrder)
{
    const auto j = factored_instance(2, 12, 7, Mode::real);
    const double horizon = 0.1;
    const double coarse = verify_toda(evolve_toda(j, horizon / 10, 10), 1.0).max_residual;
    const double fine = verify_toda(evolve_toda(j, horizon / 20, 20), 1.0).max_residual;
    EXPECT_GT(coarse / fine, 3.5);
    EXPECT_LT(coarse / fine, 4.5);
}
