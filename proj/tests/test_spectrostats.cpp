#include <gtest/gtest.h>

#include <mbz/spectrostats.hpp>

using namespace mbz;

namespace {

const ZeroCatalog& zeta200() {
    static const ZeroCatalog c = scan_zeros(LFunction::zeta, 200);
    return c;
}

} // namespace

TEST(Unfold, FirstFiftyZerosHaveUnitSpacing) {
    std::vector<ZeroRecord> first(zeta200().records.begin(), zeta200().records.begin() + 50);
    const auto u = unfold(first, 0, 200);
    EXPECT_NEAR(mean(u.spacings()), 1.0, 0.1);
}

TEST(Unfold, EveryWindowOfFiftyHasUnitSpacing) {
    const auto& r = zeta200().records;
    for (std::size_t k = 0; k + 50 <= r.size(); k += 7) {
        std::vector<ZeroRecord> w(r.begin() + k, r.begin() + k + 50);
        EXPECT_NEAR(mean(unfold(w, 0, 200).spacings()), 1.0, 0.1) << k;
    }
}

TEST(Unfold, SmallShiftLeavesSpacings) {
    auto shifted = zeta200().records;
    for (auto& z : shifted) z.ordinate += 1e-6;
    const auto a = unfold(zeta200().records, 0, 201).spacings();
    const auto b = unfold(shifted, 0, 201).spacings();
    // the shift moves each spacing by delta times the change of the smooth density
    const auto& z = zeta200().records;
    auto rho = [](double t) { return std::log(t / (2 * M_PI)) / (2 * M_PI); };
    for (std::size_t i = 0; i < a.size(); ++i)
        EXPECT_NEAR(a[i], b[i], 1.05e-6 * (rho(z[i + 1].ordinate) - rho(z[i].ordinate)) + 1e-12) << i;
}

TEST(Unfold, SparseWindowRejected) {
    try {
        unfold(zeta200().records, 300, 400);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::WindowTooSparse);
    }
}

TEST(Wigner, DensityNormalised) {
    EXPECT_NEAR(wigner_cdf(50), 1, 1e-15);
    EXPECT_EQ(wigner_cdf(0), 0);
    // mean of the surmise is 1
    double m = 0;
    for (double s = 0.0005; s < 8; s += 0.001) m += s * wigner_pdf(s) * 0.001;
    EXPECT_NEAR(m, 1, 1e-6);
}

TEST(Spacing, SyntheticSurmisePasses) {
    const auto r = spacing_statistic(sample_wigner(10000, 1));
    EXPECT_LT(r.detail("ks_distance"), 0.02);
    EXPECT_EQ(r.verdict, Verdict::pass);
}

TEST(Spacing, PoissonRejected) {
    const auto r = spacing_statistic(sample_poisson(10000, 2));
    EXPECT_EQ(r.verdict, Verdict::fail);
    EXPECT_GT(r.detail("ks_distance"), 0.1);
}

TEST(Spacing, SamplersAreSeedDeterministic) {
    EXPECT_EQ(sample_wigner(100, 7), sample_wigner(100, 7));
    EXPECT_NE(sample_wigner(100, 7), sample_wigner(100, 8));
}

TEST(Spacing, ZetaBelowTwoHundredIsSampleLimited) {
    const auto r = spacing_vs_gue(unfold(zeta200().records, 0, 200));
    EXPECT_EQ(r.verdict, Verdict::inconclusive);
    EXPECT_EQ(r.detail("spacings"), 78);
    EXPECT_LT(r.detail("ks_distance"), 0.15);
}

TEST(PairCorrelation, SineKernelLimits) {
    EXPECT_EQ(sine_kernel_r2(0), 0);
    EXPECT_LT(sine_kernel_r2(1e-3), 1e-5);
    EXPECT_NEAR(sine_kernel_r2(1), 1, 1e-15);
    EXPECT_NEAR(sine_kernel_r2(50.5), 1, 1e-4);
}

TEST(PairCorrelation, PicketFenceConcentratesAtIntegers) {
    std::vector<double> fence;
    for (int i = 0; i < 200; ++i) fence.push_back(i);
    const auto u = from_unfolded(fence);
    const auto v = pair_correlation_values(u, {0.5, 1.0, 1.5, 2.0});
    // Gaussian window tails leave ~1.5e-5 at half-integers
    EXPECT_LT(v[0], 1e-4);
    EXPECT_GT(v[1], 3.5);
    EXPECT_LT(v[2], 1e-4);
    EXPECT_GT(v[3], 3.5);
}

TEST(PairCorrelation, SyntheticPoissonIsFlat) {
    std::vector<double> pts;
    double x = 0;
    for (double s : sample_poisson(20000, 3)) pts.push_back(x += s);
    const auto v = pair_correlation_values(from_unfolded(pts), {0.5, 1.0, 2.0});
    for (double r : v) EXPECT_NEAR(r, 1, 0.05);
}

TEST(PairCorrelation, ZetaDeviationReported) {
    const auto r = pair_correlation(unfold(zeta200().records, 0, 200), default_omega_grid(0.5, 2));
    EXPECT_LT(r.detail("mean_abs_deviation"), 0.2);
    EXPECT_EQ(r.verdict, Verdict::inconclusive);
}

TEST(OscillatoryDensity, SinglePrimeIsCosineTrain) {
    const double period = 2 * M_PI / std::log(2.0);
    const auto v = oscillatory_density({3.0, 3.0 + period, 3.0 + 2 * period}, 2, oscillatory_sigma,
                                       ExplicitSign::published, false);
    EXPECT_NEAR(v[0], v[1], 1e-12);
    EXPECT_NEAR(v[0], v[2], 1e-12);
}

TEST(OscillatoryDensity, LimitEnforced) {
    try {
        oscillatory_density({10.0}, 2000000);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::LimitTooLarge);
    }
}

TEST(OscillatoryDensity, UniformGridMatchesDirect) {
    std::vector<double> grid;
    for (int j = 0; j < 300; ++j) grid.push_back(10 + 0.01 * j);
    const auto a = oscillatory_density(grid, 10000);
    const auto b = oscillatory_density_uniform(10, 0.01, 300, 10000);
    for (std::size_t j = 0; j < grid.size(); ++j) EXPECT_NEAR(a[j], b[j], 1e-10);
}

TEST(OscillatoryDensity, MinusSignPeaksOnZeros) {
    std::vector<double> ords;
    for (int i = 0; i < 10; ++i) ords.push_back(zeta200().records[i].ordinate);
    const auto m = match_density_peaks(ords, 1000000, oscillatory_sigma, ExplicitSign::standard);
    EXPECT_LT(m.worst, 0.01);
}

TEST(OscillatoryDensity, PeaksWithinTolerance) {
    const auto r = oscillatory_density_audit(zeta200());
    EXPECT_LT(r.detail("worst_offset_published_sign"), 0.2);
    EXPECT_LT(r.detail("peak_drift_sigma_doubled_standard_sign"), 0.05);
    EXPECT_EQ(r.verdict, Verdict::pass);
}

TEST(TraceI, EvenPartSettles) {
    const auto r = trace_I_of_a(0.2, zeta200(), 79);
    EXPECT_LT(r.detail("even_last_increment"), 1e-4);
    EXPECT_EQ(r.detail("odd_sum_symmetric"), 0);
    EXPECT_NEAR(r.detail("xi_prime_0"), -0.011547854483060516907, 1e-9);
}

TEST(TraceI, UnitScaleDropsLogTerm) { EXPECT_EQ(trace_I_of_a(1, zeta200(), 50).detail("log_a"), 0); }

TEST(TraceI, CapBeyondCatalogRejected) {
    try {
        trace_I_of_a(0.2, zeta200(), 100);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::IncompleteCatalog);
    }
}

TEST(TraceI, ReorderingInvariant) {
    ZeroCatalog rev = zeta200();
    std::reverse(rev.records.begin(), rev.records.end());
    const auto a = trace_I_of_a(0.2, zeta200(), 79), b = trace_I_of_a(0.2, rev, 79);
    EXPECT_EQ(a.detail("even_sum_positive_gamma"), b.detail("even_sum_positive_gamma"));
}

TEST(WeilPrimeSide, PrimeSumGrowsLogarithmically) {
    const auto r = weil_prime_side(1000000, zeta200());
    EXPECT_NEAR(r.detail("phihat_0"), M_PI / 4, 1e-15);
    EXPECT_NEAR(r.detail("prime_growth_per_log_n"), M_PI / 2, 0.05);
    EXPECT_EQ(r.verdict, Verdict::divergent);
}

TEST(TraceClass, ClosedFormSides) {
    const auto r2 = trace_class_audit(2, 0.2, zeta200(), 79);
    EXPECT_NEAR(r2.rhs.real(), -0.16 * M_PI * M_PI / 6, 1e-15);
    const auto r4 = trace_class_audit(4, 0.2, zeta200(), 79);
    EXPECT_NEAR(r4.rhs.real(), std::pow(0.4, 4) * std::pow(M_PI, 4) / 90, 1e-15);
    EXPECT_EQ(r2.verdict, Verdict::fail);
}

TEST(TraceClass, SlowSeriesFlagged) {
    const auto r = trace_class_audit(1.01, 0.2, zeta200(), 79);
    EXPECT_EQ(r.verdict, Verdict::inconclusive);
    EXPECT_THROW(trace_class_audit(1, 0.2, zeta200(), 79), Error);
}

TEST(Fredholm, SeriesSidesReported) {
    const auto r = fredholm_audit(0.4, 0.2, 40);
    EXPECT_NEAR(r.detail("x"), 0.16, 1e-15);
    EXPECT_LT(std::abs(r.detail("lhs_change_k_max_doubled")), 1e-14);
    EXPECT_NEAR(r.rhs.imag(), M_PI, 1e-12);
}

TEST(Fredholm, DivergentSeriesRejected) {
    try {
        fredholm_audit(0.9, 0.6, 10);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::SeriesDivergent);
    }
}

TEST(Audits, Deterministic) {
    const auto a = trace_I_of_a(0.2, zeta200(), 79), b = trace_I_of_a(0.2, zeta200(), 79);
    EXPECT_EQ(a.lhs, b.lhs);
    EXPECT_EQ(a.details, b.details);
}
