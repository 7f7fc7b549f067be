#include <random>

#include <gtest/gtest.h>

#include <mbz/bessel.hpp>

using namespace mbz;

namespace {

void expect_close(Complex got, Complex want, double rel) {
    EXPECT_LE(std::abs(got - want), rel * std::abs(want)) << "got " << got << " want " << want;
}

} // namespace

// reference values from tests/oracles/frozen_values.py
TEST(BesselK, MatchesOracle) {
    expect_close(bessel_K(Complex(0.5, 5), 2).value, Complex(-4.93868841129614062e-4, -1.5986420533301669565e-4), 1e-10);
    expect_close(bessel_K(Complex(0.3, 0), 0.01).value, Complex(6.8901026382927695432, 0), 1e-12);
    expect_close(bessel_K(Complex(0.5, 20), 5).value, Complex(-1.7825062039866159847e-14, -7.4048354254212745532e-16),
                 1e-8);
    expect_close(bessel_K(Complex(0, 0), 10).value, Complex(1.7780062316167651811e-5, 0), 1e-12);
}

TEST(BesselK, HalfOrderClosedForm) {
    for (double x : {0.1, 1.0, 7.5}) expect_close(bessel_K(Complex(0.5, 0), x).value, std::sqrt(M_PI / (2 * x)) * std::exp(-x), 1e-13);
}

TEST(BesselI, MatchesOracle) {
    expect_close(bessel_I(Complex(0.5, 5), 2).value, Complex(-0.14039594921270273725, 216.728622248142792), 1e-11);
}

TEST(BesselK, OrderSymmetry) {
    std::mt19937_64 g(3);
    std::uniform_real_distribution<double> re(-2, 2), im(-20, 20), xs(0.05, 20);
    for (int i = 0; i < 100; ++i) {
        const Complex nu(re(g), im(g));
        const double x = xs(g);
        const Complex a = bessel_K(nu, x).value, b = bessel_K(-nu, x).value;
        EXPECT_LE(std::abs(a - b), 1e-10 * std::abs(a)) << nu << " " << x;
    }
}

TEST(BesselK, Conjugation) {
    std::mt19937_64 g(4);
    std::uniform_real_distribution<double> re(-2, 2), im(-20, 20), xs(0.05, 20);
    for (int i = 0; i < 100; ++i) {
        const Complex nu(re(g), im(g));
        const double x = xs(g);
        const Complex a = bessel_K(nu, x).value, b = bessel_K(std::conj(nu), x).value;
        EXPECT_LE(std::abs(std::conj(a) - b), 1e-10 * std::abs(a));
    }
}

TEST(BesselK, OdeResidual) {
    std::mt19937_64 g(8);
    std::uniform_real_distribution<double> im(-10, 10), xs(0.5, 10);
    for (int i = 0; i < 50; ++i) {
        const Complex nu(0.5, im(g));
        const double x = xs(g), h = 1e-3 * x;
        auto K = [&](double y) { return bessel_K(nu, y).value; };
        const Complex k0 = K(x), kp = K(x + h), km = K(x - h);
        const Complex d1 = (kp - km) / (2 * h), d2 = (kp - 2.0 * k0 + km) / (h * h);
        const Complex res = x * x * d2 + x * d1 - (x * x + nu * nu) * k0;
        EXPECT_LT(std::abs(res), 1e-6 * std::max(1.0, std::abs(k0)) * std::max(1.0, std::abs(nu * nu)));
    }
}

TEST(Wronskian, Examples) {
    EXPECT_LT(wronskian_check(Complex(0.5, 0), 1), 1e-9);
    EXPECT_LT(wronskian_check(Complex(0.5, 5), 2), 1e-7);
    EXPECT_LT(wronskian_check(Complex(0, 0), 10), 1e-7);
}

TEST(Wronskian, RandomSamples) {
    std::mt19937_64 g(9);
    std::uniform_real_distribution<double> im(-10, 10), xs(0.2, 12);
    for (int i = 0; i < 100; ++i) EXPECT_LT(wronskian_check(Complex(0.5, im(g)), xs(g)), 1e-7);
}

TEST(Bessel, DomainErrors) {
    EXPECT_THROW(bessel_K(Complex(0.5, 0), 0), Error);
    EXPECT_THROW(bessel_I(Complex(0.5, 0), -1), Error);
    try {
        bessel_I(Complex(0.5, 0), 31);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::SeriesOverflow);
    }
}

TEST(Asymptotics, LargeXDecayRate) {
    const AuditReport r = asymptotic_validator(Complex(0.5, 4), AsymptoticRegime::large_x);
    EXPECT_EQ(r.verdict, Verdict::pass);
    EXPECT_NEAR(r.detail("fitted_rate"), -1, 0.02);
}

// Over 1e-3..1e-1 the companion term Gamma(-nu)/2 (x/2)^{nu} still matters at
// nu = 0.3: the least-squares slope of log K_0.3 is -0.35059131 (mpmath), so the
// fit misses -0.3 by 17% and the verdict is fail.
TEST(Asymptotics, SmallXFitMatchesOracleSlope) {
    const AuditReport r = asymptotic_validator(Complex(0.3, 0), AsymptoticRegime::small_x);
    EXPECT_NEAR(r.detail("fitted_power"), -0.35059131, 1e-6);
    EXPECT_NEAR(r.detail("intercept"), 0.28382344, 1e-6);
}

TEST(Asymptotics, SmallXPowerWithinTwoPercent) {
    const AuditReport r = asymptotic_validator(Complex(0.3, 0), AsymptoticRegime::small_x);
    EXPECT_NEAR(r.detail("fitted_power"), -0.3, 0.006);
    EXPECT_EQ(r.verdict, Verdict::pass);
}

TEST(Asymptotics, OrderZeroFlaggedLogarithmic) {
    const AuditReport r = asymptotic_validator(Complex(0, 0), AsymptoticRegime::small_x);
    EXPECT_NE(r.notes.find("logarithmic"), std::string::npos);
    EXPECT_EQ(r.verdict, Verdict::pass);
}

TEST(Asymptotics, SmallXStripEnforced) {
    EXPECT_THROW(asymptotic_validator(Complex(0.7, 0), AsymptoticRegime::small_x), Error);
}
