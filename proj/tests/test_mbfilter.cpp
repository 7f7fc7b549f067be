#include <array>
#include <random>

#include <gtest/gtest.h>

#include <mbz/mbfilter.hpp>

using namespace mbz;

namespace {

const RindlerScale scale02(0.2);

ContourSpec at(double g) {
    ContourSpec c;
    c.abscissa = g;
    return c;
}

} // namespace

// mpmath line integrals over [-60, 60], see tests/oracles/frozen_values.py
TEST(MellinBarnes, Zeta2sMatchesOracle) {
    const auto v = mb_integral(Kernel::zeta2s, SpectralParameter::from_energy(10), scale02, at(0.75));
    const Complex want(-1.2784717273486114067e-4, 1.6284065119017536528e-4);
    EXPECT_LT(std::abs(v.value - want), 1e-12 * std::abs(want) + 1e-17);
    EXPECT_DOUBLE_EQ(v.energy, 10);
}

TEST(MellinBarnes, Beta2sMatchesOracle) {
    const auto v = mb_integral(Kernel::beta2s, SpectralParameter::from_energy(12), scale02, at(0.75));
    const Complex want(1.0769868251373496943e-5, 1.2456452491083393115e-4);
    EXPECT_LT(std::abs(v.value - want), 1e-12 * std::abs(want) + 1e-17);
}

TEST(MellinBarnes, QuadPassMatchesOracle) {
    const auto v = mb_integral(Kernel::zeta2s, SpectralParameter::from_energy(10), scale02, at(0.75), Precision::double_double);
    const Complex want(-1.2784717273486114067e-4, 1.6284065119017536528e-4);
    EXPECT_LT(std::abs(v.value - want), 1e-15 * std::abs(want));
}

TEST(MellinBarnes, ThreadCountDoesNotChangeBits) {
    const auto sp = SpectralParameter::from_energy(33.3);
    const auto a = mb_integral(Kernel::zeta2s, sp, scale02, at(0.6), true, 1);
    const auto b = mb_integral(Kernel::zeta2s, sp, scale02, at(0.6), true, 3);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.derivative, b.derivative);
}

TEST(MellinBarnes, DerivativeMatchesDifference) {
    const double E = 21.7, h = 1e-4;
    const auto c = at(0.75);
    const auto v = mb_integral(Kernel::beta2s, SpectralParameter::from_energy(E), scale02, c, true);
    const Complex d = (mb_integral(Kernel::beta2s, SpectralParameter::from_energy(E + h), scale02, c).value -
                       mb_integral(Kernel::beta2s, SpectralParameter::from_energy(E - h), scale02, c).value) /
                      (2 * h);
    EXPECT_LT(std::abs(v.derivative - d), 1e-7 * std::abs(d));
}

TEST(MellinBarnes, ContourOnPoleRejected) {
    try {
        mb_integral(Kernel::zeta2s, SpectralParameter::from_energy(10), scale02, at(0.5));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ContourOnPole);
    }
}

TEST(MellinBarnes, ScaleOutsideRangeRejected) {
    EXPECT_THROW(RindlerScale(0), Error);
    EXPECT_THROW(RindlerScale(1.5), Error);
}

TEST(ContourShift, PoleFreePairsAgree) {
    std::mt19937_64 g(17);
    std::uniform_real_distribution<double> pick(0.55, 1.4);
    for (int i = 0; i < 20; ++i) {
        const double g1 = pick(g), g2 = pick(g);
        EXPECT_LT(contour_shift_delta(Kernel::zeta2s, SpectralParameter::from_energy(10), scale02, g1, g2), 1e-10)
            << g1 << " " << g2;
    }
}

TEST(ContourShift, StripWithPoleRejected) {
    try {
        contour_shift_delta(Kernel::zeta2s, SpectralParameter::from_energy(10), scale02, 0.3, 0.7);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::PoleInStrip);
    }
}

TEST(ContourShift, ResiduesAccountForCrossedPoles) {
    for (Kernel k : {Kernel::zeta2s, Kernel::beta2s})
        EXPECT_LT(contour_shift_residual(k, SpectralParameter::from_energy(10), scale02, -0.3, 0.75), 1e-10)
            << to_string(k);
}

TEST(ContourShift, PoleListing) {
    const Complex nu(0.5, 5);
    const auto poles = kernel_poles(Kernel::zeta2s, nu, -1.2, 1);
    // nu, nu - 1, 0, 1/2
    EXPECT_EQ(poles.size(), 4u);
}

TEST(Residue, SimpleZero) {
    const Complex s0(0.25, 7.0673625708673469);
    const Complex r = residue_simple_zero(s0);
    EXPECT_GT(std::abs(r), 0);
    EXPECT_LT(std::abs(residue_simple_zero(std::conj(s0)) - std::conj(r)), 1e-9 * std::abs(r));
    try {
        residue_simple_zero(Complex(0.25, 7));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotAZero);
    }
}

TEST(DoublePole, ConstantFactorsGiveZero) {
    auto one = [](Complex) { return Complex(1, 0); };
    const Complex v = circle_integral([&](Complex s) { return one(s) / ((s - 1.0) * (s - 1.0)); }, 1.0, 0.05);
    EXPECT_LT(std::abs(v), 1e-12);
}

TEST(DoublePole, CircleIntegralIsDerivativeOfProduct) {
    const Complex s0(0.25, 7.0673625708);
    auto f = [&](Complex s) { return std::exp(s) * std::cosh(s - s0) / ((s - s0) * (s - s0)); };
    // (e^s cosh(s - s0))' at s0 = e^{s0}
    const Complex want = Complex(0, 2 * M_PI) * std::exp(s0);
    EXPECT_LT(std::abs(circle_integral(f, s0, 0.05) - want), 1e-12);
}

// Stated form: 2 pi i A(s0) B'(s0) + O(eps).  B'(s0) = 0 for the built-in
// pair, so the gap stays 2 pi |e^{s0}| on every eps and never halves.
TEST(DoublePole, DiscrepancyHalvesWithEps) {
    const auto r = double_pole_circle(Complex(0.25, 7.0673625708), 0.05);
    EXPECT_NEAR(r.detail("ratio_1"), 2, 0.2);
    EXPECT_NEAR(r.detail("ratio_2"), 2, 0.2);
    EXPECT_EQ(r.verdict, Verdict::pass);
}

TEST(DoublePole, EpsilonRange) { EXPECT_THROW(double_pole_circle(Complex(0, 0), 0.2), Error); }

TEST(Hadamard, MatchesOracle) {
    auto f = [](Complex z) { return std::exp(z); };
    const std::array<double, 5> ladder{0.1, 0.05, 0.025, 0.0125, 0.00625};
    EXPECT_LT(std::abs(hadamard_finite_part(f, 0, ladder) - Complex(-0.97165951887903052781, 0)), 1e-9);
    const Complex v = hadamard_finite_part(f, Complex(0.25, 3), ladder);
    EXPECT_LT(std::abs(v - Complex(1.2351498019133904614, -0.17606633444163281218)), 1e-9);
}

TEST(Hadamard, LadderIndependent) {
    auto f = [](Complex z) { return std::cos(z) + z * z * z; };
    const std::array<double, 6> a{0.1, 0.05, 0.025, 0.0125, 0.00625, 0.003125};
    const std::array<double, 6> b{0.09, 0.03, 0.01, 0.0033, 0.0011, 0.00037};
    EXPECT_LT(std::abs(hadamard_finite_part(f, 0.3, a) - hadamard_finite_part(f, 0.3, b)), 1e-8);
}

TEST(Hadamard, LadderValidated) {
    auto f = [](Complex z) { return z; };
    const std::array<double, 2> shortl{0.1, 0.05};
    const std::array<double, 3> unsorted{0.1, 0.2, 0.05};
    EXPECT_THROW(hadamard_finite_part(f, 0, shortl), Error);
    EXPECT_THROW(hadamard_finite_part(f, 0, unsorted), Error);
}

TEST(Newton, UnreachableGuessEscapes) {
    try {
        newton_filter_root(Kernel::beta2s, 1.0, scale02, at(0.75));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::BasinEscape);
    }
}

// Filter value at the first beta ordinate: a root would need |psi| ~ 0.
TEST(Newton, BetaFilterAtFirstOrdinate) {
    const double E = 2 * 6.0209489046975966549;
    const auto v = mb_integral(Kernel::beta2s, SpectralParameter::from_energy(E), scale02, at(0.75));
    EXPECT_LT(std::abs(v.value), 1e-9);
}

TEST(ScaleLimit, ShrinksWithScale) {
    double prev = INFINITY;
    for (double a : {0.1, 0.05, 0.025, 0.0125}) {
        const double v = std::abs(mb_integral(Kernel::scale_limit, SpectralParameter::from_energy(10), RindlerScale(a), at(-0.25)).value);
        EXPECT_LT(v, prev);
        prev = v;
    }
}
