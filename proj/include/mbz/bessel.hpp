// Modified Bessel functions K_nu(x), I_nu(x) of complex order, real x > 0.
#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "audit.hpp"
#include "specfun.hpp"

namespace mbz {

struct SpectralParameter {
    double energy = 0;
    Complex order{0.5, 0};

    static SpectralParameter from_energy(double E) { return {E, Complex(0.5, E / 2)}; }
};

struct BesselEval {
    Complex order;
    double argument = 0;
    Complex value;
    double abs_error_estimate = 0;
};

namespace detail {

// Integrand of K on the line t = u + i alpha.
inline Complex k_integrand(Complex nu, double x, double u, double alpha) {
    Complex t(u, alpha);
    return std::exp(-x * std::cosh(t) - nu * t);
}

} // namespace detail

// K_nu(x) = 1/2 int exp(-x cosh t - nu t) dt over the real line, moved to
// Im t = alpha through the saddle sinh t = -nu/x.  The integrand then decays
// double exponentially in u, so the trapezoid rule is a DE rule here; the
// step is halved until successive sums agree.
inline BesselEval bessel_K(Complex nu, double x) {
    if (!(x > 0) || !std::isfinite(x)) raise(ErrorKind::ArgumentDomain, "bessel_K: x must be > 0");
    require_finite(nu, "bessel_K");
    Complex saddle = std::asinh(-nu / x);
    const double lim = M_PI / 2 - 1e-3;
    double alpha = std::clamp(saddle.imag(), -lim, lim);
    const double ca = std::cos(alpha);

    // log|integrand| = -x cos(alpha) cosh u - Re(nu) u + Im(nu) alpha
    auto log_mag = [&](double u) { return -x * ca * std::cosh(u) - nu.real() * u + nu.imag() * alpha; };
    double u_peak = std::asinh(-nu.real() / (x * ca));
    const double peak = log_mag(u_peak);
    const double drop = std::log(1e-18);
    double lo = u_peak, hi = u_peak, w = 0.5;
    while (log_mag(lo) - peak > drop) lo -= w;
    while (log_mag(hi) - peak > drop) hi += w;

    // trapezoid with nested halving on [lo, hi]
    int n = 32;
    double h = (hi - lo) / n;
    KahanSum<Complex> acc;
    double l1 = 0;
    for (int i = 0; i <= n; ++i) {
        Complex f = detail::k_integrand(nu, x, lo + i * h, alpha);
        acc.add((i == 0 || i == n) ? f * 0.5 : f);
        l1 += std::abs(f);
    }
    Complex prev = acc.value() * h;
    double err = INFINITY;
    for (int level = 0; level < 14; ++level) {
        for (int i = 0; i < n; ++i) {
            Complex f = detail::k_integrand(nu, x, lo + (i + 0.5) * h, alpha);
            acc.add(f);
            l1 += std::abs(f);
        }
        n *= 2;
        h /= 2;
        Complex cur = acc.value() * h;
        double diff = std::abs(cur - prev);
        double scale = l1 * h;
        prev = cur;
        if (level >= 2 && diff <= 1e-9 * scale) {
            // trapezoid error on analytic integrands squares with each halving
            err = diff * diff / scale + 64 * epsilon<double>() * scale;
            break;
        }
    }
    if (!std::isfinite(err)) raise(ErrorKind::QuadratureNonConvergence, "bessel_K: step halving did not converge");
    return {nu, x, 0.5 * prev, 0.5 * err};
}

inline constexpr double bessel_I_series_limit = 30;

// I_nu(x) by its power series, started from (x/2)^nu / Gamma(nu+1).
inline BesselEval bessel_I(Complex nu, double x) {
    if (!(x > 0) || !std::isfinite(x)) raise(ErrorKind::ArgumentDomain, "bessel_I: x must be > 0");
    if (x > bessel_I_series_limit) raise(ErrorKind::SeriesOverflow, "bessel_I: series mode limited to x <= 30");
    require_finite(nu, "bessel_I");
    const double q = x * x / 4;
    Complex term = std::exp(nu * std::log(x / 2)) * rgamma<double>(nu + 1.0);
    // if nu+1 is a pole the leading coefficient vanishes; start at the first
    // nonzero term instead
    int k0 = 0;
    while (std::abs(term) == 0 && k0 < 200) {
        ++k0;
        term = std::exp((nu + 2.0 * k0) * std::log(x / 2)) * rgamma<double>(nu + double(k0) + 1.0) /
               std::tgamma(k0 + 1.0);
    }
    KahanSum<Complex> acc;
    double l1 = 0;
    for (int k = k0; k < 2000; ++k) {
        acc.add(term);
        l1 += std::abs(term);
        Complex next = term * q / (double(k + 1) * (double(k + 1) + nu));
        if (k > x && std::abs(next) < 1e-18 * std::abs(acc.value())) break;
        term = next;
    }
    return {nu, x, acc.value(), 16 * epsilon<double>() * l1};
}

// |x W(K, I) - 1| with W(K, I) = K I' - K' I; derivatives by central
// differences at h = 1e-5 x and h/2, Richardson-combined.
inline double wronskian_check(Complex nu, double x) {
    auto K = [&](double y) { return bessel_K(nu, y).value; };
    auto I = [&](double y) { return bessel_I(nu, y).value; };
    auto deriv = [&](auto&& f) {
        const double h = x * 1e-5;
        Complex d1 = (f(x + h) - f(x - h)) / (2 * h);
        Complex d2 = (f(x + h / 2) - f(x - h / 2)) / h;
        return (4.0 * d2 - d1) / 3.0;
    };
    Complex k = K(x), i = I(x);
    Complex W = k * deriv(I) - deriv(K) * i;
    return std::abs(x * W - 1.0);
}

enum class AsymptoticRegime { small_x, large_x };

// Fit the leading small-x power or large-x decay of K_nu and compare it with
// the lemma's prediction.  Ladders are geometric: 1e-3..1e-1 and 10..40.
inline AuditReport asymptotic_validator(Complex nu, AsymptoticRegime regime) {
    AuditReport r;
    std::vector<double> xs, ys;
    const int points = 9;
    if (regime == AsymptoticRegime::small_x) {
        r.claim_id = "bessel_small_x";
        if (std::abs(nu.real()) >= 0.5)
            raise(ErrorKind::ArgumentDomain, "asymptotic_validator: small_x needs |Re nu| < 1/2");
        const bool log_case = std::abs(nu) < 1e-12;
        for (int k = 0; k < points; ++k) {
            double x = 1e-3 * std::pow(100.0, double(k) / (points - 1));
            Complex K = bessel_K(nu, x).value;
            xs.push_back(std::log(x));
            ys.push_back(log_case ? K.real() : std::log(std::abs(K)));
        }
        auto [slope, icpt] = linear_fit(xs, ys);
        if (log_case) {
            // K_0 = -log(x/2) - gamma + O(x^2 log x): coefficient of log x is -1
            r.set_sides(Complex(slope, 0), Complex(-1, 0));
            r.notes = "nu = 0: logarithmic singularity; fitted coefficient of log x instead of a power";
            r.verdict = r.rel_discrepancy <= 0.02 ? Verdict::pass : Verdict::fail;
        } else if (std::abs(nu.real()) < 1e-12) {
            r.set_sides(Complex(slope, 0), Complex(0, 0));
            r.notes = "Re nu = 0: both x^{+nu} and x^{-nu} terms have unit modulus; no power law to fit";
            r.verdict = Verdict::inconclusive;
        } else {
            const double predicted = -std::abs(nu.real());
            r.set_sides(Complex(slope, 0), Complex(predicted, 0));
            r.verdict = r.rel_discrepancy <= 0.02 ? Verdict::pass : Verdict::fail;
            r.notes = "log|K| against log x; prediction -|Re nu| from the Gamma(nu)/2 (x/2)^{-nu} term";
        }
        r.add("fitted_power", slope);
        r.add("intercept", icpt);
    } else {
        r.claim_id = "bessel_large_x";
        for (int k = 0; k < points; ++k) {
            double x = 10 * std::pow(4.0, double(k) / (points - 1));
            Complex K = bessel_K(nu, x).value;
            xs.push_back(x);
            ys.push_back(std::log(std::abs(K) * std::sqrt(x)));
        }
        auto [slope, icpt] = linear_fit(xs, ys);
        r.set_sides(Complex(slope, 0), Complex(-1, 0));
        r.verdict = r.rel_discrepancy <= 0.02 ? Verdict::pass : Verdict::fail;
        r.notes = "log(|K| sqrt x) against x; prediction -1 from x^{-1/2} e^{-x}";
        r.add("fitted_rate", slope);
        r.add("intercept", icpt);
    }
    return r;
}

} // namespace mbz
