// Numerical corollaries of the radial operator: Pruefer phase and node
// counts, Frobenius endpoint classification, deficiency divergence and the
// L^2 test for Bessel eigensolutions.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "audit.hpp"
#include "bessel.hpp"

namespace mbz {

enum class RadialForm {
    // x psi'' + psi' + q psi = 0 with q = (x + a^-2)^2 + E^2
    shifted_square,
    // x f'' + f' + (E - nu^2 - 1/4) f = 0, the eigenvalue equation of
    // -(x f')' + (nu^2 + 1/4) f; needs nu^2 real
    hm_operator,
    // constant potential V, for checks against closed forms
    constant,
};

// Which phase equation to integrate, both for psi'' + psi'/x + V psi = 0.
enum class PruferConvention {
    // theta' = 1 - V sin^2 - (1/x) sin cos, as it is usually quoted
    published,
    // theta' = cos^2 + V sin^2 + (1/x) sin cos, from psi = R sin, psi' = R cos
    standard,
};

struct RadialProblem {
    Complex nu{0.5, 0};
    double x_min = 1e-4;
    double x_max = 10;
    double energy = 0;
    double a = 0.2;
    RadialForm form = RadialForm::shifted_square;
    double constant_V = 1; // used by RadialForm::constant
    bool drop_first_order = false; // omit the (1/x) sin cos term

    void validate() const {
        if (!(x_min >= 1e-4) || !(x_max > x_min)) raise(ErrorKind::ArgumentDomain, "RadialProblem: need 1e-4 <= x_min < x_max");
        if (!(a > 0 && a < 1)) raise(ErrorKind::ArgumentDomain, "RadialProblem: need 0 < a < 1");
        if (form == RadialForm::hm_operator) {
            const Complex n2 = nu * nu;
            if (std::abs(n2.imag()) > 1e-12 * std::max(1.0, std::abs(n2)))
                raise(ErrorKind::ArgumentDomain, "RadialProblem: hm_operator form needs real nu^2");
        }
    }

    double V(double x) const {
        switch (form) {
        case RadialForm::shifted_square: {
            const double s = x + 1 / (a * a);
            return (s * s + energy * energy) / x;
        }
        case RadialForm::hm_operator: return (energy - (nu * nu).real() - 0.25) / x;
        case RadialForm::constant: return constant_V;
        }
        return 0;
    }
};

struct PruferState {
    double x = 0;
    double amplitude = 1;
    double phase = 0;
};

struct PruferTrajectory {
    std::vector<PruferState> states;
    int node_count = 0;
    double phase_advance = 0;
};

// Adaptive Dormand-Prince on (theta, log R).  The amplitude equation is
// R'/R = (1 - theta') cot theta for the published form and
// (1 - V) sin cos - (1/x) cos^2 for the standard one.
inline PruferTrajectory prufer_integrate(const RadialProblem& p,
                                         PruferConvention conv = PruferConvention::published, double theta0 = 0) {
    p.validate();
    namespace ode = boost::numeric::odeint;
    using State = std::array<double, 2>;
    const double w = p.drop_first_order ? 0.0 : 1.0;
    auto rhs = [&](const State& y, State& dy, double x) {
        const double s = std::sin(y[0]), c = std::cos(y[0]), V = p.V(x);
        if (conv == PruferConvention::published) {
            dy[0] = 1 - V * s * s - w * s * c / x;
            // cot theta (1 - theta') simplified so it stays finite at sin = 0
            dy[1] = c * (V * s + w * c / x);
        } else {
            dy[0] = c * c + V * s * s + w * s * c / x;
            dy[1] = (1 - V) * s * c - w * c * c / x;
        }
    };
    State y{theta0, 0.0};
    PruferTrajectory tr;
    auto observe = [&](const State& st, double x) { tr.states.push_back({x, std::exp(st[1]), st[0]}); };
    auto stepper = ode::make_controlled(1e-10, 1e-10, ode::runge_kutta_dopri5<State>());
    const double h0 = 1e-3 * p.x_min;
    try {
        ode::integrate_adaptive(stepper, rhs, y, p.x_min, p.x_max, h0, observe);
    } catch (const ode::step_adjustment_error& e) {
        raise(ErrorKind::StepUnderflow, std::string("prufer_integrate: ") + e.what());
    } catch (const ode::no_progress_error& e) {
        raise(ErrorKind::StepUnderflow, std::string("prufer_integrate: ") + e.what());
    }
    if (!std::isfinite(y[0])) raise(ErrorKind::StepUnderflow, "prufer_integrate: phase became non-finite");
    tr.phase_advance = tr.states.back().phase - tr.states.front().phase;
    tr.node_count = static_cast<int>(std::floor(tr.phase_advance / M_PI));
    return tr;
}

enum class EndpointClass { limit_point, limit_circle };

inline std::string_view to_string(EndpointClass c) {
    return c == EndpointClass::limit_point ? "limit_point" : "limit_circle";
}

struct FrobeniusDetail {
    EndpointClass lemma_class = EndpointClass::limit_point; // rule Re nu < 1/2
    EndpointClass analytic_class = EndpointClass::limit_point; // exponents 1 -+ 2 Re nu > -1
    EndpointClass quadrature_class = EndpointClass::limit_point;
    double exponent_plus = 0;  // 1 - 2 Re nu
    double exponent_minus = 0; // 1 + 2 Re nu
    double fitted_plus = 0;    // exponent recovered from the quadrature ladder
    double fitted_minus = 0;
    bool log_divergence = false; // some exponent equals -1 within 1e-9
};

namespace detail {

// int_lo^hi x^p dx by Gauss-Legendre in u = log x.
inline double power_integral(double p, double lo, double hi) {
    const auto& gl = gauss_legendre<double>(16);
    const int panels = 64;
    const double L0 = std::log(lo), L1 = std::log(hi), h = (L1 - L0) / panels;
    KahanSum<double> acc;
    for (int k = 0; k < panels; ++k)
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double u = L0 + h * (k + 0.5 * (gl.nodes[i] + 1));
            acc.add(0.5 * h * gl.weights[i] * std::exp((p + 1) * u));
        }
    return acc.value();
}

// Exponent p from three nested integrals over [1e-4, 1e-1], [1e-5, 1e-1],
// [1e-6, 1e-1]: successive increments shrink by 10^{-(p+1)}.
inline double fitted_exponent(double p) {
    const double i4 = power_integral(p, 1e-4, 1e-1);
    const double i5 = power_integral(p, 1e-5, 1e-1);
    const double i6 = power_integral(p, 1e-6, 1e-1);
    return -1 - std::log10((i6 - i5) / (i5 - i4));
}

} // namespace detail

// Weighted norm int_0^eps x^{1 -+ 2 Re nu} dx of the two Frobenius branches,
// analytically and by quadrature on [1e-6, 1e-1].
inline FrobeniusDetail frobenius_detail(Complex nu) {
    FrobeniusDetail d;
    const double r = nu.real();
    d.lemma_class = r < 0.5 ? EndpointClass::limit_circle : EndpointClass::limit_point;
    d.exponent_plus = 1 - 2 * r;
    d.exponent_minus = 1 + 2 * r;
    auto both = [](bool a, bool b) { return a && b ? EndpointClass::limit_circle : EndpointClass::limit_point; };
    d.analytic_class = both(d.exponent_plus > -1, d.exponent_minus > -1);
    d.fitted_plus = detail::fitted_exponent(d.exponent_plus);
    d.fitted_minus = detail::fitted_exponent(d.exponent_minus);
    const double tol = 1e-9;
    d.quadrature_class = both(d.fitted_plus > -1 + tol, d.fitted_minus > -1 + tol);
    d.log_divergence = std::abs(d.fitted_plus + 1) <= tol || std::abs(d.fitted_minus + 1) <= tol;
    return d;
}

// Classification by the norm test; lemma_class keeps the Re nu < 1/2 rule
// for comparison.
inline EndpointClass frobenius_classify(Complex nu) {
    require_finite(nu, "frobenius_classify");
    return frobenius_detail(nu).analytic_class;
}

namespace detail {

// log J0(z) for complex z.  Power series for |z| <= 12, otherwise Hankel's
// expansion with P cos w - Q sin w split into its two exponentials.
inline Complex log_bessel_J0(Complex z) {
    if (std::abs(z) <= 12) {
        const Complex q = -z * z / 4.0;
        Complex term = 1, sum = 1;
        for (int k = 1; k < 200; ++k) {
            term *= q / double(k * k);
            sum += term;
            if (std::abs(term) < 1e-17 * std::abs(sum)) break;
        }
        return std::log(sum);
    }
    // term_k = a_k(0) / z^k = prod_{j<=k} -(2j-1)^2 / (8 j z)
    Complex P = 0, Q = 0, term = 1;
    const Complex z8 = 8.0 * z;
    for (int k = 0; k < 30; ++k) {
        if (k > 0) term *= -double((2 * k - 1) * (2 * k - 1)) / (double(k) * z8);
        if (k % 2 == 0) P += (k / 2 % 2 == 0 ? 1.0 : -1.0) * term;
        else Q += ((k - 1) / 2 % 2 == 0 ? 1.0 : -1.0) * term;
        if (k > 2 && std::abs(term) < 1e-17) break;
    }
    const Complex w = z - M_PI / 4;
    const Complex A = 0.5 * (P + Complex(0, 1) * Q); // coefficient of e^{iw}
    const Complex B = 0.5 * (P - Complex(0, 1) * Q); // coefficient of e^{-iw}
    const Complex la = std::log(A) + Complex(0, 1) * w;
    const Complex lb = std::log(B) - Complex(0, 1) * w;
    const Complex big = la.real() > lb.real() ? la : lb, small = la.real() > lb.real() ? lb : la;
    return 0.5 * std::log(2.0 / (M_PI * z)) + big + std::log(1.0 + std::exp(small - big));
}

inline double log_add(double a, double b) {
    if (a == -INFINITY) return b;
    if (b == -INFINITY) return a;
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(-std::abs(a - b)));
}

} // namespace detail

// int_1^X x |x^{-1/2} f(x)|^2 dx for f = J0(e^{-+ i pi/4} x / sqrt 2),
// returned as its logarithm.
inline double log_deficiency_integral(double X, int sign = +1) {
    const Complex rot = std::polar(1 / std::sqrt(2.0), -sign * M_PI / 4);
    const auto& gl = gauss_legendre<double>(16);
    const int panels = static_cast<int>(std::ceil((X - 1) / 0.5));
    const double h = (X - 1) / panels;
    double acc = -INFINITY;
    for (int k = 0; k < panels; ++k)
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double x = 1 + h * (k + 0.5 * (gl.nodes[i] + 1));
            const double logf2 = 2 * detail::log_bessel_J0(rot * x).real();
            acc = detail::log_add(acc, std::log(0.5 * h * gl.weights[i]) + logf2);
        }
    return acc;
}

// The integral should grow like log X if f decays like x^{-1/2}.  Slopes
// dI / d log X over [1e2, 1e3] and [1e3, 1e4] must agree within 15%.
inline AuditReport deficiency_divergence_check() {
    AuditReport r;
    r.claim_id = "deficiency_log_divergence";
    const std::array<double, 3> Xs{1e2, 1e3, 1e4};
    std::array<double, 3> logI{};
    for (int i = 0; i < 3; ++i) logI[i] = log_deficiency_integral(Xs[i]);
    // log of (I_b - I_a) / log 10, kept in log space
    auto log_slope = [&](int a, int b) {
        return logI[b] + std::log(-std::expm1(logI[a] - logI[b])) - std::log(std::log(10.0));
    };
    const double s1 = log_slope(0, 1), s2 = log_slope(1, 2);
    const double log_ratio = s2 - s1;
    r.set_sides(Complex(log_ratio, 0), Complex(0, 0));
    r.abs_discrepancy = std::abs(log_ratio);
    r.rel_discrepancy = std::expm1(std::abs(log_ratio));
    r.verdict = std::abs(std::expm1(log_ratio)) <= 0.15 ? Verdict::pass : Verdict::fail;
    for (int i = 0; i < 3; ++i) r.add("log_integral_X" + std::to_string(int(std::log10(Xs[i]))), logI[i]);
    r.add("log_slope_1", s1);
    r.add("log_slope_2", s2);
    // envelope of the weighted density at large x against the 1/x it would need
    const double x = 1e3;
    const double lf2 = 2 * detail::log_bessel_J0(std::polar(1 / std::sqrt(2.0), -M_PI / 4) * x).real();
    r.add("log_density_at_1e3", lf2);
    r.add("log_envelope_1_over_x_at_1e3", -std::log(x));
    r.notes = "lhs = log(slope_2/slope_1) in log X; rhs = 0 for a logarithmic divergence. "
              "|J0| grows like exp(|Im z|) for complex z, so the density is not O(1/x)";
    return r;
}

// int x |K_nu(x)|^2 dx over [x_min, x_upper] with GL panels in log x.
inline double weighted_K_norm(Complex nu, double lo, double hi) {
    const auto& gl = gauss_legendre<double>(16);
    const double L0 = std::log(lo), L1 = std::log(hi);
    const int panels = std::max(8, static_cast<int>(std::ceil((L1 - L0) / 0.25)));
    const double h = (L1 - L0) / panels;
    KahanSum<double> acc;
    for (int k = 0; k < panels; ++k)
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double u = L0 + h * (k + 0.5 * (gl.nodes[i] + 1));
            const double x = std::exp(u);
            const double K = std::abs(bessel_K(nu, x).value);
            acc.add(0.5 * h * gl.weights[i] * x * x * K * K);
        }
    return acc.value();
}

// Square-integrability of K_nu under x dx.  The body [1e-3, 40] is integrated
// directly; the upper tail is monitored by extending to 45; the origin by
// halving the lower limit three times and reading off the decay ratio of the
// increments.
inline AuditReport eigenfunction_L2_classifier(const SpectralParameter& sp) {
    const Complex nu = sp.order;
    if (std::abs(nu.imag()) > 60) raise(ErrorKind::ArgumentDomain, "eigenfunction_L2_classifier: |Im nu| <= 60");
    AuditReport r;
    r.claim_id = "eigenfunction_l2";
    const double body = weighted_K_norm(nu, 1e-3, 40);
    const double tail = weighted_K_norm(nu, 40, 45);
    std::array<double, 4> lows{1e-3, 5e-4, 2.5e-4, 1.25e-4};
    std::array<double, 3> inc{};
    for (int i = 0; i < 3; ++i) inc[i] = weighted_K_norm(nu, lows[i + 1], lows[i]);
    const double ratio = inc[2] / inc[1];
    const bool tail_ok = tail < 1e-12;
    const bool origin_ok = ratio < 0.99;
    r.set_sides(Complex(body, 0), Complex(body + (origin_ok ? inc[2] * ratio / (1 - ratio) : INFINITY), 0));
    r.verdict = tail_ok && origin_ok ? Verdict::pass : Verdict::divergent;
    r.add("integral_1e-3_40", body);
    r.add("tail_40_45", tail);
    r.add("origin_increment_1", inc[0]);
    r.add("origin_increment_2", inc[1]);
    r.add("origin_increment_3", inc[2]);
    r.add("origin_ratio", ratio);
    r.add("fitted_origin_exponent", -1 - std::log2(ratio));
    r.notes = "lhs = integral over [1e-3, 40]; rhs = lhs plus the geometric extrapolation of the origin increments";
    return r;
}

} // namespace mbz
