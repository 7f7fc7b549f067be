// Complex Gamma, zeta-type functions, continuous arguments and the von
// Mangoldt sieve.  Everything is templated on the real scalar so the filter
// code can run in double or in binary128.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "core.hpp"

namespace mbz {

namespace detail {

template <class Real> struct SeriesParams;
template <> struct SeriesParams<double> {
    static constexpr double stirling_radius = 15;
    static constexpr int stirling_terms = 10;
    static constexpr int em_order = 12;
    static constexpr double em_base = 20;
    static constexpr double em_pad = 10;
};
template <> struct SeriesParams<Quad> {
    static constexpr double stirling_radius = 25;
    static constexpr int stirling_terms = 20;
    static constexpr int em_order = 24;
    static constexpr double em_base = 30;
    static constexpr double em_pad = 25;
};

// log n, n = 0..N-1, grown on demand.
template <class Real> const Real& log_int(std::size_t n) {
    static thread_local std::vector<Real> table{Real(0), Real(0)};
    using std::log;
    while (table.size() <= n) table.push_back(log(Real(table.size())));
    return table[n];
}

template <class C> inline bool near_nonpositive_integer(const C& z, double tol) {
    double re = to_double(z.real()), im = to_double(z.imag());
    if (re > 0.5) return false;
    double r = std::round(re);
    return r <= 0 && std::hypot(re - r, im) < tol;
}

// cot(pi z) without overflow for large |Im z|.
template <class C> C cot_pi(const C& z) {
    using std::exp;
    using R = decltype(z.real());
    const C i(R(0), R(1));
    C x = pi<R>() * z;
    if (z.imag() >= 0) {
        C w = exp(R(2) * i * x);
        return i * (w + R(1)) / (w - R(1));
    }
    C w = exp(R(-2) * i * x);
    return i * (R(1) + w) / (R(1) - w);
}

// lnGamma by Stirling after an upward shift; analytic branch for Re z > 0.
template <class Real> complex_t<Real> log_gamma_right(complex_t<Real> z) {
    using C = complex_t<Real>;
    using std::abs;
    using std::log;
    const Real R = Real(SeriesParams<Real>::stirling_radius);
    C shift_log(0);
    while (abs(z) < R) {
        shift_log += log(z);
        z += Real(1);
    }
    const auto& b = bernoulli_even<Real>();
    C inv = Real(1) / z, inv2 = inv * inv, pw = inv;
    C series(0);
    for (int k = 1; k <= SeriesParams<Real>::stirling_terms; ++k) {
        series += b[k - 1] / (Real(2 * k) * Real(2 * k - 1)) * pw;
        pw *= inv2;
    }
    const Real half_log_2pi = log(Real(2) * pi<Real>()) / Real(2);
    return (z - Real(0.5)) * log(z) - z + half_log_2pi + series - shift_log;
}

// Gamma for Re z >= 1/2 with the upward shift folded into one product.
template <class Real> complex_t<Real> gamma_right(complex_t<Real> z) {
    using C = complex_t<Real>;
    using std::abs;
    using std::exp;
    using std::log;
    const Real R = Real(SeriesParams<Real>::stirling_radius);
    C prod(1);
    while (abs(z) < R) {
        prod *= z;
        z += Real(1);
    }
    const auto& b = bernoulli_even<Real>();
    C inv = Real(1) / z, inv2 = inv * inv, pw = inv;
    C series(0);
    for (int k = 1; k <= SeriesParams<Real>::stirling_terms; ++k) {
        series += b[k - 1] / (Real(2 * k) * Real(2 * k - 1)) * pw;
        pw *= inv2;
    }
    const Real half_log_2pi = log(Real(2) * pi<Real>()) / Real(2);
    return exp((z - Real(0.5)) * log(z) - z + half_log_2pi + series) / prod;
}

inline Complex gamma_lanczos(Complex z) {
    static constexpr double g = 7;
    static constexpr std::array<double, 9> c{0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                             771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                             -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    if (z.real() < 0.5) {
        const double p = M_PI;
        return p / (std::sin(p * z) * gamma_lanczos(1.0 - z));
    }
    z -= 1.0;
    Complex x = c[0];
    for (int i = 1; i < 9; ++i) x += c[i] / (z + double(i));
    Complex t = z + g + 0.5;
    return std::sqrt(2 * M_PI) * std::exp((z + 0.5) * std::log(t) - t) * x;
}

} // namespace detail

// Gamma(s).  Lanczos (g = 7) in double, shifted Stirling in binary128;
// reflection below Re s = 1/2 in both.
template <class Real = double> complex_t<Real> gamma(const complex_t<Real>& s) {
    if (detail::near_nonpositive_integer(s, 1e-12)) raise(ErrorKind::PoleProximity, "gamma: too close to a pole");
    if constexpr (std::is_same_v<Real, double>) {
        require_finite(s, "gamma");
        return detail::gamma_lanczos(s);
    } else {
        using std::exp;
        using std::sin;
        if (s.real() < Real(0.5)) {
            complex_t<Real> one_minus = Real(1) - s;
            return pi<Real>() / (sin(pi<Real>() * s) * detail::gamma_right<Real>(one_minus));
        }
        return detail::gamma_right<Real>(s);
    }
}

inline Complex gamma(double re, double im = 0) { return gamma<double>(Complex(re, im)); }

// 1/Gamma, zero at the poles.
template <class Real = double> complex_t<Real> rgamma(const complex_t<Real>& s) {
    if (detail::near_nonpositive_integer(s, 1e-14)) return complex_t<Real>(0);
    return Real(1) / gamma<Real>(s);
}

// log Gamma.  For Re s > 0 this is the analytic branch continued from the
// positive axis; on the left it comes from reflection and is only defined
// modulo 2 pi i.
template <class Real = double> complex_t<Real> log_gamma(const complex_t<Real>& s) {
    if (detail::near_nonpositive_integer(s, 1e-12)) raise(ErrorKind::PoleProximity, "log_gamma: too close to a pole");
    using std::log;
    using std::sin;
    if (s.real() > Real(0)) return detail::log_gamma_right<Real>(s);
    complex_t<Real> one_minus = Real(1) - s;
    return log(pi<Real>()) - log(sin(pi<Real>() * s)) - detail::log_gamma_right<Real>(one_minus);
}

// digamma psi(s) = Gamma'(s)/Gamma(s).
template <class Real = double> complex_t<Real> digamma(complex_t<Real> s) {
    using C = complex_t<Real>;
    using std::log;
    if (detail::near_nonpositive_integer(s, 1e-12)) raise(ErrorKind::PoleProximity, "digamma: too close to a pole");
    if (s.real() < Real(0.5)) {
        C one_minus = Real(1) - s;
        return digamma<Real>(one_minus) - pi<Real>() * detail::cot_pi(s);
    }
    using std::abs;
    const Real R = Real(detail::SeriesParams<Real>::stirling_radius);
    C shift(0);
    while (abs(s) < R) {
        shift += Real(1) / s;
        s += Real(1);
    }
    const auto& b = bernoulli_even<Real>();
    C inv2 = Real(1) / (s * s), pw = inv2, series(0);
    for (int k = 1; k <= detail::SeriesParams<Real>::stirling_terms; ++k) {
        series += b[k - 1] / Real(2 * k) * pw;
        pw *= inv2;
    }
    return log(s) - Real(0.5) / s - series - shift;
}

namespace detail {

// Euler-Maclaurin tail for sum_{n >= 0} (u0 + step*n)^{-s}, starting at u0:
// integral + half endpoint + Bernoulli corrections.  Returns the correction
// part only (no integral), since callers combine integrals differently.
template <class Real>
complex_t<Real> em_corrections(const complex_t<Real>& s, const Real& u0, const Real& log_u0, const Real& step) {
    using C = complex_t<Real>;
    using std::exp;
    const auto& c = bernoulli_over_factorial<Real>();
    C u_pow = exp(-s * log_u0); // u0^{-s}
    C total = u_pow / Real(2);
    // k-th term: c_k step^{2k-1} (s)_{2k-1} u0^{-s-2k+1}
    C poch = s;
    C term_base = u_pow * step / u0; // step * u0^{-s-1}
    Real step2 = step * step, inv_u2 = Real(1) / (u0 * u0);
    for (int k = 1; k <= SeriesParams<Real>::em_order; ++k) {
        total += c[k - 1] * poch * term_base;
        poch *= (s + Real(2 * k - 1)) * (s + Real(2 * k));
        term_base *= step2 * inv_u2;
    }
    return total;
}

template <class Real> std::size_t em_cutoff(const complex_t<Real>& s) {
    using std::abs;
    double t = std::abs(to_double(s.imag()));
    double re = to_double(s.real());
    double n = std::max(SeriesParams<Real>::em_base, t) + SeriesParams<Real>::em_pad + std::max(0.0, -re);
    return static_cast<std::size_t>(std::ceil(n));
}

} // namespace detail

template <class Real = double> complex_t<Real> zeta(const complex_t<Real>& s);

namespace detail {

// smallest prime factor, grown on demand
inline const std::vector<std::uint32_t>& spf_table(std::size_t n) {
    static thread_local std::vector<std::uint32_t> spf;
    if (spf.size() <= n) {
        std::size_t m = std::max<std::size_t>(2 * n, 1024);
        spf.assign(m + 1, 0);
        for (std::size_t i = 2; i <= m; ++i)
            if (spf[i] == 0)
                for (std::size_t j = i; j <= m; j += i)
                    if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
    }
    return spf;
}

// n^{-s} for n = 0..N.  In binary128 only prime powers get an exp and the
// rest are products, which is several times cheaper than one exp per n.
template <class Real> const std::vector<complex_t<Real>>& power_table(const complex_t<Real>& s, std::size_t N) {
    using C = complex_t<Real>;
    using std::exp;
    static thread_local std::vector<C> v;
    v.resize(N + 1);
    v[0] = C(0);
    if (N >= 1) v[1] = C(1);
    if constexpr (std::is_same_v<Real, double>) {
        for (std::size_t n = 2; n <= N; ++n) v[n] = exp(-s * log_int<Real>(n));
    } else {
        const auto& spf = spf_table(N);
        for (std::size_t n = 2; n <= N; ++n) {
            std::size_t p = spf[n];
            v[n] = (p == n) ? exp(-s * log_int<Real>(n)) : v[p] * v[n / p];
        }
    }
    return v;
}

template <class Real> complex_t<Real> zeta_em(const complex_t<Real>& s) {
    using C = complex_t<Real>;
    using std::exp;
    const std::size_t N = em_cutoff<Real>(s);
    KahanSum<C> acc;
    const auto& pw = power_table<Real>(s, N);
    for (std::size_t n = 1; n < N; ++n) acc.add(pw[n]);
    const Real uN = Real(N);
    const Real& lN = log_int<Real>(N);
    C integral = exp((Real(1) - s) * lN) / (s - Real(1));
    acc.add(integral);
    acc.add(em_corrections<Real>(s, uN, lN, Real(1)));
    return acc.value();
}

} // namespace detail

// Riemann zeta by Euler-Maclaurin; functional equation for Re s < -1.
template <class Real> complex_t<Real> zeta(const complex_t<Real>& s) {
    using C = complex_t<Real>;
    using std::abs;
    using std::exp;
    using std::log;
    using std::sin;
    if (abs(s - Real(1)) < Real(1e-10)) raise(ErrorKind::PoleProximity, "zeta: too close to s = 1");
    if (s.real() < Real(-1)) {
        C one_minus = Real(1) - s;
        const Real p = pi<Real>();
        return exp(s * log(Real(2)) + (s - Real(1)) * log(p)) * sin(p * s / Real(2)) * gamma<Real>(one_minus) *
               detail::zeta_em<Real>(one_minus);
    }
    return detail::zeta_em<Real>(s);
}

inline Complex zeta(double re, double im = 0) { return zeta<double>(Complex(re, im)); }

// Hurwitz zeta(s, a) for 0 < a <= 1.
template <class Real = double> complex_t<Real> hurwitz_zeta(const complex_t<Real>& s, const Real& a) {
    using C = complex_t<Real>;
    using std::abs;
    using std::exp;
    using std::log;
    if (!(a > Real(0) && a <= Real(1))) raise(ErrorKind::ArgumentDomain, "hurwitz_zeta: need 0 < a <= 1");
    if (abs(s - Real(1)) < Real(1e-10)) raise(ErrorKind::PoleProximity, "hurwitz_zeta: too close to s = 1");
    const std::size_t N = detail::em_cutoff<Real>(s);
    KahanSum<C> acc;
    for (std::size_t n = 0; n < N; ++n) acc.add(exp(-s * log(Real(n) + a)));
    const Real u = Real(N) + a, lu = log(u);
    acc.add(exp((Real(1) - s) * lu) / (s - Real(1)));
    acc.add(detail::em_corrections<Real>(s, u, lu, Real(1)));
    return acc.value();
}

namespace detail {

// expm1(w)/w, analytic at 0.
template <class C> C expm1_over(const C& w) {
    using std::abs;
    using std::exp;
    using R = decltype(w.real());
    if (abs(w) < R(0.5)) {
        C term(1), sum(1);
        for (int n = 1; n < 60; ++n) {
            term *= w / R(n + 1);
            sum += term;
            if (abs(term) < epsilon<R>() * R(1e-2)) break;
        }
        return sum;
    }
    return (exp(w) - R(1)) / w;
}

} // namespace detail

// Dirichlet beta.  Summed in pairs f(m) = (4m+1)^{-s} - (4m+3)^{-s} so that
// the s = 1 singularities of the two Hurwitz pieces never appear.
template <class Real = double> complex_t<Real> dirichlet_beta(const complex_t<Real>& s) {
    using C = complex_t<Real>;
    using std::exp;
    using std::log;
    const std::size_t M = detail::em_cutoff<Real>(s);
    KahanSum<C> acc;
    const auto& pw = detail::power_table<Real>(s, 4 * M + 3);
    for (std::size_t m = 0; m < M; ++m) {
        acc.add(pw[4 * m + 1]);
        acc.add(-pw[4 * m + 3]);
    }
    const Real u1 = Real(4 * M + 1), u3 = Real(4 * M + 3);
    const Real l1 = log(u1), l3 = log(u3);
    // integral_M^inf f = (u1^{1-s} - u3^{1-s}) / (4(s-1))
    const Real L = l1 - l3;
    C w = (Real(1) - s) * L;
    acc.add(-exp((Real(1) - s) * l3) * L * detail::expm1_over(w) / Real(4));
    acc.add(detail::em_corrections<Real>(s, u1, l1, Real(4)));
    acc.add(-detail::em_corrections<Real>(s, u3, l3, Real(4)));
    return acc.value();
}

inline Complex dirichlet_beta(double re, double im = 0) { return dirichlet_beta<double>(Complex(re, im)); }

// xi(s) = s(s-1)/2 pi^{-s/2} Gamma(s/2) zeta(s).
template <class Real = double> complex_t<Real> completed_xi(const complex_t<Real>& s) {
    using C = complex_t<Real>;
    using std::abs;
    using std::exp;
    using std::log;
    const Real lp = log(pi<Real>());
    if (abs(s) < Real(1e-4)) return completed_xi<Real>(C(Real(1) - s));
    if (abs(s - Real(1)) < Real(1e-4)) {
        // (s-1) zeta(s) = 1 + sum (-1)^n gamma_n (s-1)^{n+1}/n!
        static const std::array<const char*, 5> stieltjes{
            "0.57721566490153286060651209008240243", "-0.072815845483676724860586375874901320",
            "-0.0096903631928723184845303860352125293", "0.0020538344203033458661600465427533843",
            "0.0023253700654673000077953357915388713"};
        C d = s - Real(1), pw = d, sum(1);
        Real fact = 1;
        for (int n = 0; n < 5; ++n) {
            if (n > 0) fact *= Real(n);
            Real g = real_from<Real>(stieltjes[n]);
            sum += ((n % 2) ? -g : g) * pw / fact;
            pw *= d;
        }
        C half = s / Real(2);
        return s / Real(2) * exp(-half * lp) * gamma<Real>(half) * sum;
    }
    C half = s / Real(2);
    return s * (s - Real(1)) / Real(2) * exp(-half * lp) * gamma<Real>(half) * zeta<Real>(s);
}

inline Complex completed_xi(double re, double im = 0) { return completed_xi<double>(Complex(re, im)); }

// Riemann-Siegel theta and the analogous rotation for beta.  Both make the
// function real on the critical line.
inline double theta_zeta(double t) {
    return log_gamma<double>(Complex(0.25, t / 2)).imag() - t / 2 * std::log(M_PI);
}
inline double theta_beta(double t) {
    return log_gamma<double>(Complex(0.75, t / 2)).imag() - t / 2 * std::log(M_PI / 4);
}

inline double hardy_Z(double t) {
    if (t < 0) raise(ErrorKind::ArgumentDomain, "hardy_Z: t must be >= 0");
    Complex z = std::polar(1.0, theta_zeta(t)) * zeta<double>(Complex(0.5, t));
    return z.real();
}

// Full complex rotation, for checking that the imaginary part vanishes.
inline Complex hardy_Z_complex(double t) { return std::polar(1.0, theta_zeta(t)) * zeta<double>(Complex(0.5, t)); }

inline double hardy_Z_beta(double t) {
    if (t < 0) raise(ErrorKind::ArgumentDomain, "hardy_Z_beta: t must be >= 0");
    return (std::polar(1.0, theta_beta(t)) * dirichlet_beta<double>(Complex(0.5, t))).real();
}
inline Complex hardy_Z_beta_complex(double t) {
    return std::polar(1.0, theta_beta(t)) * dirichlet_beta<double>(Complex(0.5, t));
}

// Continuous argument along a polyline.  Increments are taken from the
// difference of any branch of log f, wrapped to (-pi, pi]; a step is
// refined until the increment is below pi/4.
struct ArgTracker {
    std::vector<Complex> path;
    double accumulated_arg = 0;
    Complex last_log{0, 0};
    bool record = true;
};

inline double wrap_pi(double x) {
    x = std::remainder(x, 2 * M_PI);
    return x;
}

template <class LogF> void advance(ArgTracker& tr, LogF&& logf, Complex target, double max_step) {
    if (tr.path.empty()) raise(ErrorKind::InvalidArgument, "advance: tracker has no start point");
    Complex here = tr.path.back();
    double remaining = std::abs(target - here);
    double h = std::min(max_step, remaining);
    const double floor = 1e-12 * (1 + std::abs(target));
    while (remaining > 0) {
        double step = std::min(h, remaining);
        Complex next = (step == remaining) ? target : here + (target - here) * (step / remaining);
        Complex L = logf(next);
        if (!finite(L)) raise(ErrorKind::BranchJump, "advance: function vanishes on the path");
        double d = wrap_pi(L.imag() - tr.last_log.imag());
        if (std::abs(d) > M_PI / 4) {
            h = step / 2;
            if (h < floor) raise(ErrorKind::BranchJump, "advance: step underflow while tracking the argument");
            continue;
        }
        tr.accumulated_arg += d;
        tr.last_log = L;
        here = next;
        if (tr.record)
            tr.path.push_back(next);
        else
            tr.path.back() = next;
        remaining = std::abs(target - here);
        h = std::min(max_step, 2 * step);
    }
}

inline ArgTracker gamma_tracker() {
    ArgTracker tr;
    tr.path.push_back(Complex(2, 0));
    tr.last_log = log_gamma<double>(Complex(2, 0));
    return tr;
}

// log Gamma with the imaginary part continued along the tracker path from 2.
inline Complex log_gamma_continuous(Complex s, ArgTracker& tracker) {
    require_finite(s, "log_gamma_continuous");
    if (tracker.path.empty()) tracker = gamma_tracker();
    auto lg = [](Complex z) {
        if (detail::near_nonpositive_integer(z, 1e-12)) return Complex(NAN, NAN);
        return log_gamma<double>(z);
    };
    advance(tracker, lg, s, 0.1);
    return Complex(tracker.last_log.real(), tracker.accumulated_arg);
}

enum class LFunction { zeta, beta };

inline std::string_view to_string(LFunction f) { return f == LFunction::zeta ? "zeta" : "beta"; }

inline Complex evaluate(LFunction f, Complex s) {
    return f == LFunction::zeta ? zeta<double>(s) : dirichlet_beta<double>(s);
}

// arg L(1/2 + iT) by continuous variation along 2 -> 2 + iT -> 1/2 + iT.
// The vertical leg is cached, so increasing T sequences are cheap.
class CriticalArg {
public:
    explicit CriticalArg(LFunction f) : f_(f) { reset(); }

    double arg_at(double T) {
        if (T < vertical_.path.back().imag()) reset();
        auto logf = [this](Complex z) { return std::log(evaluate(f_, z)); };
        advance(vertical_, logf, Complex(2, T), 0.5);
        ArgTracker horizontal = vertical_;
        advance(horizontal, logf, Complex(0.5, T), 0.1);
        return horizontal.accumulated_arg;
    }

    double S(double T) { return arg_at(T) / M_PI; }

private:
    void reset() {
        vertical_ = ArgTracker{};
        vertical_.record = false;
        vertical_.path.push_back(Complex(2, 0));
        vertical_.last_log = std::log(evaluate(f_, Complex(2, 0)));
    }
    LFunction f_;
    ArgTracker vertical_;
};

// Lambda(n) by a smallest-prime-factor sieve.
struct PrimeTable {
    std::size_t limit = 0;
    std::vector<double> mangoldt; // index n, 0..limit

    double operator()(std::size_t n) const { return n <= limit ? mangoldt[n] : 0.0; }
};

inline constexpr std::size_t prime_table_ceiling = 100'000'000;

inline PrimeTable von_mangoldt_table(std::size_t limit) {
    if (limit < 2) raise(ErrorKind::ArgumentDomain, "von_mangoldt_table: limit must be >= 2");
    if (limit > prime_table_ceiling) raise(ErrorKind::LimitTooLarge, "von_mangoldt_table: limit above memory ceiling");
    PrimeTable t;
    t.limit = limit;
    t.mangoldt.assign(limit + 1, 0.0);
    std::vector<std::uint32_t> spf(limit + 1, 0);
    for (std::size_t i = 2; i <= limit; ++i) {
        if (spf[i] == 0)
            for (std::size_t j = i; j <= limit; j += i)
                if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
    }
    for (std::size_t n = 2; n <= limit; ++n) {
        std::size_t p = spf[n], m = n;
        while (m % p == 0) m /= p;
        if (m == 1) t.mangoldt[n] = std::log(static_cast<double>(p));
    }
    return t;
}

} // namespace mbz
