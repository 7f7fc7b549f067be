// Shared scalar types, error kinds and small numeric helpers.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/complex128.hpp>
#include <boost/multiprecision/float128.hpp>

namespace mbz {

using Complex = std::complex<double>;
using Quad = boost::multiprecision::float128;
using QuadComplex = boost::multiprecision::complex128;

enum class Precision { double_, double_double };

inline std::string_view to_string(Precision p) {
    return p == Precision::double_ ? "double" : "double_double";
}

enum class ErrorKind {
    PoleProximity,
    BranchJump,
    LimitTooLarge,
    ArgumentDomain,
    QuadratureNonConvergence,
    SeriesOverflow,
    ContourOnPole,
    TailBoundViolated,
    PoleInStrip,
    NotAZero,
    DerivativeVanishes,
    NoConvergence,
    BasinEscape,
    OffAxisRoot,
    MissedZeroSuspected,
    IncompleteCatalog,
    ChecksumMismatch,
    VersionUnsupported,
    StepUnderflow,
    WindowTooSparse,
    SeriesDivergent,
    InvalidArgument,
    Io,
};

inline std::string_view to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::PoleProximity: return "PoleProximity";
    case ErrorKind::BranchJump: return "BranchJump";
    case ErrorKind::LimitTooLarge: return "LimitTooLarge";
    case ErrorKind::ArgumentDomain: return "ArgumentDomain";
    case ErrorKind::QuadratureNonConvergence: return "QuadratureNonConvergence";
    case ErrorKind::SeriesOverflow: return "SeriesOverflow";
    case ErrorKind::ContourOnPole: return "ContourOnPole";
    case ErrorKind::TailBoundViolated: return "TailBoundViolated";
    case ErrorKind::PoleInStrip: return "PoleInStrip";
    case ErrorKind::NotAZero: return "NotAZero";
    case ErrorKind::DerivativeVanishes: return "DerivativeVanishes";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::BasinEscape: return "BasinEscape";
    case ErrorKind::OffAxisRoot: return "OffAxisRoot";
    case ErrorKind::MissedZeroSuspected: return "MissedZeroSuspected";
    case ErrorKind::IncompleteCatalog: return "IncompleteCatalog";
    case ErrorKind::ChecksumMismatch: return "ChecksumMismatch";
    case ErrorKind::VersionUnsupported: return "VersionUnsupported";
    case ErrorKind::StepUnderflow: return "StepUnderflow";
    case ErrorKind::WindowTooSparse: return "WindowTooSparse";
    case ErrorKind::SeriesDivergent: return "SeriesDivergent";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

// Complex type for a real scalar. float128 needs the boost wrapper since
// std::complex<float128> is unspecified.
template <class Real> struct precision_traits {
    using complex = std::complex<Real>;
};
template <> struct precision_traits<Quad> {
    using complex = QuadComplex;
};
template <class Real> using complex_t = typename precision_traits<Real>::complex;

template <class Real> inline Real epsilon() { return std::numeric_limits<Real>::epsilon(); }

template <class Real> inline Real pi() { return boost::math::constants::pi<Real>(); }

template <class Real> inline Real real_from(std::string_view text) {
    if constexpr (std::is_same_v<Real, double>) {
        return std::stod(std::string(text));
    } else {
        return Real(std::string(text));
    }
}

inline bool finite(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

inline void require_finite(const Complex& z, std::string_view where) {
    if (!finite(z)) raise(ErrorKind::ArgumentDomain, std::string(where) + ": non-finite argument");
}

inline double to_double(double x) { return x; }
inline double to_double(const Quad& x) { return static_cast<double>(x); }
inline Complex to_double(const Complex& z) { return z; }
inline Complex to_double(const QuadComplex& z) {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

template <class C> inline C make_complex(double re, double im) {
    using R = decltype(std::declval<C>().real());
    return C(R(re), R(im));
}
template <class Real> inline complex_t<Real> lift(const Complex& z) {
    return complex_t<Real>(Real(z.real()), Real(z.imag()));
}

// Neumaier compensated accumulator; works for real and complex T.
template <class T> class KahanSum {
public:
    KahanSum() : sum_(0), comp_(0) {}
    void add(const T& x) {
        if constexpr (requires(T v) { v.real(); }) {
            add_part(re_sum_, re_comp_, x.real());
            add_part(im_sum_, im_comp_, x.imag());
        } else {
            add_part(sum_, comp_, x);
        }
    }
    T value() const {
        if constexpr (requires(T v) { v.real(); }) {
            return T(re_sum_ + re_comp_, im_sum_ + im_comp_);
        } else {
            return sum_ + comp_;
        }
    }

private:
    template <class U> struct part { using type = U; };
    template <class U> requires requires(U v) { v.real(); } struct part<U> {
        using type = std::remove_cvref_t<decltype(std::declval<U>().real())>;
    };
    using R = typename part<T>::type;
    static void add_part(R& s, R& c, const R& x) {
        using std::abs;
        R t = s + x;
        if (abs(s) >= abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    R sum_{}, comp_{};
    R re_sum_{0}, re_comp_{0}, im_sum_{0}, im_comp_{0};
};

// Pairwise reduction in fixed order, so the result does not depend on how the
// terms were produced.
template <class T> T pairwise_sum(const T* v, std::size_t n) {
    if (n == 0) return T(0);
    if (n <= 8) {
        T s = v[0];
        for (std::size_t i = 1; i < n; ++i) s += v[i];
        return s;
    }
    std::size_t h = n / 2;
    return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}
template <class T> T pairwise_sum(const std::vector<T>& v) { return pairwise_sum(v.data(), v.size()); }

// Even Bernoulli numbers B_2 ... B_60 as exact fractions.
inline constexpr std::array<std::pair<std::string_view, std::string_view>, 30> bernoulli_even_fractions{{
    {"1", "6"},
    {"-1", "30"},
    {"1", "42"},
    {"-1", "30"},
    {"5", "66"},
    {"-691", "2730"},
    {"7", "6"},
    {"-3617", "510"},
    {"43867", "798"},
    {"-174611", "330"},
    {"854513", "138"},
    {"-236364091", "2730"},
    {"8553103", "6"},
    {"-23749461029", "870"},
    {"8615841276005", "14322"},
    {"-7709321041217", "510"},
    {"2577687858367", "6"},
    {"-26315271553053477373", "1919190"},
    {"2929993913841559", "6"},
    {"-261082718496449122051", "13530"},
    {"1520097643918070802691", "1806"},
    {"-27833269579301024235023", "690"},
    {"596451111593912163277961", "282"},
    {"-5609403368997817686249127547", "46410"},
    {"495057205241079648212477525", "66"},
    {"-801165718135489957347924991853", "1590"},
    {"29149963634884862421418123812691", "798"},
    {"-2479392929313226753685415739663229", "870"},
    {"84483613348880041862046775994036021", "354"},
    {"-1215233140483755572040304994079820246041491", "56786730"},
}};

// B_{2k} for k = 1..30, index k-1.
template <class Real> const std::vector<Real>& bernoulli_even() {
    static const std::vector<Real> table = [] {
        std::vector<Real> b;
        for (auto [num, den] : bernoulli_even_fractions) b.push_back(real_from<Real>(num) / real_from<Real>(den));
        return b;
    }();
    return table;
}

// B_{2k}/(2k)! for k = 1..30.
template <class Real> const std::vector<Real>& bernoulli_over_factorial() {
    static const std::vector<Real> table = [] {
        std::vector<Real> c;
        Real fact = 1;
        const auto& b = bernoulli_even<Real>();
        for (std::size_t k = 1; k <= b.size(); ++k) {
            fact *= Real(2 * k - 1) * Real(2 * k);
            c.push_back(b[k - 1] / fact);
        }
        return c;
    }();
    return table;
}

// n-point Gauss-Legendre nodes/weights on [-1, 1] by Newton on P_n.
template <class Real> struct GaussLegendre {
    std::vector<Real> nodes, weights;
};

template <class Real> const GaussLegendre<Real>& gauss_legendre(int n) {
    static thread_local std::vector<std::pair<int, GaussLegendre<Real>>> cache;
    for (auto& [m, rule] : cache)
        if (m == n) return rule;
    GaussLegendre<Real> r;
    r.nodes.resize(n);
    r.weights.resize(n);
    using std::abs;
    using std::cos;
    for (int i = 0; i < n; ++i) {
        Real x = cos(pi<Real>() * (Real(i) + Real(0.75)) / (Real(n) + Real(0.5)));
        Real dp = 0;
        for (int it = 0; it < 100; ++it) {
            Real p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            Real dx = p1 / dp;
            x -= dx;
            if (abs(dx) < 4 * epsilon<Real>()) break;
        }
        Real p0 = 1, p1 = x;
        for (int k = 2; k <= n; ++k) {
            Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1);
        r.nodes[i] = x;
        r.weights[i] = 2 / ((1 - x * x) * dp * dp);
    }
    cache.emplace_back(n, std::move(r));
    return cache.back().second;
}

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

} // namespace mbz
