// Registry of audited claims.  Each entry evaluates both sides of one
// identity and returns an AuditReport; the registry order is the ledger order.
#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "audit.hpp"
#include "bessel.hpp"
#include "mbfilter.hpp"
#include "operatorlab.hpp"
#include "spectrostats.hpp"
#include "zerocensus.hpp"

namespace mbz {

struct ClaimContext {
    const ZeroCatalog* zeta = nullptr; // complete to 200
    const ZeroCatalog* beta = nullptr; // complete to 17
    double a = 0.2;
    int threads = 1;
    std::size_t prime_limit = 1000000;
};

struct Claim {
    std::string id;
    std::string statement;
    std::function<AuditReport(const ClaimContext&)> run;
};

namespace detail {

inline AuditReport failed_report(const std::string& id, const Error& e) {
    AuditReport r;
    r.claim_id = id;
    r.verdict = Verdict::fail;
    r.notes = std::string(to_string(e.kind())) + ": " + e.what();
    return r;
}

inline const ZeroCatalog& need(const ZeroCatalog* c, const char* what) {
    if (!c) raise(ErrorKind::IncompleteCatalog, std::string("claim needs the ") + what + " catalog");
    return *c;
}

inline AuditReport wronskian_claim(const ClaimContext&) {
    AuditReport r;
    r.claim_id = "wronskian";
    std::mt19937_64 g(7);
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
        const Complex nu(0.5, 20 * uniform01(g));
        const double x = 0.5 + 9.5 * uniform01(g);
        worst = std::max(worst, wronskian_check(nu, x));
    }
    r.set_sides(Complex(1 + worst, 0), Complex(1, 0));
    r.verdict = worst < 1e-7 ? Verdict::pass : Verdict::fail;
    r.add("samples", 20);
    r.add("max_residual", worst);
    r.notes = "lhs = 1 + max |x W(K, I) - 1| over nu = 1/2 + i[0, 20], x in [0.5, 10]";
    return r;
}

inline AuditReport contour_shift_claim(const ClaimContext& ctx) {
    AuditReport r;
    r.claim_id = "contour_shift";
    const auto sp = SpectralParameter::from_energy(10);
    ContourSpec c;
    c.abscissa = 0.55;
    auto lo = mb_integral(Kernel::zeta2s, sp, RindlerScale(ctx.a), c);
    c.abscissa = 0.70;
    auto hi = mb_integral(Kernel::zeta2s, sp, RindlerScale(ctx.a), c);
    r.set_sides(lo.value, hi.value);
    const double tol = std::max(1e-10, 20 * std::max(lo.truncation_error, hi.truncation_error));
    r.verdict = r.abs_discrepancy < tol ? Verdict::pass : Verdict::fail;
    r.add("E", 10);
    r.add("g1", 0.55);
    r.add("g2", 0.70);
    r.add("tolerance", tol);
    r.notes = "zeta2s kernel, lhs at g1, rhs at g2";
    return r;
}

inline AuditReport residue_shift_claim(const ClaimContext& ctx) {
    AuditReport r;
    r.claim_id = "residue_shift";
    const auto sp = SpectralParameter::from_energy(10);
    ContourSpec c;
    c.abscissa = 0.3;
    auto lo = mb_integral(Kernel::zeta2s, sp, RindlerScale(ctx.a), c);
    c.abscissa = 0.7;
    auto hi = mb_integral(Kernel::zeta2s, sp, RindlerScale(ctx.a), c);
    const Complex corr = residue_shift(Kernel::zeta2s, sp.order, RindlerScale(ctx.a), 0.3, 0.7);
    r.set_sides(hi.value - lo.value, corr);
    r.verdict = r.abs_discrepancy < 1e-9 ? Verdict::pass : Verdict::fail;
    r.add("g_lo", 0.3);
    r.add("g_hi", 0.7);
    r.notes = "strip 0.3 < Re s < 0.7 holds the poles s = nu and s = 1/2; lhs = I(0.7) - I(0.3), rhs = residues";
    return r;
}

inline AuditReport hadamard_claim(const ClaimContext&) {
    AuditReport r;
    r.claim_id = "hadamard_finite_part";
    auto f = [](Complex z) { return std::exp(z); };
    const std::array<double, 5> l2{0.1, 0.05, 0.025, 0.0125, 0.00625};
    const std::array<double, 5> l3{0.1, 0.1 / 3, 0.1 / 9, 0.1 / 27, 0.1 / 81};
    const Complex v2 = hadamard_finite_part(f, 0, l2);
    const Complex v3 = hadamard_finite_part(f, 0, l3);
    r.set_sides(v2, v3);
    r.verdict = r.abs_discrepancy < 1e-8 ? Verdict::pass : Verdict::fail;
    r.notes = "finite part of int_{-1}^{1} e^u / u^2 du along ratio-2 and ratio-3 ladders";
    return r;
}

inline AuditReport beta_filter_claim(const ClaimContext& ctx) {
    AuditReport r;
    r.claim_id = "beta_filter_roots";
    const auto& cat = need(ctx.beta, "beta");
    ContourSpec c;
    c.abscissa = 0.75;
    int ok = 0, attempted = 0;
    double worst = 0;
    std::string first_error;
    for (const auto& z : cat.records) {
        ++attempted;
        try {
            auto root = newton_filter_root(Kernel::beta2s, 2 * z.ordinate + 0.05, RindlerScale(ctx.a), c,
                                           Precision::double_, ctx.threads);
            worst = std::max(worst, std::abs(root.energy.real() - 2 * z.ordinate));
            ++ok;
        } catch (const Error& e) {
            if (first_error.empty()) first_error = e.what();
        }
    }
    // the filter value at E = 2 t_n itself, which the root claim needs to vanish
    double max_at_zero = 0;
    for (const auto& z : cat.records) {
        auto v = mb_integral(Kernel::beta2s, SpectralParameter::from_energy(2 * z.ordinate), RindlerScale(ctx.a), c,
                             false, ctx.threads);
        max_at_zero = std::max(max_at_zero, std::abs(v.value));
    }
    r.set_sides(Complex(max_at_zero, 0), Complex(0, 0));
    r.verdict = (ok == attempted && worst < 1e-8) ? Verdict::pass : Verdict::fail;
    r.add("attempted", attempted);
    r.add("converged", ok);
    r.add("worst_abs_E_minus_2t", ok ? worst : NAN);
    r.add("max_abs_filter_at_2t", max_at_zero);
    r.notes = first_error.empty() ? "lhs = max |psi(2 t_n)|" : "lhs = max |psi(2 t_n)|; " + first_error;
    return r;
}

inline AuditReport scale_limit_claim(const ClaimContext&) {
    AuditReport r;
    r.claim_id = "scale_limit";
    ContourSpec c;
    c.abscissa = -0.25;
    const std::array<double, 4> as{0.1, 0.05, 0.025, 0.0125};
    std::vector<double> xs, ys;
    bool monotone = true;
    double prev = INFINITY;
    for (double a : as) {
        const double v = std::abs(mb_integral(Kernel::scale_limit, SpectralParameter::from_energy(10), RindlerScale(a), c).value);
        r.add("abs_value_a_" + std::to_string(a), v);
        monotone = monotone && v < prev;
        prev = v;
        xs.push_back(std::log(a));
        ys.push_back(std::log(v));
    }
    const auto [slope, icpt] = linear_fit(xs, ys);
    r.set_sides(Complex(prev, 0), Complex(0, 0));
    r.verdict = monotone && slope > 0.1 ? Verdict::pass : Verdict::fail;
    r.add("log_log_slope", slope);
    r.notes = "E = 10, g = -0.25; lhs = |I| at the smallest a, rhs = the a -> 0 limit";
    return r;
}

inline AuditReport rvm_claim(const ClaimContext& ctx) {
    AuditReport r;
    r.claim_id = "rvm_counting";
    const auto& cat = need(ctx.zeta, "zeta");
    std::mt19937_64 g(2024);
    std::vector<double> Ts(50);
    for (auto& T : Ts) T = 15 + 185 * uniform01(g);
    std::sort(Ts.begin(), Ts.end());
    CountingEvaluator ev(&cat);
    double worst = 0, worst_T = Ts.front();
    CountingReport at_worst = ev(worst_T);
    for (double T : Ts) {
        auto c = ev(T);
        const double d = std::abs(c.total - c.jump_count);
        if (d > worst) {
            worst = d;
            worst_T = T;
            at_worst = c;
        }
    }
    r.set_sides(Complex(at_worst.total, 0), Complex(at_worst.jump_count, 0));
    r.verdict = worst < 0.5 ? Verdict::pass : Verdict::fail;
    r.add("samples", 50);
    r.add("max_abs_total_minus_count", worst);
    r.add("T_at_max", worst_T);
    r.notes = "lhs = main + S, rhs = N at the worst of 50 seeded T in [15, 200]; pass below 1/2";
    return r;
}

inline AuditReport guinand_weil_claim(const ClaimContext& ctx) {
    AuditReport r;
    r.claim_id = "guinand_weil";
    const auto& cat = need(ctx.zeta, "zeta");
    const std::array<double, 3> Es{2 * 14.1347251417 + 0.1, 20.0, 2 * 21.0220396388 + 0.1};
    double worst_pub = 0, worst_fixed = 0;
    for (double E : Es) {
        const double n = double(cat.count_up_to(E / 2));
        const double pub = n_H_guinand_weil_published(E);
        const double fixed = n_H_guinand_weil(E);
        r.add("published_at_" + format_g17(E), pub);
        r.add("corrected_at_" + format_g17(E), fixed);
        r.add("count_at_" + format_g17(E), n);
        worst_pub = std::max(worst_pub, std::abs(pub - n));
        worst_fixed = std::max(worst_fixed, std::abs(fixed - n));
    }
    r.set_sides(Complex(worst_pub, 0), Complex(0, 0));
    r.verdict = worst_pub < 0.5 ? Verdict::pass : Verdict::fail;
    r.add("worst_published", worst_pub);
    r.add("worst_corrected", worst_fixed);
    r.notes = "lhs = max |N_H - count| for the three-term formula as quoted; the corrected form uses "
              "-(E/4pi) log pi, +S(E/2) and +1";
    return r;
}

inline AuditReport bijection_claim(const ClaimContext& ctx) {
    AuditReport r;
    r.claim_id = "spectral_bijection";
    const auto& cat = need(ctx.zeta, "zeta");
    ContourSpec c;
    c.abscissa = 0.6;
    const double E_max = 60;
    auto fs = filter_spectrum(Kernel::zeta2s, E_max, cat, RindlerScale(ctx.a), c, Precision::double_, ctx.threads);
    std::vector<double> roots;
    for (const auto& fr : fs.roots) roots.push_back(fr.energy.real());
    auto audit = bijection_audit(E_max, roots, cat);
    int worst = 0;
    for (int d : audit.delta_values) worst = std::max(worst, std::abs(d));
    r.set_sides(Complex(worst, 0), Complex(0, 0));
    r.verdict = audit.pass ? Verdict::pass : Verdict::fail;
    r.add("E_max", E_max);
    r.add("grid_points", double(audit.E_grid.size()));
    r.add("filter_roots", double(roots.size()));
    r.add("newton_failures", double(fs.failures.size()));
    r.add("first_failure_E", audit.first_failure_E);
    r.notes = "lhs = max |Delta(E)|; " + audit.verdict_text();
    if (!fs.failures.empty()) r.notes += "; first Newton failure: " + fs.failures.front().second;
    return r;
}

inline std::vector<Complex> frobenius_grid() {
    std::vector<Complex> g;
    for (int i = 0; i < 50; ++i) g.emplace_back(-1.2 + 2.5 * i / 49.0, (i % 5) * 3.0);
    return g;
}

inline AuditReport frobenius_claim(const ClaimContext&) {
    AuditReport r;
    r.claim_id = "frobenius";
    int rule_mismatch = 0, quad_mismatch = 0;
    for (const Complex& nu : frobenius_grid()) {
        const auto d = frobenius_detail(nu);
        const auto rule = nu.real() < 0.5 ? EndpointClass::limit_circle : EndpointClass::limit_point;
        rule_mismatch += frobenius_classify(nu) != rule;
        quad_mismatch += d.analytic_class != d.quadrature_class;
    }
    const auto half = frobenius_detail(Complex(0.5, 0));
    r.set_sides(Complex(rule_mismatch + quad_mismatch, 0), Complex(0, 0));
    r.verdict = rule_mismatch == 0 && quad_mismatch == 0 ? Verdict::pass : Verdict::fail;
    r.add("grid_points", 50);
    r.add("classify_vs_rule_mismatches", rule_mismatch);
    r.add("analytic_vs_quadrature_mismatches", quad_mismatch);
    r.add("log_divergence_at_re_nu_half", half.log_divergence ? 1 : 0);
    r.notes = "lhs = classify-vs-rule plus analytic-vs-quadrature mismatches; the norm integrals x^{1 -+ 2 Re nu} "
              "converge for |Re nu| < 1, so the norm test and the Re nu < 1/2 rule disagree on "
              "1/2 <= |Re nu| < 1 and on Re nu <= -1";
    return r;
}

inline AuditReport l2_claim(const ClaimContext&) {
    AuditReport r = eigenfunction_L2_classifier(SpectralParameter{0, Complex(0.5, 7.0673)});
    const auto off = eigenfunction_L2_classifier(SpectralParameter{0, Complex(1.2, 0)});
    r.add("re_nu_1.2_verdict_divergent", off.verdict == Verdict::divergent ? 1 : 0);
    r.add("re_nu_1.2_origin_ratio", off.detail("origin_ratio"));
    return r;
}

inline std::vector<std::pair<double, double>> prufer_energy_pairs() {
    std::vector<std::pair<double, double>> p;
    for (int k = 0; k < 10; ++k) p.emplace_back(2.0 * k, 2.0 * k + 1);
    return p;
}

inline AuditReport prufer_claim(const ClaimContext& ctx) {
    AuditReport r;
    r.claim_id = "prufer_monotonicity";
    int violations_pub = 0, violations_std = 0;
    double worst_drop = 0;
    for (const auto& [e1, e2] : prufer_energy_pairs()) {
        RadialProblem p;
        p.a = ctx.a;
        p.energy = e1;
        const double p1 = prufer_integrate(p, PruferConvention::published).phase_advance;
        const double s1 = prufer_integrate(p, PruferConvention::standard).phase_advance;
        p.energy = e2;
        const double p2 = prufer_integrate(p, PruferConvention::published).phase_advance;
        const double s2 = prufer_integrate(p, PruferConvention::standard).phase_advance;
        violations_pub += p2 < p1;
        violations_std += s2 < s1;
        worst_drop = std::max(worst_drop, p1 - p2);
    }
    r.set_sides(Complex(violations_pub, 0), Complex(0, 0));
    r.verdict = violations_pub == 0 ? Verdict::pass : Verdict::fail;
    r.add("pairs", 10);
    r.add("violations_published", violations_pub);
    r.add("violations_standard", violations_std);
    r.add("largest_phase_drop_published", worst_drop);
    r.notes = "q = (x + a^-2)^2 + E^2 on [1e-4, 10]; lhs counts pairs with theta_E2 < theta_E1 for the quoted "
              "phase equation, whose -V sin^2 term makes the phase fall as E grows";
    return r;
}

inline AuditReport spacing_claim(const ClaimContext& ctx) {
    const auto& cat = need(ctx.zeta, "zeta");
    auto r = spacing_vs_gue(unfold(cat.records, 0, 200));
    const auto gue = spacing_statistic(sample_wigner(10000, 1));
    const auto poi = spacing_statistic(sample_poisson(10000, 2));
    r.add("selftest_gue_ks", gue.detail("ks_distance"));
    r.add("selftest_poisson_ks", poi.detail("ks_distance"));
    r.add("selftest_poisson_rejected", poi.verdict == Verdict::fail ? 1 : 0);
    return r;
}

inline AuditReport pair_claim(const ClaimContext& ctx) {
    const auto& cat = need(ctx.zeta, "zeta");
    return pair_correlation(unfold(cat.records, 0, 200), default_omega_grid());
}

} // namespace detail

inline const std::vector<Claim>& claim_registry() {
    using namespace detail;
    static const std::vector<Claim> reg{
        {"bessel_small_x", "K_nu(x) ~ Gamma(nu)/2 (x/2)^{-nu} as x -> 0 for |Re nu| < 1/2 (nu = 0.3)",
         [](const ClaimContext&) { return asymptotic_validator(Complex(0.3, 0), AsymptoticRegime::small_x); }},
        {"bessel_large_x", "K_nu(x) ~ x^{-1/2} e^{-x} (nu = 1/2 + 4i)",
         [](const ClaimContext&) { return asymptotic_validator(Complex(0.5, 4), AsymptoticRegime::large_x); }},
        {"wronskian", "x W(K_nu, I_nu) = 1", wronskian_claim},
        {"contour_shift", "the integral does not depend on a pole-free abscissa", contour_shift_claim},
        {"residue_shift", "crossing poles changes the integral by the residues", residue_shift_claim},
        {"double_pole_lemma", "circle integral of A B/(s-s0)^2 is 2 pi i A(s0) B'(s0) + O(eps)",
         [](const ClaimContext&) { return double_pole_circle(Complex(0.25, 7.0673625708), 0.05); }},
        {"hadamard_finite_part", "the finite part does not depend on the eps sequence", hadamard_claim},
        {"beta_filter_roots", "Newton roots of the beta filter at g = 3/4, a = 0.2 are E_n = 2 t_n", beta_filter_claim},
        {"scale_limit", "the scale-limit integral tends to 0 as a -> 0", scale_limit_claim},
        {"s_bound", "|S(t)| <= 0.1038 log t + 0.2573 log log t + 8.3675 on [e, 200]",
         [](const ClaimContext&) { return s_of_t_bound_check(200); }},
        {"rvm_counting", "main term + S(T) is within 1/2 of the zero count", rvm_claim},
        {"guinand_weil", "three-term N_H formula is within 1/2 of the count", guinand_weil_claim},
        {"spectral_bijection", "Delta(E) = N_H(E) - N_zeta(E/2) = 0 for E <= 60", bijection_claim},
        {"frobenius", "0+ is limit-circle iff Re nu < 1/2", frobenius_claim},
        {"deficiency_log_divergence", "int_1^X |J0(e^{-i pi/4} x/sqrt 2)|^2 dx grows like log X",
         [](const ClaimContext&) { return deficiency_divergence_check(); }},
        {"eigenfunction_l2", "x |K_nu(x)|^2 is integrable on the critical line", l2_claim},
        {"prufer_monotonicity", "the Pruefer phase at x_max increases with E", prufer_claim},
        {"spacing_gue", "nearest-neighbour spacings follow the unitary surmise", spacing_claim},
        {"pair_correlation", "R2(w) = 1 - (sin pi w / pi w)^2", pair_claim},
        {"oscillatory_density", "peaks of rho_bar + rho_osc sit on the zeros",
         [](const ClaimContext& c) { return oscillatory_density_audit(need(c.zeta, "zeta"), c.prime_limit); }},
        {"trace_I_of_a", "I(a) from the zero sum equals the xi'(0) form",
         [](const ClaimContext& c) {
             const auto& z = need(c.zeta, "zeta");
             return trace_I_of_a(c.a, z, std::min<std::size_t>(100, z.records.size()));
         }},
        {"weil_prime_side", "(pi/2) sum Lambda(n)/n equals -(pi/2) zeta'(1)",
         [](const ClaimContext& c) { return weil_prime_side(c.prime_limit, need(c.zeta, "zeta")); }},
        {"trace_class", "sum (E_n + i)^{-2} = i^{-2} (2a)^2 zeta(2)",
         [](const ClaimContext& c) {
             const auto& z = need(c.zeta, "zeta");
             return trace_class_audit(2, c.a, z, std::min<std::size_t>(100, z.records.size()));
         }},
        {"fredholm", "-sum (2az)^{2k} zeta(4k)/k = log(2^{-z} zeta(2z)) at z = 0.4",
         [](const ClaimContext& c) { return fredholm_audit(0.4, c.a, 40); }},
    };
    return reg;
}

// Run one claim; library errors become a failing report rather than aborting the ledger.
inline AuditReport run_claim(const Claim& c, const ClaimContext& ctx) {
    try {
        AuditReport r = c.run(ctx);
        r.claim_id = c.id;
        return r;
    } catch (const Error& e) {
        return detail::failed_report(c.id, e);
    }
}

// Ledger entry; nlohmann's default object type is ordered by key.
inline nlohmann::json report_json(const AuditReport& r) {
    nlohmann::json details = nlohmann::json::object();
    for (const auto& [k, v] : r.details) details[k] = std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
    auto cplx = [](Complex z) {
        auto part = [](double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); };
        return nlohmann::json{{"re", part(z.real())}, {"im", part(z.imag())}};
    };
    auto num = [](double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); };
    return nlohmann::json{{"claim_id", r.claim_id},
                          {"lhs", cplx(r.lhs)},
                          {"rhs", cplx(r.rhs)},
                          {"abs_discrepancy", num(r.abs_discrepancy)},
                          {"rel_discrepancy", num(r.rel_discrepancy)},
                          {"verdict", std::string(to_string(r.verdict))},
                          {"notes", r.notes},
                          {"details", details}};
}

inline std::string ledger_json(const std::vector<AuditReport>& reports) {
    nlohmann::json claims = nlohmann::json::array();
    for (const auto& r : reports) claims.push_back(report_json(r));
    return nlohmann::json{{"claims", claims}, {"version", 1}}.dump(2) + "\n";
}

} // namespace mbz
