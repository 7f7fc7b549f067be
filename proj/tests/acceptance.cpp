// Acceptance checks 1-9.  `acceptance --criterion N` runs one, no argument
// runs all; the exit status is nonzero if any selected check fails.
#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <string>

#include <mbz/claims.hpp>

using namespace mbz;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    void check(bool ok, const std::string& what) {
        if (!ok) pass = false;
        detail += (ok ? "  ok    " : "  FAIL  ") + what + "\n";
    }
};

std::string fmt(const char* f, double x) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

const ZeroCatalog& zeta200() {
    static const ZeroCatalog c = scan_zeros(LFunction::zeta, 200);
    return c;
}

Outcome beta_table() {
    Outcome o;
    const std::array<double, 4> table{6.0209489047, 10.243770304, 12.988098012, 16.342607105};
    const auto cat = scan_zeros(LFunction::beta, 17);
    o.check(cat.records.size() == 4, "four beta zeros below 17, found " + std::to_string(cat.records.size()));
    for (std::size_t i = 0; i < std::min<std::size_t>(4, cat.records.size()); ++i) {
        const double d = std::abs(cat.records[i].ordinate - table[i]);
        o.check(d < 1e-9, "t_" + std::to_string(i + 1) + " = " + format_g17(cat.records[i].ordinate) +
                              fmt(", |t - table| = %.3g", d));
    }
    return o;
}

Outcome beta_filter() {
    Outcome o;
    const auto cat = scan_zeros(LFunction::beta, 17);
    ContourSpec c;
    c.abscissa = 0.75;
    for (Precision p : {Precision::double_, Precision::double_double}) {
        const double tol = p == Precision::double_ ? 1e-8 : 1e-10;
        for (const auto& z : cat.records) {
            const std::string tag = std::string(to_string(p)) + " n = " + std::to_string(z.index);
            try {
                const auto root = newton_filter_root(Kernel::beta2s, 2 * z.ordinate + 0.05, RindlerScale(0.2), c, p);
                const double d = std::abs(root.energy.real() - 2 * z.ordinate);
                o.check(d < tol, tag + fmt(": |E - 2t| = %.3g", d));
            } catch (const Error& e) {
                o.check(false, tag + ": " + e.what());
            }
        }
    }
    return o;
}

Outcome bijection() {
    Outcome o;
    ContourSpec c;
    c.abscissa = 0.6;
    const auto fs = filter_spectrum(Kernel::zeta2s, 60, zeta200(), RindlerScale(0.2), c);
    std::vector<double> roots;
    for (const auto& r : fs.roots) roots.push_back(r.energy.real());
    for (const auto& [seed, msg] : fs.failures) o.detail += "  note  seed " + format_g17(seed) + ": " + msg + "\n";
    const auto a = bijection_audit(60, roots, zeta200());
    o.check(a.pass, "Delta(E) = 0 on " + std::to_string(a.E_grid.size()) + " grid points (" + a.verdict_text() +
                        ", " + std::to_string(roots.size()) + " filter roots)");
    return o;
}

Outcome contour_shift() {
    Outcome o;
    std::mt19937_64 g(404);
    std::uniform_real_distribution<double> ab(0.55, 1.4), en(5, 50);
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
        const double g1 = ab(g), g2 = ab(g), E = en(g);
        worst = std::max(worst, contour_shift_delta(Kernel::zeta2s, SpectralParameter::from_energy(E), RindlerScale(0.2), g1, g2));
    }
    o.check(worst < 1e-10, fmt("max |Delta I| over 20 pairs = %.3g", worst));
    return o;
}

Outcome special_functions() {
    Outcome o;
    std::mt19937_64 g(2718);
    std::uniform_real_distribution<double> re(-2, 3), im(-40, 40), nre(-2, 2), nim(-20, 20), xs(0.05, 20), wx(0.2, 12);
    double xi_fe = 0, xi_conj = 0, k_sym = 0, k_conj = 0, wr = 0;
    for (int i = 0; i < 100; ++i) {
        const Complex s(re(g), im(g));
        const Complex a = completed_xi<double>(s);
        xi_fe = std::max(xi_fe, std::abs(a - completed_xi<double>(1.0 - s)) / std::abs(a));
        xi_conj = std::max(xi_conj, std::abs(completed_xi<double>(std::conj(s)) - std::conj(a)) / std::abs(a));
        const Complex nu(nre(g), nim(g));
        const double x = xs(g);
        const Complex k = bessel_K(nu, x).value;
        k_sym = std::max(k_sym, std::abs(k - bessel_K(-nu, x).value) / std::abs(k));
        k_conj = std::max(k_conj, std::abs(std::conj(k) - bessel_K(std::conj(nu), x).value) / std::abs(k));
        wr = std::max(wr, wronskian_check(Complex(0.5, nim(g)), wx(g)));
    }
    o.check(xi_fe < 1e-10, fmt("xi(s) = xi(1-s), max rel residual %.3g (tol 1e-10)", xi_fe));
    o.check(xi_conj < 1e-12, fmt("xi(conj s) = conj xi(s), max rel residual %.3g (tol 1e-12)", xi_conj));
    o.check(k_sym < 1e-10, fmt("K_{-nu} = K_nu, max rel residual %.3g (tol 1e-10)", k_sym));
    o.check(k_conj < 1e-10, fmt("K_{conj nu} = conj K_nu, max rel residual %.3g (tol 1e-10)", k_conj));
    o.check(wr < 1e-7, fmt("x W(K, I) = 1, max residual %.3g (tol 1e-7)", wr));
    return o;
}

Outcome s_bound_check() {
    Outcome o;
    const auto r = s_of_t_bound_check(200);
    o.check(r.verdict == Verdict::pass, "violations " + format_g17(r.detail("violations")) + " on " +
                                            format_g17(r.detail("grid_points")) + fmt(" points, max |S| = %.4f", r.detail("max_abs_S")));
    return o;
}

Outcome counting() {
    Outcome o;
    ClaimContext ctx;
    ctx.zeta = &zeta200();
    for (const auto& c : claim_registry())
        if (c.id == "rvm_counting") {
            const auto r = run_claim(c, ctx);
            o.check(r.verdict == Verdict::pass,
                    fmt("max |total - count| over 50 T = %.3g", r.detail("max_abs_total_minus_count")));
        }
    return o;
}

std::vector<AuditReport> substituted_claims(int threads) {
    static const ZeroCatalog beta = scan_zeros(LFunction::beta, 17);
    ClaimContext ctx;
    ctx.zeta = &zeta200();
    ctx.beta = &beta;
    ctx.threads = threads;
    std::vector<AuditReport> out;
    for (const auto& c : claim_registry())
        if (c.id == "spacing_gue" || c.id == "pair_correlation" || c.id == "trace_I_of_a" ||
            c.id == "weil_prime_side" || c.id == "trace_class" || c.id == "fredholm" || c.id == "contour_shift")
            out.push_back(run_claim(c, ctx));
    return out;
}

Outcome substitution() {
    Outcome o;
    const auto gue = spacing_statistic(sample_wigner(10000, 1));
    o.check(gue.detail("ks_distance") < 0.02, fmt("synthetic surmise sample KS = %.4f", gue.detail("ks_distance")));
    const auto poi = spacing_statistic(sample_poisson(10000, 2));
    o.check(poi.verdict == Verdict::fail, fmt("Poisson sample rejected, KS = %.4f", poi.detail("ks_distance")));
    const auto a = substituted_claims(1), b = substituted_claims(1), c = substituted_claims(4);
    for (const auto& r : a)
        o.check(std::isfinite(r.abs_discrepancy) && !r.notes.empty(),
                r.claim_id + ": " + std::string(to_string(r.verdict)) + ", discrepancy " + format_g17(r.abs_discrepancy));
    const std::string ja = ledger_json(a);
    o.check(ja == ledger_json(b), "ledger byte-identical across reruns");
    o.check(ja == ledger_json(c), "ledger byte-identical for 1 and 4 threads");
    return o;
}

Outcome operator_theory() {
    Outcome o;
    ClaimContext ctx;
    for (const auto& c : claim_registry()) {
        if (c.id != "frobenius" && c.id != "deficiency_log_divergence" && c.id != "prufer_monotonicity") continue;
        const auto r = run_claim(c, ctx);
        std::string extra;
        if (c.id == "frobenius") extra = ", rule mismatches " + format_g17(r.detail("classify_vs_rule_mismatches")) + " of 50";
        if (c.id == "deficiency_log_divergence")
            extra = fmt(", log slopes %.1f", r.detail("log_slope_1")) + fmt(" and %.1f", r.detail("log_slope_2"));
        if (c.id == "prufer_monotonicity")
            extra = ", decreasing pairs " + format_g17(r.detail("violations_published")) + " of 10";
        o.check(r.verdict == Verdict::pass, c.id + ": " + std::string(to_string(r.verdict)) + extra);
    }
    return o;
}

struct Criterion {
    const char* title;
    double budget_s;
    std::function<Outcome()> run;
};

const std::array<Criterion, 9> criteria{{
    {"beta zero table to T = 17", 30, beta_table},
    {"beta filter roots E_n = 2 t_n (double, double-double)", 120, beta_filter},
    {"zeta filter / zero bijection for E <= 60", 300, bijection},
    {"contour-shift invariance on 20 random pairs", 60, contour_shift},
    {"special-function property suite", 60, special_functions},
    {"S(t) bound on [e, 200]", 120, s_bound_check},
    {"Riemann-von Mangoldt against the catalog", 60, counting},
    {"comparator self-tests and deterministic ledger", 300, substitution},
    {"Frobenius rule, deficiency slopes, Pruefer monotonicity", 120, operator_theory},
}};

bool run_one(int n) {
    const auto& c = criteria[n - 1];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = c.run();
    } catch (const Error& e) {
        o.check(false, e.what());
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.check(dt < c.budget_s, fmt("runtime %.2f s", dt) + fmt(" (budget %.0f s)", c.budget_s));
    std::printf("criterion %d: %s  %s\n%s", n, o.pass ? "PASS" : "FAIL", c.title, o.detail.c_str());
    std::fflush(stdout);
    return o.pass;
}

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i)
        if (!std::strcmp(argv[i], "--criterion") && i + 1 < argc) only = std::atoi(argv[++i]);
    if (only < 0 || only > 9) {
        std::fprintf(stderr, "usage: acceptance [--criterion 1..9]\n");
        return 2;
    }
    bool ok = true;
    for (int n = 1; n <= 9; ++n)
        if (only == 0 || only == n) ok = run_one(n) && ok;
    return ok ? 0 : 1;
}
