// mbz: zero catalogs, Mellin-Barnes filter roots, counting audits and the
// claims ledger from the command line.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <mbz/claims.hpp>

namespace fs = std::filesystem;
using namespace mbz;

namespace {

enum Exit : int {
    ok = 0,
    config_error = 1,
    missed_zero = 2,
    newton_failure = 3,
    io_error = 4,
    catalog_corrupt = 5,
    bijection_failed = 6,
    numeric_error = 7,
};

const char* exit_help = R"(Exit codes:
  0  success
  1  invalid configuration or arguments
  2  MissedZeroSuspected during a census (suspect interval printed)
  3  a Newton run on the filter failed to converge
  4  I/O failure or missing catalog
  5  catalog checksum mismatch or unsupported version
  6  bijection audit found Delta(E) != 0
  7  other numerical error)";

struct RunConfig {
    std::string function = "zeta";
    double T_max = 200;
    double E_max = 60;
    double a = 0.2;
    double abscissa = NAN; // defaults to 0.75 for beta, 0.6 for zeta
    std::string precision = "double";
    std::string output_dir = "out";
    std::string cache_path;
    int threads = 1;
    std::vector<std::string> claims;
    std::vector<double> guesses;

    LFunction fn() const { return function == "beta" ? LFunction::beta : LFunction::zeta; }
    Kernel kernel() const { return function == "beta" ? Kernel::beta2s : Kernel::zeta2s; }
    Precision prec() const { return precision == "double_double" ? Precision::double_double : Precision::double_; }
    double g() const { return std::isnan(abscissa) ? (function == "beta" ? 0.75 : 0.6) : abscissa; }
    std::string cache_for(const std::string& f) const {
        if (!cache_path.empty() && f == function) return cache_path;
        return "cache/" + f + "_catalog.txt";
    }
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void validate(const RunConfig& c) {
    if (!(c.T_max > 0 && c.T_max <= 200)) throw ConfigError("--t-max must lie in (0, 200]");
    if (!(c.E_max >= 4 && c.E_max <= 400)) throw ConfigError("--e-max must lie in [4, 400]");
    if (!(c.a > 0 && c.a <= 1)) throw ConfigError("--a must lie in (0, 1]");
    if (!std::isnan(c.abscissa) && !(c.abscissa > 0.5 && c.abscissa < 2))
        throw ConfigError("--abscissa must lie in (1/2, 2) so the contour stays right of the poles");
    if (c.threads < 1 || c.threads > 256) throw ConfigError("--threads must lie in [1, 256]");
    for (double e : c.guesses)
        if (!(e > 0 && std::isfinite(e))) throw ConfigError("--guess values must be positive");
    for (const auto& id : c.claims) {
        bool known = false;
        for (const auto& cl : claim_registry()) known = known || cl.id == id;
        if (!known) throw ConfigError("unknown claim id '" + id + "'");
    }
}

std::string g17(double x) { return format_g17(x); }

void write_file(const fs::path& p, const std::string& text) {
    std::error_code ec;
    if (p.has_parent_path()) fs::create_directories(p.parent_path(), ec);
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text) || !out.flush()) raise(ErrorKind::Io, "cannot write " + p.string());
}

ZeroCatalog load_required(const std::string& path, const std::string& f) {
    if (!fs::exists(path))
        raise(ErrorKind::Io, "catalog " + path + " not found; run `mbz census --function " + f +
                                 " --t-max <T>` first or pass --cache");
    return catalog_load(path);
}

int cmd_census(const RunConfig& c) {
    const ZeroCatalog cat = scan_zeros(c.fn(), c.T_max, c.threads);
    const std::string path = c.cache_for(c.function);
    std::error_code ec;
    if (fs::path(path).has_parent_path()) fs::create_directories(fs::path(path).parent_path(), ec);
    catalog_store(cat, path);
    std::printf("# %s zeros on the critical line up to T = %s\n", c.function.c_str(), g17(c.T_max).c_str());
    std::printf("%5s  %-24s  %-24s\n", "index", "ordinate", "residual");
    for (const auto& r : cat.records)
        std::printf("%5d  %-24s  %-24s\n", r.index, g17(r.ordinate).c_str(), g17(r.residual).c_str());
    std::printf("# %zu zeros, catalog %s\n", cat.records.size(), path.c_str());
    return ok;
}

int cmd_filter_roots(const RunConfig& c) {
    std::vector<double> seeds = c.guesses;
    ZeroCatalog cat;
    cat.function = c.fn();
    if (fs::exists(c.cache_for(c.function))) cat = catalog_load(c.cache_for(c.function));
    else if (seeds.empty()) cat = load_required(c.cache_for(c.function), c.function);
    if (seeds.empty())
        for (const auto& r : cat.records)
            if (2 * r.ordinate <= c.E_max) seeds.push_back(2 * r.ordinate + 0.05);

    ContourSpec contour;
    contour.abscissa = c.g();
    std::ostringstream csv;
    csv << "# filter roots, function " << c.function << ", g = " << g17(contour.abscissa) << ", a = " << g17(c.a)
        << ", precision " << c.precision << "\n";
    csv << "E_root,paired_ordinate,abs_E_minus_2t,precision\n";
    double worst = 0;
    int failures = 0;
    for (double seed : seeds) {
        try {
            const FilterRoot root = newton_filter_root(c.kernel(), seed, RindlerScale(c.a), contour, c.prec(), c.threads);
            const double E = root.energy.real();
            double paired = NAN, gap = INFINITY;
            for (const auto& r : cat.records)
                if (std::abs(E - 2 * r.ordinate) < gap) {
                    gap = std::abs(E - 2 * r.ordinate);
                    paired = r.ordinate;
                }
            worst = std::max(worst, gap);
            csv << g17(E) << "," << g17(paired) << "," << g17(gap) << "," << c.precision << "\n";
        } catch (const Error& e) {
            ++failures;
            csv << "# seed " << g17(seed) << ": " << e.what() << "\n";
            std::fprintf(stderr, "seed %s: %s\n", g17(seed).c_str(), e.what());
        }
    }
    csv << "# rows " << seeds.size() - failures << ", failures " << failures << ", max |E - 2t| " << g17(worst)
        << "\n";
    write_file(fs::path(c.output_dir) / ("filter_roots_" + c.function + ".csv"), csv.str());
    std::cout << csv.str();
    return failures ? newton_failure : ok;
}

int cmd_bijection(const RunConfig& c) {
    if (c.function != "zeta") throw ConfigError("bijection needs --function zeta");
    const ZeroCatalog cat = load_required(c.cache_for("zeta"), "zeta");
    ContourSpec contour;
    contour.abscissa = c.g();
    const FilterSpectrum fsp = filter_spectrum(Kernel::zeta2s, c.E_max, cat, RindlerScale(c.a), contour, c.prec(),
                                               c.threads);
    std::vector<double> roots;
    for (const auto& r : fsp.roots) roots.push_back(r.energy.real());
    const BijectionAudit audit = bijection_audit(c.E_max, roots, cat);
    std::ostringstream csv;
    csv << "# bijection audit, E_max = " << g17(c.E_max) << ", g = " << g17(contour.abscissa) << ", a = " << g17(c.a)
        << "\n";
    for (const auto& [seed, msg] : fsp.failures) csv << "# Newton failure from seed " << g17(seed) << ": " << msg << "\n";
    csv << "E,N_H,N_zeta,Delta\n";
    for (std::size_t i = 0; i < audit.E_grid.size(); ++i)
        csv << g17(audit.E_grid[i]) << "," << audit.N_H_values[i] << "," << audit.N_zeta_values[i] << ","
            << audit.delta_values[i] << "\n";
    csv << "# verdict " << audit.verdict_text() << "\n";
    write_file(fs::path(c.output_dir) / "bijection.csv", csv.str());
    std::cout << "roots " << roots.size() << ", Newton failures " << fsp.failures.size() << ", "
              << audit.verdict_text() << "\n";
    return audit.pass ? ok : bijection_failed;
}

// Histogram of spacings against the Wigner surmise, and R2 against the sine kernel.
void emit_plots(const fs::path& dir, const UnfoldedSpectrum& u) {
    const auto s = u.spacings();
    const double width = 0.2;
    std::vector<int> bins(16, 0);
    for (double x : s) {
        const auto b = static_cast<std::size_t>(x / width);
        if (b < bins.size()) ++bins[b];
    }
    std::ostringstream hist;
    hist << "# bin_center density wigner\n";
    for (std::size_t i = 0; i < bins.size(); ++i) {
        const double mid = (i + 0.5) * width;
        hist << g17(mid) << " " << g17(s.empty() ? 0.0 : bins[i] / (width * s.size())) << " " << g17(wigner_pdf(mid))
             << "\n";
    }
    write_file(dir / "spacing_hist.dat", hist.str());
    write_file(dir / "spacing_hist.gp",
               "set xlabel 's'\nset ylabel 'P(s)'\nset style fill solid 0.4\n"
               "plot 'spacing_hist.dat' using 1:2 with boxes title 'unfolded spacings', \\\n"
               "     'spacing_hist.dat' using 1:3 with lines title 'Wigner surmise'\n");

    const auto omega = default_omega_grid();
    const auto r2 = pair_correlation_values(u, omega);
    std::ostringstream pc;
    pc << "# omega R2 sine_kernel\n";
    for (std::size_t i = 0; i < omega.size(); ++i)
        pc << g17(omega[i]) << " " << g17(r2[i]) << " " << g17(sine_kernel_r2(omega[i])) << "\n";
    write_file(dir / "pair_correlation.dat", pc.str());
    write_file(dir / "pair_correlation.gp",
               "set xlabel 'omega'\nset ylabel 'R2'\n"
               "plot 'pair_correlation.dat' using 1:2 with points title 'zeros', \\\n"
               "     'pair_correlation.dat' using 1:3 with lines title '1 - (sin(pi w)/(pi w))^2'\n");
}

int cmd_stats(const RunConfig& c) {
    if (c.function != "zeta") throw ConfigError("stats needs --function zeta");
    const ZeroCatalog cat = load_required(c.cache_for("zeta"), "zeta");
    const UnfoldedSpectrum u = unfold(cat.records, 0, std::min(c.T_max, cat.covered_to + 1));
    const fs::path dir(c.output_dir);
    std::ostringstream sp;
    sp << "# unfolded nearest-neighbour spacings, " << u.unfolded.size() << " zeros\n";
    sp << "index,spacing\n";
    const auto s = u.spacings();
    for (std::size_t i = 0; i < s.size(); ++i) sp << i + 1 << "," << g17(s[i]) << "\n";
    write_file(dir / "spacings.csv", sp.str());
    emit_plots(dir, u);

    const AuditReport spacing = spacing_vs_gue(u);
    const AuditReport pair = pair_correlation(u, default_omega_grid());
    const AuditReport gue = spacing_statistic(sample_wigner(10000, 1), "selftest_gue");
    const AuditReport poi = spacing_statistic(sample_poisson(10000, 2), "selftest_poisson");
    for (const auto* r : {&spacing, &pair, &gue, &poi})
        std::cout << r->claim_id << ": " << to_string(r->verdict) << ", discrepancy " << g17(r->abs_discrepancy)
                  << "\n";
    return ok;
}

int cmd_audit(const RunConfig& c) {
    const ZeroCatalog zeta = load_required(c.cache_for("zeta"), "zeta");
    ZeroCatalog beta;
    if (fs::exists(c.cache_for("beta"))) beta = catalog_load(c.cache_for("beta"));
    else beta = scan_zeros(LFunction::beta, 17, c.threads);

    ClaimContext ctx;
    ctx.zeta = &zeta;
    ctx.beta = &beta;
    ctx.a = c.a;
    ctx.threads = c.threads;
    std::vector<AuditReport> reports;
    for (const auto& claim : claim_registry()) {
        if (!c.claims.empty() && std::find(c.claims.begin(), c.claims.end(), claim.id) == c.claims.end()) continue;
        reports.push_back(run_claim(claim, ctx));
        const auto& r = reports.back();
        std::printf("%-26s %-13s %s\n", r.claim_id.c_str(), std::string(to_string(r.verdict)).c_str(),
                    g17(r.abs_discrepancy).c_str());
    }
    const fs::path dir(c.output_dir);
    write_file(dir / "ledger.json", ledger_json(reports));
    try {
        emit_plots(dir, unfold(zeta.records, 0, 200));
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Io) throw;
        std::fprintf(stderr, "plots skipped: %s\n", e.what());
    }
    return ok;
}

int cmd_cache(const RunConfig& c, const std::string& action) {
    const std::string path = c.cache_for(c.function);
    const ZeroCatalog cat = load_required(path, c.function);
    if (action == "inspect") {
        std::printf("path      %s\nfunction  %s\nzeros     %zu\n", path.c_str(),
                    std::string(to_string(cat.function)).c_str(), cat.records.size());
        if (!cat.records.empty())
            std::printf("first     %s\nlast      %s\n", g17(cat.records.front().ordinate).c_str(),
                        g17(cat.records.back().ordinate).c_str());
    } else {
        for (std::size_t i = 1; i < cat.records.size(); ++i)
            if (!(cat.records[i].ordinate > cat.records[i - 1].ordinate))
                raise(ErrorKind::ChecksumMismatch, "catalog: ordinates not strictly increasing");
        std::printf("%s: checksum ok, %zu zeros\n", path.c_str(), cat.records.size());
    }
    return ok;
}

int exit_for(const Error& e) {
    switch (e.kind()) {
    case ErrorKind::MissedZeroSuspected: return missed_zero;
    case ErrorKind::BasinEscape:
    case ErrorKind::NoConvergence:
    case ErrorKind::DerivativeVanishes:
    case ErrorKind::OffAxisRoot: return newton_failure;
    case ErrorKind::Io:
    case ErrorKind::IncompleteCatalog: return io_error;
    case ErrorKind::ChecksumMismatch:
    case ErrorKind::VersionUnsupported: return catalog_corrupt;
    case ErrorKind::ArgumentDomain:
    case ErrorKind::InvalidArgument: return config_error;
    default: return numeric_error;
    }
}

} // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"Critical-line zeros, Mellin-Barnes filters and the claims ledger"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--function", cfg.function, "zeta or beta")->check(CLI::IsMember({"zeta", "beta"}));
    app.add_option("--t-max", cfg.T_max, "census height, (0, 200]");
    app.add_option("--e-max", cfg.E_max, "largest filter energy");
    app.add_option("--a", cfg.a, "Rindler scale");
    app.add_option("--abscissa", cfg.abscissa, "contour abscissa g (default 0.75 beta, 0.6 zeta)");
    app.add_option("--precision", cfg.precision, "double or double_double")
        ->check(CLI::IsMember({"double", "double_double"}));
    app.add_option("--threads", cfg.threads, "worker threads");
    app.add_option("--out", cfg.output_dir, "output directory");
    app.add_option("--cache", cfg.cache_path, "catalog path (default cache/<function>_catalog.txt)");
    app.add_option("--claims", cfg.claims, "comma-separated claim ids for audit")->delimiter(',');

    auto* census = app.add_subcommand("census", "scan critical-line zeros and store the catalog");
    auto* roots = app.add_subcommand("filter-roots", "Newton roots of the filter seeded from the catalog");
    roots->add_option("--guess", cfg.guesses, "explicit starting energies");
    auto* bij = app.add_subcommand("bijection", "Delta(E) = N_H(E) - N_zeta(E/2) on a straddling grid");
    auto* stats = app.add_subcommand("stats", "spacing and pair-correlation tables");
    auto* audit = app.add_subcommand("audit", "evaluate every registered claim into ledger.json");
    auto* cache = app.add_subcommand("cache", "catalog maintenance");
    cache->require_subcommand(1);
    auto* inspect = cache->add_subcommand("inspect", "print catalog summary");
    auto* verify = cache->add_subcommand("verify", "check version, checksum and ordering");
    app.footer(exit_help);
    for (auto* s : {inspect, verify}) s->fallthrough();
    cache->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? ok : config_error;
    }

    try {
        validate(cfg);
        if (census->parsed()) return cmd_census(cfg);
        if (roots->parsed()) return cmd_filter_roots(cfg);
        if (bij->parsed()) return cmd_bijection(cfg);
        if (stats->parsed()) return cmd_stats(cfg);
        if (audit->parsed()) return cmd_audit(cfg);
        if (cache->parsed()) return cmd_cache(cfg, inspect->parsed() ? "inspect" : "verify");
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config: %s\n", e.what());
        return config_error;
    } catch (const Error& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return exit_for(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return numeric_error;
    }
    return config_error;
}
