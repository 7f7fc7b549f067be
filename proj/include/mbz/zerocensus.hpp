// Critical-line zeros of zeta and beta: scanning, counting functions,
// S(t), the filter/zero bijection audit and the on-disk catalog.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/tools/roots.hpp>
#include <openssl/evp.h>
#include <unistd.h>

#include "audit.hpp"
#include "mbfilter.hpp"
#include "records.hpp"
#include "specfun.hpp"

namespace mbz {

struct ZeroCatalog {
    LFunction function = LFunction::zeta;
    std::vector<ZeroRecord> records;
    double covered_to = 0; // every zero with ordinate <= covered_to is listed

    std::size_t count_up_to(double T) const {
        return std::upper_bound(records.begin(), records.end(), T,
                                [](double t, const ZeroRecord& r) { return t < r.ordinate; }) -
               records.begin();
    }
};

// Real rotation of L on the critical line: Hardy Z for zeta, the analogue
// with theta_beta for beta.
inline double rotated(LFunction f, double t) { return f == LFunction::zeta ? hardy_Z(t) : hardy_Z_beta(t); }

// Smooth part of the zero count: theta/pi + 1 for zeta, theta_beta/pi for beta.
inline double smooth_count(LFunction f, double T) {
    return f == LFunction::zeta ? theta_zeta(T) / M_PI + 1 : theta_beta(T) / M_PI;
}

// Number of zeros up to T predicted from the argument principle.
inline double predicted_count(LFunction f, double T) {
    CriticalArg arg(f);
    return smooth_count(f, T) + arg.S(T);
}

namespace detail {

inline ZeroRecord refine_zero(LFunction f, double lo, double hi) {
    auto Z = [f](double t) { return rotated(f, t); };
    double flo = Z(lo);
    boost::uintmax_t iters = 100;
    auto [a, b] = boost::math::tools::toms748_solve(Z, lo, hi, flo, Z(hi),
                                                    boost::math::tools::eps_tolerance<double>(40), iters);
    double t = 0.5 * (a + b);
    // two Newton polishing steps, kept inside the bracket
    for (int k = 0; k < 2; ++k) {
        const double h = 1e-6 * std::max(1.0, t);
        const double d = (Z(t + h) - Z(t - h)) / (2 * h);
        if (d == 0) break;
        const double nt = t - Z(t) / d;
        if (nt > lo && nt < hi) t = nt;
    }
    ZeroRecord r;
    r.ordinate = t;
    r.residual = std::abs(evaluate(f, Complex(0.5, t)));
    r.function = f;
    r.method = ZeroMethod::newton_refine;
    return r;
}

inline std::vector<ZeroRecord> scan_grid(LFunction f, double T_max, double step, int threads) {
    const std::size_t n = static_cast<std::size_t>(std::ceil(T_max / step));
    std::vector<double> grid(n + 1), vals(n + 1);
    for (std::size_t i = 0; i <= n; ++i) grid[i] = std::min(T_max, i * step);
    parallel_for(n + 1, threads, [&](std::size_t i) { vals[i] = rotated(f, grid[i]); });
    std::vector<std::pair<double, double>> brackets;
    for (std::size_t i = 0; i < n; ++i)
        if ((vals[i] < 0) != (vals[i + 1] < 0) || vals[i + 1] == 0) brackets.emplace_back(grid[i], grid[i + 1]);
    std::vector<ZeroRecord> out(brackets.size());
    parallel_for(brackets.size(), threads,
                 [&](std::size_t i) { out[i] = refine_zero(f, brackets[i].first, brackets[i].second); });
    for (std::size_t i = 0; i < out.size(); ++i) out[i].index = static_cast<int>(i + 1);
    return out;
}

} // namespace detail

// Sign-change scan of the rotated function on a 0.05 grid, each bracket
// refined to full precision.  The count is checked against the argument
// principle; on disagreement the grid is refined once before giving up.
inline ZeroCatalog scan_zeros(LFunction f, double T_max, int threads = 1) {
    if (!(T_max > 0) || T_max > 200) raise(ErrorKind::ArgumentDomain, "scan_zeros: need 0 < T_max <= 200");
    ZeroCatalog cat;
    cat.function = f;
    cat.covered_to = T_max;
    const double expected = predicted_count(f, T_max);
    const long want = std::lround(expected);
    for (double step : {0.05, 0.025}) {
        cat.records = detail::scan_grid(f, T_max, step, threads);
        if (static_cast<long>(cat.records.size()) == want) return cat;
    }
    // locate the first gap where the running count disagrees
    std::ostringstream msg;
    msg.precision(12);
    double lo = 0, hi = T_max;
    CriticalArg arg(f);
    for (std::size_t i = 0; i + 1 < cat.records.size(); ++i) {
        const double mid = 0.5 * (cat.records[i].ordinate + cat.records[i + 1].ordinate);
        if (std::lround(smooth_count(f, mid) + arg.S(mid)) != static_cast<long>(i + 1)) {
            lo = i ? cat.records[i - 1].ordinate : 0.0;
            hi = mid;
            break;
        }
    }
    msg << "found " << cat.records.size() << " zeros up to " << T_max << ", argument principle predicts " << want
        << " (" << expected << "); suspect interval [" << lo << ", " << hi << "]";
    raise(ErrorKind::MissedZeroSuspected, msg.str());
}

struct CountingReport {
    double T = 0;
    double main_term = 0;
    double S_term = 0;
    double total = 0;
    int jump_count = 0;
    double remainder_bound = 0; // c/T with c = 1
};

inline double rvm_main_term(double T) {
    const double x = T / (2 * M_PI);
    return x * std::log(x) - x + 7.0 / 8.0;
}

// Counting with a shared argument tracker; evaluate T in increasing order for speed.
class CountingEvaluator {
public:
    explicit CountingEvaluator(const ZeroCatalog* cat = nullptr) : cat_(cat), arg_(LFunction::zeta) {}

    CountingReport operator()(double T) {
        if (!(T >= 2)) raise(ErrorKind::ArgumentDomain, "riemann_von_mangoldt: T must be >= 2");
        CountingReport r;
        r.T = T;
        r.main_term = rvm_main_term(T);
        r.S_term = arg_.S(T);
        r.total = r.main_term + r.S_term;
        r.jump_count = cat_ ? static_cast<int>(cat_->count_up_to(T)) : 0;
        r.remainder_bound = 1.0 / T;
        return r;
    }

private:
    const ZeroCatalog* cat_;
    CriticalArg arg_;
};

inline CountingReport riemann_von_mangoldt(double T, const ZeroCatalog* cat = nullptr) {
    CountingEvaluator ev(cat);
    return ev(T);
}

inline double s_bound(double t) { return 0.1038 * std::log(t) + 0.2573 * std::log(std::log(t)) + 8.3675; }

// |S(t)| against the explicit bound on a 0.1 grid in [e, T_max].
inline AuditReport s_of_t_bound_check(double T_max) {
    if (!(T_max >= M_E)) raise(ErrorKind::ArgumentDomain, "s_of_t_bound_check: T_max must be >= e");
    CriticalArg arg(LFunction::zeta);
    AuditReport r;
    r.claim_id = "s_bound";
    double worst_margin = INFINITY, max_abs = 0, t_max_abs = M_E, bound_at_max = s_bound(M_E);
    std::size_t points = 0, violations = 0;
    for (std::size_t i = 0;; ++i) {
        const double t = M_E + 0.1 * double(i);
        if (t > T_max + 1e-12) break;
        const double S = arg.S(t), b = s_bound(t);
        ++points;
        if (std::abs(S) > b) ++violations;
        worst_margin = std::min(worst_margin, b - std::abs(S));
        if (std::abs(S) > max_abs) {
            max_abs = std::abs(S);
            t_max_abs = t;
            bound_at_max = b;
        }
    }
    r.set_sides(Complex(max_abs, 0), Complex(bound_at_max, 0));
    r.verdict = violations == 0 ? Verdict::pass : Verdict::fail;
    r.add("grid_points", double(points));
    r.add("violations", double(violations));
    r.add("max_abs_S", max_abs);
    r.add("t_at_max_abs_S", t_max_abs);
    r.add("min_margin", worst_margin);
    r.add("bound_at_T_max", s_bound(T_max));
    r.notes = "lhs = max |S(t)| on the grid, rhs = bound at that t";
    return r;
}

// N_H(E) = N_zeta(E/2) written through theta:
// (1/pi) arg Gamma(1/4 + iE/4) - (E/4pi) log pi + (1/pi) arg zeta(1/2 + iE/2) + 1
inline double n_H_guinand_weil(double E) {
    if (!(E >= 4)) raise(ErrorKind::ArgumentDomain, "n_H_guinand_weil: E must be >= 4");
    ArgTracker tr = gamma_tracker();
    const double arg_gamma = log_gamma_continuous(Complex(0.25, E / 4), tr).imag();
    CriticalArg arg(LFunction::zeta);
    return arg_gamma / M_PI - E / (4 * M_PI) * std::log(M_PI) + arg.S(E / 2) + 1;
}

// The three-term expression exactly as it is usually quoted, kept for the
// audit: (1/pi) arg Gamma(1/4 + iE/4) - (E/2pi)(log pi - log(E/2e)) - (1/pi) arg zeta.
inline double n_H_guinand_weil_published(double E) {
    if (!(E >= 4)) raise(ErrorKind::ArgumentDomain, "n_H_guinand_weil_published: E must be >= 4");
    ArgTracker tr = gamma_tracker();
    const double arg_gamma = log_gamma_continuous(Complex(0.25, E / 4), tr).imag();
    CriticalArg arg(LFunction::zeta);
    return arg_gamma / M_PI - E / (2 * M_PI) * (std::log(M_PI) - std::log(E / (2 * M_E))) - arg.S(E / 2);
}

struct BijectionAudit {
    std::vector<double> E_grid;
    std::vector<int> N_H_values;
    std::vector<int> N_zeta_values;
    std::vector<int> delta_values;
    bool pass = true;
    double first_failure_E = NAN;

    std::string verdict_text() const {
        if (pass) return "pass";
        std::ostringstream o;
        o.precision(12);
        o << "fail at E = " << first_failure_E;
        return o.str();
    }
};

// Delta(E) = N_H(E) - N_zeta(E/2) on a grid straddling every jump of both
// counts, plus a uniform 0.5 grid.
inline BijectionAudit bijection_audit(double E_max, const std::vector<double>& filter_roots, const ZeroCatalog& zeta) {
    if (zeta.function != LFunction::zeta) raise(ErrorKind::InvalidArgument, "bijection_audit: needs the zeta catalog");
    if (zeta.covered_to < E_max / 2) raise(ErrorKind::IncompleteCatalog, "bijection_audit: catalog does not reach E_max/2");
    std::vector<double> roots = filter_roots;
    std::sort(roots.begin(), roots.end());
    std::vector<double> grid;
    for (double E = 0.5; E <= E_max + 1e-12; E += 0.5) grid.push_back(E);
    const double off = 1e-3;
    for (const auto& r : zeta.records)
        if (2 * r.ordinate <= E_max) {
            grid.push_back(2 * r.ordinate - off);
            grid.push_back(std::min(E_max, 2 * r.ordinate + off));
        }
    for (double e : roots)
        if (e <= E_max) {
            grid.push_back(e - off);
            grid.push_back(std::min(E_max, e + off));
        }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    BijectionAudit a;
    for (double E : grid) {
        const int nh = static_cast<int>(std::upper_bound(roots.begin(), roots.end(), E) - roots.begin());
        const int nz = static_cast<int>(zeta.count_up_to(E / 2));
        a.E_grid.push_back(E);
        a.N_H_values.push_back(nh);
        a.N_zeta_values.push_back(nz);
        a.delta_values.push_back(nh - nz);
        if (a.pass && nh != nz) {
            a.pass = false;
            a.first_failure_E = E;
        }
    }
    return a;
}

struct FilterSpectrum {
    std::vector<FilterRoot> roots;
    std::vector<std::pair<double, std::string>> failures; // seed, error text
    int worst_error_kind = -1;
};

// Newton on the filter from every seed 2 t_n + 0.05 with 2 t_n <= E_max.
inline FilterSpectrum filter_spectrum(Kernel k, double E_max, const ZeroCatalog& cat, const RindlerScale& scale,
                                      const ContourSpec& c, Precision p = Precision::double_, int threads = 1) {
    FilterSpectrum fs;
    for (const auto& z : cat.records) {
        const double seed = 2 * z.ordinate + 0.05;
        if (2 * z.ordinate > E_max) break;
        try {
            fs.roots.push_back(newton_filter_root(k, seed, scale, c, p, threads));
        } catch (const Error& e) {
            fs.failures.emplace_back(seed, e.what());
        }
    }
    return fs;
}

// ---- catalog persistence --------------------------------------------------

inline std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        raise(ErrorKind::Io, "sha256: digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 15]);
    }
    return out;
}

inline std::string format_g17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string catalog_serialize(const ZeroCatalog& cat) {
    std::string body = "#zerocatalog v1 " + std::string(to_string(cat.function)) + "\n";
    for (const auto& r : cat.records) {
        body += std::to_string(r.index) + "\t" + format_g17(r.ordinate) + "\t" + format_g17(r.residual) + "\t" +
                std::string(to_string(r.method)) + "\n";
    }
    return body + "#sha256 " + sha256_hex(body) + "\n";
}

inline void catalog_store(const ZeroCatalog& cat, const std::string& path) {
    const std::string text = catalog_serialize(cat);
    const std::string tmp = path + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) raise(ErrorKind::Io, "catalog_store: cannot open " + tmp);
        out << text;
        if (!out.flush()) raise(ErrorKind::Io, "catalog_store: write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        raise(ErrorKind::Io, "catalog_store: rename to " + path + " failed");
    }
}

inline ZeroCatalog catalog_parse(const std::string& text) {
    const auto nl = text.find('\n');
    const std::string header = text.substr(0, nl);
    const std::string prefix = "#zerocatalog v";
    if (header.rfind(prefix, 0) != 0) raise(ErrorKind::ChecksumMismatch, "catalog: missing header");
    std::istringstream hs(header.substr(prefix.size()));
    int version = 0;
    std::string fn;
    hs >> version >> fn;
    if (version != 1) raise(ErrorKind::VersionUnsupported, "catalog: version " + std::to_string(version));
    if (fn != "zeta" && fn != "beta") raise(ErrorKind::ChecksumMismatch, "catalog: unknown function tag");

    const auto tag = text.rfind("#sha256 ");
    if (tag == std::string::npos || nl == std::string::npos || tag <= nl)
        raise(ErrorKind::ChecksumMismatch, "catalog: checksum line missing");
    const std::string body = text.substr(0, tag);
    std::string digest = text.substr(tag + 8);
    if (digest.empty() || digest.back() != '\n') raise(ErrorKind::ChecksumMismatch, "catalog: truncated checksum line");
    digest.pop_back();
    if (digest != sha256_hex(body)) raise(ErrorKind::ChecksumMismatch, "catalog: checksum does not match");

    ZeroCatalog cat;
    cat.function = fn == "zeta" ? LFunction::zeta : LFunction::beta;
    std::istringstream in(body.substr(nl + 1));
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string idx, ord, res, method;
        std::getline(ls, idx, '\t');
        std::getline(ls, ord, '\t');
        std::getline(ls, res, '\t');
        std::getline(ls, method, '\t');
        ZeroRecord r;
        r.index = std::stoi(idx);
        r.ordinate = std::strtod(ord.c_str(), nullptr);
        r.residual = std::strtod(res.c_str(), nullptr);
        r.function = cat.function;
        r.method = method == "sign_scan"       ? ZeroMethod::sign_scan
                   : method == "filter_root" ? ZeroMethod::filter_root
                                             : ZeroMethod::newton_refine;
        cat.records.push_back(r);
    }
    cat.covered_to = cat.records.empty() ? 0 : cat.records.back().ordinate;
    return cat;
}

inline ZeroCatalog catalog_load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorKind::Io, "catalog_load: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return catalog_parse(ss.str());
}

} // namespace mbz
