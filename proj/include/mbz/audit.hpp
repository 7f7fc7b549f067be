// AuditReport: both sides of an identity, the gap between them, a verdict.
#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"

namespace mbz {

enum class Verdict { pass, fail, divergent, inconclusive };

inline std::string_view to_string(Verdict v) {
    switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::divergent: return "divergent";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

struct AuditReport {
    std::string claim_id;
    Complex lhs{0, 0};
    Complex rhs{0, 0};
    double abs_discrepancy = 0;
    double rel_discrepancy = 0;
    Verdict verdict = Verdict::inconclusive;
    std::string notes;
    // named scalars (partial sums, fitted slopes, ...) kept in insertion order
    std::vector<std::pair<std::string, double>> details;

    void set_sides(Complex l, Complex r) {
        lhs = l;
        rhs = r;
        abs_discrepancy = std::abs(l - r);
        double scale = std::max(std::abs(l), std::abs(r));
        rel_discrepancy = scale > 0 ? abs_discrepancy / scale : 0.0;
    }
    void add(std::string name, double value) { details.emplace_back(std::move(name), value); }
    double detail(const std::string& name) const {
        for (const auto& [k, v] : details)
            if (k == name) return v;
        return NAN;
    }
};

// Least-squares slope and intercept of y against x.
inline std::pair<double, double> linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    const double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

} // namespace mbz
