// A located critical-line zero.
#pragma once

#include <string_view>

#include "core.hpp"
#include "specfun.hpp"

namespace mbz {

enum class ZeroMethod { sign_scan, newton_refine, filter_root };

inline std::string_view to_string(ZeroMethod m) {
    switch (m) {
    case ZeroMethod::sign_scan: return "sign_scan";
    case ZeroMethod::newton_refine: return "newton_refine";
    case ZeroMethod::filter_root: return "filter_root";
    }
    return "sign_scan";
}

struct ZeroRecord {
    int index = 0;
    double ordinate = 0;
    double residual = 0;
    LFunction function = LFunction::zeta;
    ZeroMethod method = ZeroMethod::newton_refine;

    bool operator==(const ZeroRecord&) const = default;
};

} // namespace mbz
