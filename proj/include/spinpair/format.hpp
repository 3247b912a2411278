#pragma once

#include <cstdio>
#include <string>

namespace spinpair {

// 17 significant digits, '.' decimal separator, no locale dependence.
inline std::string fmt17(double x) {
    if (x == 0.0) x = 0.0;  // canonicalize -0
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace spinpair
