#pragma once

#include <cstdio>
#include <string>

namespace cattaneo {

// Round-trip decimal representation of a double.
inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace cattaneo
