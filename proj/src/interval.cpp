#include "ifslab/interval.hpp"

#include <cstdio>

namespace ifslab {

std::string Interval::str() const {
    char buf[80];
    std::snprintf(buf, sizeof buf, "[%.17g, %.17g]", lo_, hi_);
    return buf;
}

}  // namespace ifslab
