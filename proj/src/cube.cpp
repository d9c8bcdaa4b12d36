#include "cubejoin/cube.hpp"

#include <sstream>

namespace cubejoin {

mpz_class volume(const Cube& c) {
    if (c.empty()) return 0;
    mpz_class v = 1;
    for (std::size_t i = 0; i < c.dims(); ++i) {
        // hi - lo + 1 computed in mpz space: the width itself can overflow
        // int64 when the interval spans most of the value range.
        mpz_class width = mpz_class(c.hi[i]) - mpz_class(c.lo[i]) + 1;
        v *= width;
    }
    return v;
}

bool cubes_overlap(const Cube& a, const Cube& b) {
    if (a.empty() || b.empty()) return false;
    for (std::size_t i = 0; i < a.dims(); ++i)
        if (a.hi[i] < b.lo[i] || b.hi[i] < a.lo[i]) return false;
    return true;
}

bool cube_within(const Cube& inner, const Cube& outer) {
    if (inner.empty()) return true;
    if (outer.empty()) return false;
    for (std::size_t i = 0; i < inner.dims(); ++i)
        if (inner.lo[i] < outer.lo[i] || inner.hi[i] > outer.hi[i]) return false;
    return true;
}

std::string to_string(const Cube& c) {
    std::ostringstream out;
    for (std::size_t i = 0; i < c.dims(); ++i) {
        if (i) out << ' ';
        out << '[' << c.lo[i] << ".." << c.hi[i] << ']';
    }
    return out.str();
}

}  // namespace cubejoin
