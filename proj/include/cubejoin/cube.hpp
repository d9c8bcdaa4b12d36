#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "cubejoin/common.hpp"

namespace cubejoin {

// Axis-aligned box of closed integer intervals, one [lo, hi] pair per join
// attribute (indexed by attribute id). An interval with lo > hi is empty and
// makes the whole cube empty.
struct Cube {
    std::vector<Value> lo;
    std::vector<Value> hi;

    std::size_t dims() const { return lo.size(); }

    bool empty() const {
        if (lo.empty()) return true;
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (lo[i] > hi[i]) return true;
        return false;
    }

    bool contains(const std::vector<Value>& point) const {
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (point[i] < lo[i] || point[i] > hi[i]) return false;
        return true;
    }

    bool operator==(const Cube&) const = default;
};

// Number of integer lattice points inside the cube, exact.
mpz_class volume(const Cube& c);

bool cubes_overlap(const Cube& a, const Cube& b);
bool cube_within(const Cube& inner, const Cube& outer);

// One line per cube in dumps: "[lo..hi] [lo..hi] ..."
std::string to_string(const Cube& c);

}  // namespace cubejoin
