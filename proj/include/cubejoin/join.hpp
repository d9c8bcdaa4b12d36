#pragma once

#include <cstdint>
#include <vector>

#include "cubejoin/cube.hpp"
#include "cubejoin/query.hpp"

namespace cubejoin {

// Collects results without imposing an output order. Count mode only bumps
// the counter (weighted by duplicate multiplicity); tuples mode stores each
// distinct attribute-value vector, which disjoint task cubes guarantee is
// produced at most once globally. `materialized` counts stored vectors so
// count-mode runs can prove they never materialized anything.
struct ResultSink {
    explicit ResultSink(Aggregate m) : mode(m) {}

    Aggregate mode;
    std::uint64_t count = 0;
    std::vector<std::vector<Value>> tuples;
    std::uint64_t materialized = 0;

    void emit(const std::vector<Value>& tuple, std::uint64_t multiplicity) {
        if (mode == Aggregate::Count) {
            count += multiplicity;
        } else {
            tuples.push_back(tuple);
            ++materialized;
        }
    }
};

// What one budgeted call verified: the processed cubes form a staircase over
// the target (reported in level order, empty levels omitted) and steps is the
// exact work spent (cursor opens/nexts/seeks plus one per emitted result).
struct ProcessedReport {
    std::vector<Cube> processed;
    std::uint64_t steps = 0;
};

// Joins the part of the query falling inside `target`, stopping after the
// first completed value once `budget` steps are spent. Emits every result
// tuple lying in target exactly once; never emits a tuple outside it, and the
// processed cubes contain no unverified point. An empty target is reported
// processed at zero cost.
ProcessedReport join_one_cube(const Query& q, const BoundTables& tables,
                              const AttributeOrder& order, const Cube& target,
                              std::uint64_t budget, ResultSink& sink);

}  // namespace cubejoin
