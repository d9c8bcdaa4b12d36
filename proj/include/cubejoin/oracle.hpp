#pragma once

#include <cstdint>
#include <vector>

#include "cubejoin/catalog.hpp"
#include "cubejoin/query.hpp"

namespace cubejoin {

struct OracleResult {
    std::uint64_t count = 0;                 // satisfying row combinations
    std::vector<std::vector<Value>> tuples;  // distinct attribute vectors, sorted
};

// Brute-force nested-loop evaluation over every row combination, sharing
// nothing with the engine beyond the catalog. Both aggregates are always
// filled. Guarded: the product of (filtered) table sizes must stay at or
// below 10^7 or a runtime_error is raised.
OracleResult oracle_execute(const Catalog& catalog, const Query& query);

}  // namespace cubejoin
