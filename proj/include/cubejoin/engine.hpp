#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "cubejoin/catalog.hpp"
#include "cubejoin/join.hpp"
#include "cubejoin/learner.hpp"
#include "cubejoin/query.hpp"

namespace cubejoin {

struct EngineConfig {
    int threads = 1;
    std::uint64_t budget_per_episode = 10000;
    double exploration = 1e-6;
    std::uint64_t seed = 0;
    // Hard cap against runaway executions; exceeding it is an error, never a
    // silent truncation.
    std::uint64_t max_episodes = 10'000'000;
    // When set, every episode runs this order and the learner only records
    // statistics.
    std::optional<AttributeOrder> forced_order;
    // Task cubes created up front; 0 means one per thread.
    int initial_pieces = 0;
};

struct QueryResult {
    Aggregate mode = Aggregate::Tuples;
    std::uint64_t count = 0;                  // count mode
    std::vector<std::vector<Value>> tuples;   // tuples mode: distinct, sorted
    std::uint64_t episodes = 0;
    std::uint64_t steps = 0;
    double reward_sum = 0;
    double wall_seconds = 0;
    mpz_class total_volume = 0;      // of the attribute-domain box
    mpz_class processed_volume = 0;  // equals total_volume on completion
    std::uint64_t materialized = 0;           // sink vectors stored; 0 in count mode
    std::vector<OrderStats> order_stats;      // episodes desc, then order text
};

// Filters the input tables, then repeatedly picks an attribute order and runs
// one episode of budgeted cube joins across the worker threads until every
// task cube is processed. Deterministic for a fixed seed and threads = 1.
QueryResult execute(const Catalog& catalog, const Query& query, const EngineConfig& config);

std::string order_text(const Query& q, const AttributeOrder& order);

// Tab-separated "order<TAB>episodes<TAB>mean_reward" lines, episodes
// descending (ties by order text); one row per executed order.
std::string format_order_stats(const Query& q, const std::vector<OrderStats>& stats);

void write_stats_file(const std::string& path, const Query& q,
                      const std::vector<OrderStats>& stats);

}  // namespace cubejoin
