#include "cubejoin/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>
#include <thread>
#include <utility>

#include "cubejoin/task_manager.hpp"

namespace cubejoin {

namespace {

BoundTables resolve_tables(const Catalog& catalog, const Query& q) {
    BoundTables bound;
    bound.reserve(q.atoms.size());
    std::map<std::string, std::shared_ptr<const ColumnTable>> filtered;
    for (const auto& atom : q.atoms) {
        auto it = filtered.find(atom.table);
        if (it == filtered.end()) {
            auto base = catalog.find(atom.table);
            if (!base) throw QueryError("unknown table '" + atom.table + "'");
            it = filtered.emplace(atom.table, apply_unary_filters(base, q.unary_predicates))
                     .first;
        }
        bound.push_back(it->second);
    }
    return bound;
}

Cube domain_cube(const Query& q) {
    Cube c;
    const std::size_t n = q.attribute_count();
    for (const auto& a : q.attributes) {
        if (a.domain_empty) {
            c.lo.assign(n, 0);
            c.hi.assign(n, -1);
            return c;
        }
        c.lo.push_back(a.domain_lo);
        c.hi.push_back(a.domain_hi);
    }
    return c;
}

void check_order(const Query& q, const AttributeOrder& order) {
    if (order.size() != q.attribute_count())
        throw QueryError("attribute order must list every attribute exactly once");
    std::vector<char> seen(q.attribute_count(), 0);
    for (int a : order) {
        if (a < 0 || a >= static_cast<int>(q.attribute_count()) || seen[a])
            throw QueryError("attribute order must be a permutation of the join attributes");
        seen[a] = 1;
    }
}

struct EpisodeOutcome {
    double reward = 0;
    std::uint64_t steps = 0;
};

EpisodeOutcome run_worker(const Query& q, const BoundTables& tables,
                          const AttributeOrder& order, TaskManager& tm,
                          const mpz_class& total_volume, std::uint64_t budget,
                          ResultSink& sink) {
    EpisodeOutcome out;
    std::uint64_t remaining = budget;
    while (remaining > 0) {
        auto target = tm.retrieve();
        if (!target) break;
        ProcessedReport report = join_one_cube(q, tables, order, *target, remaining, sink);
        tm.remove(*target, report.processed);
        out.reward += compute_reward(report.processed, total_volume);
        out.steps += report.steps;
        remaining = report.steps >= remaining ? 0 : remaining - report.steps;
    }
    return out;
}

void sort_stats(const Query& q, std::vector<OrderStats>& stats) {
    std::sort(stats.begin(), stats.end(), [&q](const OrderStats& a, const OrderStats& b) {
        if (a.episodes != b.episodes) return a.episodes > b.episodes;
        return order_text(q, a.order) < order_text(q, b.order);
    });
}

}  // namespace

QueryResult execute(const Catalog& catalog, const Query& query, const EngineConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    if (config.threads < 1) throw std::invalid_argument("threads must be >= 1");
    if (config.budget_per_episode < 1) throw std::invalid_argument("budget must be >= 1");

    Query q = query;
    BoundTables tables = resolve_tables(catalog, q);
    compute_attribute_domains(q, tables);
    if (config.forced_order) check_order(q, *config.forced_order);

    QueryResult result;
    result.mode = q.aggregate;

    TaskManager tm;
    const int pieces = config.initial_pieces > 0 ? config.initial_pieces : config.threads;
    tm.init(domain_cube(q), pieces, config.seed);
    const mpz_class total = tm.total_volume();

    UctLearner learner(q, config.exploration, config.seed + 1);

    std::vector<ResultSink> sinks;
    sinks.reserve(config.threads);
    for (int t = 0; t < config.threads; ++t) sinks.emplace_back(q.aggregate);

    while (!tm.finished()) {
        if (result.episodes >= config.max_episodes)
            throw std::runtime_error("episode limit exceeded (" +
                                     std::to_string(config.max_episodes) + " episodes)");
        AttributeOrder order;
        if (config.forced_order) {
            order = *config.forced_order;
            learner.register_forced(order);
        } else {
            order = learner.select();
        }

        double episode_reward = 0;
        if (config.threads == 1) {
            EpisodeOutcome o = run_worker(q, tables, order, tm, total,
                                          config.budget_per_episode, sinks[0]);
            episode_reward = o.reward;
            result.steps += o.steps;
        } else {
            std::vector<EpisodeOutcome> outcomes(config.threads);
            std::vector<std::thread> workers;
            workers.reserve(config.threads);
            for (int t = 0; t < config.threads; ++t)
                workers.emplace_back([&, t] {
                    outcomes[t] = run_worker(q, tables, order, tm, total,
                                             config.budget_per_episode, sinks[t]);
                });
            for (auto& w : workers) w.join();
            for (const auto& o : outcomes) {
                episode_reward += o.reward;
                result.steps += o.steps;
            }
        }

        learner.update(order, episode_reward);
        result.reward_sum += episode_reward;
        ++result.episodes;
    }

    for (auto& s : sinks) {
        result.count += s.count;
        result.materialized += s.materialized;
        for (auto& t : s.tuples) result.tuples.push_back(std::move(t));
    }
    if (q.aggregate == Aggregate::Tuples) {
        std::sort(result.tuples.begin(), result.tuples.end());
        result.count = result.tuples.size();
    }

    result.order_stats = learner.order_statistics();
    sort_stats(q, result.order_stats);
    result.total_volume = total;
    result.processed_volume = tm.processed_volume();

    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

std::string order_text(const Query& q, const AttributeOrder& order) {
    std::string out;
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (i) out += ',';
        out += q.attributes[order[i]].name;
    }
    return out;
}

std::string format_order_stats(const Query& q, const std::vector<OrderStats>& stats) {
    std::vector<OrderStats> sorted = stats;
    sort_stats(q, sorted);
    std::string out;
    char buf[64];
    for (const auto& s : sorted) {
        std::snprintf(buf, sizeof buf, "%.9f", s.mean_reward);
        out += order_text(q, s.order);
        out += '\t';
        out += std::to_string(s.episodes);
        out += '\t';
        out += buf;
        out += '\n';
    }
    return out;
}

void write_stats_file(const std::string& path, const Query& q,
                      const std::vector<OrderStats>& stats) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open stats file '" + path + "'");
    f << format_order_stats(q, stats);
    f.flush();
    if (!f) throw IoError("failed writing stats file '" + path + "'");
}

}  // namespace cubejoin
