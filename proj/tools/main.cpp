#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cubejoin/engine.hpp"
#include "cubejoin/generators.hpp"
#include "cubejoin/oracle.hpp"
#include "cubejoin/query.hpp"

namespace {

using namespace cubejoin;

struct CommonOptions {
    std::vector<std::string> tables;  // name=path
    std::string query_path;
    std::string query_text;
    std::string mode;
};

struct RunOptions : CommonOptions {
    int threads = 1;
    std::uint64_t budget = 10000;
    double exploration = 1e-6;
    std::uint64_t seed = 0;
    std::string stats_path;
};

void add_common_flags(CLI::App& cmd, CommonOptions& opt) {
    cmd.add_option("--table", opt.tables, "Input table as name=path (repeatable)");
    auto* file = cmd.add_option("--query", opt.query_path, "File containing the query text");
    auto* text = cmd.add_option("--query-text", opt.query_text, "Query text given inline");
    file->excludes(text);
    cmd.add_option("--mode", opt.mode, "Aggregate override: tuples or count")
        ->check(CLI::IsMember({"tuples", "count"}));
}

std::string read_query_text(const CommonOptions& opt) {
    if (!opt.query_text.empty()) return opt.query_text;
    if (opt.query_path.empty()) throw QueryError("one of --query or --query-text is required");
    std::ifstream f(opt.query_path, std::ios::binary);
    if (!f) throw IoError("cannot open query file '" + opt.query_path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

// Column counts come from the query when the table is joined (atoms fix the
// arity) and from the file's first line otherwise. Columns are named
// col0..colN, matching what unary predicates in headerless inputs must use.
std::size_t table_arity(const Query& q, const std::string& name, const std::string& path) {
    std::size_t arity = 0;
    for (const auto& atom : q.atoms) {
        if (atom.table != name) continue;
        if (arity && arity != atom.attrs.size())
            throw QueryError("table '" + name + "' is used with different arities");
        arity = atom.attrs.size();
    }
    if (arity) return arity;
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open table file '" + path + "'");
    std::string line;
    if (!std::getline(f, line) || line.empty())
        throw IoError("cannot infer column count of empty file '" + path + "'");
    return static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
}

Catalog load_tables(const Query& q, const std::vector<std::string>& specs) {
    Catalog catalog;
    for (const auto& spec : specs) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size())
            throw QueryError("--table expects name=path, got '" + spec + "'");
        const std::string name = spec.substr(0, eq);
        const std::string path = spec.substr(eq + 1);
        std::vector<std::string> schema;
        const std::size_t arity = table_arity(q, name, path);
        for (std::size_t c = 0; c < arity; ++c) schema.push_back("col" + std::to_string(c));
        catalog.add_table(load_csv(name, path, schema, /*header=*/false));
    }
    return catalog;
}

Query prepare_query(const CommonOptions& opt, Catalog& catalog) {
    const std::string text = read_query_text(opt);
    Query q = parse_query(text);
    if (opt.mode == "tuples") q.aggregate = Aggregate::Tuples;
    if (opt.mode == "count") q.aggregate = Aggregate::Count;
    catalog = load_tables(q, opt.tables);
    parse_query(text, catalog);  // full validation against the loaded schemas
    return q;
}

void print_tuples(const std::vector<std::vector<Value>>& tuples) {
    for (const auto& t : tuples) {
        std::string line = "tuple: ";
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i) line += ',';
            line += std::to_string(t[i]);
        }
        std::cout << line << "\n";
    }
}

int cmd_run(const RunOptions& opt) {
    Catalog catalog;
    const Query q = prepare_query(opt, catalog);

    EngineConfig config;
    config.threads = opt.threads;
    config.budget_per_episode = opt.budget;
    config.exploration = opt.exploration;
    config.seed = opt.seed;
    const QueryResult result = execute(catalog, q, config);

    if (result.mode == Aggregate::Tuples) {
        print_tuples(result.tuples);
        std::cout << "tuples: " << result.tuples.size() << "\n";
    } else {
        std::cout << "count: " << result.count << "\n";
    }
    std::cout << "episodes: " << result.episodes << "\n";
    std::cout << "steps: " << result.steps << "\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", result.wall_seconds);
    std::cout << "wall_seconds: " << buf << "\n";
    if (!opt.stats_path.empty()) {
        write_stats_file(opt.stats_path, q, result.order_stats);
        std::cout << "stats: " << opt.stats_path << "\n";
    }
    return 0;
}

int cmd_oracle(const CommonOptions& opt) {
    Catalog catalog;
    const Query q = prepare_query(opt, catalog);
    const OracleResult result = oracle_execute(catalog, q);
    if (q.aggregate == Aggregate::Tuples) {
        print_tuples(result.tuples);
        std::cout << "tuples: " << result.tuples.size() << "\n";
    } else {
        std::cout << "count: " << result.count << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"In-memory columnar join engine with budgeted, order-learning execution"};
    app.require_subcommand(1);

    RunOptions run_opt;
    auto* run = app.add_subcommand("run", "Load tables, execute a query, print a report");
    add_common_flags(*run, run_opt);
    run->add_option("--threads", run_opt.threads, "Worker threads per episode")
        ->check(CLI::PositiveNumber);
    run->add_option("--budget", run_opt.budget, "Step budget per thread and episode")
        ->check(CLI::PositiveNumber);
    run->add_option("--exploration", run_opt.exploration, "UCB exploration constant");
    run->add_option("--seed", run_opt.seed, "Random seed");
    run->add_option("--stats", run_opt.stats_path, "Write per-order statistics to this file");

    CommonOptions oracle_opt;
    auto* oracle = app.add_subcommand("oracle", "Brute-force evaluation for cross-checking");
    add_common_flags(*oracle, oracle_opt);

    std::string gen_kind;
    int gen_n = 0;
    auto* gen = app.add_subcommand("genquery", "Print a benchmark query");
    gen->add_option("kind", gen_kind, "clique, cycle or loomis-whitney")->required();
    gen->add_option("n", gen_n, "Size (nodes or degree), at least 3")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (app.got_subcommand(run)) return cmd_run(run_opt);
        if (app.got_subcommand(oracle)) return cmd_oracle(oracle_opt);
        std::cout << cubejoin::generate_query(gen_kind, gen_n) << "\n";
        return 0;
    } catch (const cubejoin::QueryError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const cubejoin::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
