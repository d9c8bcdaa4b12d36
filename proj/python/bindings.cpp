#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cubejoin/engine.hpp"
#include "cubejoin/generators.hpp"
#include "cubejoin/oracle.hpp"
#include "cubejoin/query.hpp"

namespace py = pybind11;
using namespace cubejoin;

namespace {

Query make_query(const Catalog& catalog, const std::string& text,
                 const std::optional<std::string>& mode) {
    Query q = parse_query(text, catalog);
    if (mode) {
        if (*mode == "tuples")
            q.aggregate = Aggregate::Tuples;
        else if (*mode == "count")
            q.aggregate = Aggregate::Count;
        else
            throw QueryError("mode must be 'tuples' or 'count', got '" + *mode + "'");
    }
    return q;
}

AttributeOrder names_to_order(const Query& q, const std::vector<std::string>& names) {
    AttributeOrder order;
    for (const auto& name : names) {
        const int id = q.attribute_id(name);
        if (id < 0) throw QueryError("query has no attribute named '" + name + "'");
        order.push_back(id);
    }
    return order;
}

py::list tuples_to_python(const std::vector<std::vector<Value>>& tuples) {
    py::list out;
    for (const auto& t : tuples) {
        py::tuple row(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) row[i] = t[i];
        out.append(std::move(row));
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Columnar join engine: budgeted worst-case-optimal joins with "
              "run-time learning of attribute orders";

    py::register_exception<QueryError>(m, "QueryError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    py::class_<Catalog>(m, "Catalog")
        .def(py::init<>())
        .def(
            "load_csv",
            [](Catalog& c, const std::string& name, const std::string& path,
               const std::vector<std::string>& schema, bool header) {
                c.add_table(load_csv(name, path, schema, header));
            },
            py::arg("name"), py::arg("path"), py::arg("schema"), py::arg("header") = false)
        .def(
            "add_table",
            [](Catalog& c, const std::string& name,
               const std::vector<std::pair<std::string, std::vector<Value>>>& columns) {
                std::vector<Column> cols;
                for (const auto& [n, values] : columns) cols.push_back({n, values});
                c.add_table(std::make_shared<ColumnTable>(name, std::move(cols)));
            },
            py::arg("name"), py::arg("columns"))
        .def("table_names", &Catalog::table_names);

    m.def(
        "parse_query",
        [](const std::string& text) {
            const Query q = parse_query(text);
            py::dict out;
            out["text"] = to_text(q);
            out["mode"] = q.aggregate == Aggregate::Count ? "count" : "tuples";
            py::list attrs;
            for (const auto& a : q.attributes) attrs.append(a.name);
            out["attributes"] = std::move(attrs);
            return out;
        },
        py::arg("text"), "Parse query text; returns canonical text, mode and attribute names.");

    m.def(
        "execute",
        [](const Catalog& catalog, const std::string& query,
           const std::optional<std::string>& mode, int threads, std::uint64_t budget,
           double exploration, std::uint64_t seed,
           const std::optional<std::vector<std::string>>& forced_order) {
            const Query q = make_query(catalog, query, mode);
            EngineConfig config;
            config.threads = threads;
            config.budget_per_episode = budget;
            config.exploration = exploration;
            config.seed = seed;
            if (forced_order) config.forced_order = names_to_order(q, *forced_order);
            QueryResult r;
            {
                py::gil_scoped_release release;
                r = execute(catalog, q, config);
            }
            py::dict out;
            out["mode"] = r.mode == Aggregate::Count ? "count" : "tuples";
            out["count"] = r.count;
            out["tuples"] = tuples_to_python(r.tuples);
            out["episodes"] = r.episodes;
            out["steps"] = r.steps;
            out["reward_sum"] = r.reward_sum;
            out["wall_seconds"] = r.wall_seconds;
            out["materialized"] = r.materialized;
            py::list stats;
            for (const auto& s : r.order_stats)
                stats.append(py::make_tuple(order_text(q, s.order), s.episodes, s.mean_reward));
            out["order_stats"] = std::move(stats);
            return out;
        },
        py::arg("catalog"), py::arg("query"), py::kw_only(), py::arg("mode") = std::nullopt,
        py::arg("threads") = 1, py::arg("budget") = 10000, py::arg("exploration") = 1e-6,
        py::arg("seed") = 0, py::arg("forced_order") = std::nullopt,
        "Run a query; returns results plus episode/step/order statistics.");

    m.def(
        "oracle",
        [](const Catalog& catalog, const std::string& query,
           const std::optional<std::string>& mode) {
            const Query q = make_query(catalog, query, mode);
            const OracleResult r = oracle_execute(catalog, q);
            py::dict out;
            out["count"] = r.count;
            out["tuples"] = tuples_to_python(r.tuples);
            return out;
        },
        py::arg("catalog"), py::arg("query"), py::kw_only(), py::arg("mode") = std::nullopt,
        "Brute-force evaluation of the same query, for cross-checking.");

    m.def("genquery", &generate_query, py::arg("kind"), py::arg("n"),
          "Benchmark query text: clique, cycle or loomis-whitney.");
}
