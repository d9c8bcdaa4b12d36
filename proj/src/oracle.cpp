#include "cubejoin/oracle.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace cubejoin {

namespace {

constexpr std::uint64_t kSizeGuard = 10'000'000;

// Row positions of `table` passing every unary predicate aimed at it.
std::vector<std::uint32_t> admissible_rows(const ColumnTable& table,
                                           const std::vector<UnaryPredicate>& predicates) {
    std::vector<const UnaryPredicate*> mine;
    for (const auto& p : predicates) {
        if (p.table != table.name()) continue;
        if (table.column_id(p.column) < 0)
            throw QueryError("table '" + p.table + "' has no column '" + p.column + "'");
        mine.push_back(&p);
    }
    std::vector<std::uint32_t> rows;
    for (std::uint32_t r = 0; r < table.row_count(); ++r) {
        bool ok = true;
        for (const auto* p : mine) {
            const auto& col = table.column(static_cast<std::size_t>(table.column_id(p->column)));
            if (!eval_cmp(col.values[r], p->op, p->literal)) {
                ok = false;
                break;
            }
        }
        if (ok) rows.push_back(r);
    }
    return rows;
}

}  // namespace

OracleResult oracle_execute(const Catalog& catalog, const Query& query) {
    const std::size_t k = query.atoms.size();
    std::vector<std::shared_ptr<const ColumnTable>> tables(k);
    std::vector<std::vector<std::uint32_t>> rows(k);
    std::uint64_t combinations = 1;
    for (std::size_t i = 0; i < k; ++i) {
        tables[i] = catalog.find(query.atoms[i].table);
        if (!tables[i]) throw QueryError("unknown table '" + query.atoms[i].table + "'");
        if (tables[i]->column_count() != query.atoms[i].attrs.size())
            throw QueryError("atom arity does not match table '" + query.atoms[i].table + "'");
        rows[i] = admissible_rows(*tables[i], query.unary_predicates);
        if (combinations > kSizeGuard / std::max<std::uint64_t>(rows[i].size(), 1))
            throw std::runtime_error("oracle size guard exceeded (more than 10^7 row combinations)");
        combinations *= rows[i].size();
    }

    OracleResult result;
    std::set<std::vector<Value>> distinct;
    if (combinations == 0) return result;

    const std::size_t n = query.attribute_count();
    std::vector<Value> assignment(n, 0);
    std::vector<char> bound(n, 0);
    std::vector<std::size_t> pick(k, 0);

    // Odometer over one row per atom.
    for (;;) {
        std::fill(bound.begin(), bound.end(), 0);
        bool ok = true;
        for (std::size_t i = 0; i < k && ok; ++i) {
            const std::uint32_t r = rows[i][pick[i]];
            const auto& attrs = query.atoms[i].attrs;
            for (std::size_t c = 0; c < attrs.size(); ++c) {
                const Value v = tables[i]->column(c).values[r];
                const int a = attrs[c];
                if (bound[a] && assignment[a] != v) {
                    ok = false;
                    break;
                }
                assignment[a] = v;
                bound[a] = 1;
            }
        }
        if (ok)
            for (const auto& p : query.inequalities)
                if (!eval_cmp(assignment[p.left], p.op, assignment[p.right])) {
                    ok = false;
                    break;
                }
        if (ok) {
            ++result.count;
            distinct.insert(assignment);
        }

        std::size_t i = 0;
        while (i < k && ++pick[i] == rows[i].size()) pick[i++] = 0;
        if (i == k) break;
    }

    result.tuples.assign(distinct.begin(), distinct.end());
    return result;
}

}  // namespace cubejoin
