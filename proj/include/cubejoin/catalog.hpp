#pragma once

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "cubejoin/common.hpp"

namespace cubejoin {

struct Column {
    std::string name;
    std::vector<Value> values;
};

// Permutation of row positions sorted lexicographically by the given column
// sequence (most-significant first). Ties keep original row order, so the
// permutation is a deterministic function of the table contents.
struct SortIndex {
    std::vector<int> column_order;
    std::vector<std::uint32_t> rows;
};

enum class CachePolicy { Persistent, PerQuery };

// Immutable after construction (per-table sort-index cache aside, which is
// internally synchronized). Filtered temporaries carry their own cache and
// release it with the table.
class ColumnTable {
  public:
    ColumnTable(std::string name, std::vector<Column> columns, bool temporary = false);

    const std::string& name() const { return name_; }
    std::size_t row_count() const { return row_count_; }
    std::size_t column_count() const { return columns_.size(); }
    const Column& column(std::size_t id) const { return columns_[id]; }
    const std::vector<Column>& columns() const { return columns_; }
    bool temporary() const { return temporary_; }

    // -1 when no column has that name.
    int column_id(const std::string& name) const;

    // Concurrent callers may race to build the same index; exactly one result
    // is retained and shared. The build counter counts actual sorts, so a
    // cache hit is observable as an unchanged counter.
    std::shared_ptr<const SortIndex> get_or_build_sort_index(
        const std::vector<int>& column_order, CachePolicy policy) const;

    std::uint64_t index_build_count() const { return build_count_.load(); }

  private:
    std::string name_;
    std::vector<Column> columns_;
    std::size_t row_count_;
    bool temporary_;

    mutable std::mutex cache_mutex_;
    mutable std::map<std::vector<int>, std::shared_ptr<const SortIndex>> cache_;
    mutable std::atomic<std::uint64_t> build_count_{0};
};

struct UnaryPredicate {
    std::string table;
    std::string column;
    CmpOp op;
    Value literal;
};

class Catalog {
  public:
    void add_table(std::shared_ptr<const ColumnTable> table);
    std::shared_ptr<const ColumnTable> find(const std::string& name) const;
    std::vector<std::string> table_names() const;

  private:
    std::map<std::string, std::shared_ptr<const ColumnTable>> tables_;
};

// Comma-separated int64 rows, no quoting. The schema fixes the column count
// and names; when header is true the first line is skipped (it only needs to
// have the right field count). Any malformed, missing or extra field is an
// IoError naming the 1-based line.
std::shared_ptr<const ColumnTable> load_csv(const std::string& table_name,
                                            const std::string& path,
                                            const std::vector<std::string>& schema,
                                            bool header);

// Keeps rows satisfying every predicate aimed at this table. Returns the
// input table unchanged when none apply; otherwise a temporary table with a
// fresh (per-query) index cache. Unknown predicate columns are QueryErrors.
std::shared_ptr<const ColumnTable> apply_unary_filters(
    std::shared_ptr<const ColumnTable> table, const std::vector<UnaryPredicate>& predicates);

}  // namespace cubejoin
