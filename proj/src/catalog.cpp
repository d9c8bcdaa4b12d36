#include "cubejoin/catalog.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace cubejoin {

ColumnTable::ColumnTable(std::string name, std::vector<Column> columns, bool temporary)
    : name_(std::move(name)), columns_(std::move(columns)), temporary_(temporary) {
    row_count_ = columns_.empty() ? 0 : columns_[0].values.size();
    for (const Column& c : columns_)
        if (c.values.size() != row_count_)
            throw std::invalid_argument("column '" + c.name + "' length differs from table rows");
    if (row_count_ > std::numeric_limits<std::uint32_t>::max())
        throw std::length_error("table exceeds the supported row count");
}

int ColumnTable::column_id(const std::string& name) const {
    for (std::size_t i = 0; i < columns_.size(); ++i)
        if (columns_[i].name == name) return static_cast<int>(i);
    return -1;
}

std::shared_ptr<const SortIndex> ColumnTable::get_or_build_sort_index(
    const std::vector<int>& column_order, CachePolicy policy) const {
    assert(policy == (temporary_ ? CachePolicy::PerQuery : CachePolicy::Persistent));
    (void)policy;
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        auto it = cache_.find(column_order);
        if (it != cache_.end()) return it->second;
    }

    auto index = std::make_shared<SortIndex>();
    index->column_order = column_order;
    index->rows.resize(row_count_);
    for (std::uint32_t i = 0; i < row_count_; ++i) index->rows[i] = i;
    std::sort(index->rows.begin(), index->rows.end(),
              [&](std::uint32_t a, std::uint32_t b) {
                  for (int col : column_order) {
                      Value va = columns_[col].values[a];
                      Value vb = columns_[col].values[b];
                      if (va != vb) return va < vb;
                  }
                  return a < b;
              });
    build_count_.fetch_add(1);

    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto [it, inserted] = cache_.emplace(column_order, std::move(index));
    return it->second;
}

void Catalog::add_table(std::shared_ptr<const ColumnTable> table) {
    tables_[table->name()] = std::move(table);
}

std::shared_ptr<const ColumnTable> Catalog::find(const std::string& name) const {
    auto it = tables_.find(name);
    return it == tables_.end() ? nullptr : it->second;
}

std::vector<std::string> Catalog::table_names() const {
    std::vector<std::string> names;
    names.reserve(tables_.size());
    for (const auto& [name, table] : tables_) names.push_back(name);
    return names;
}

namespace {

Value parse_field(const std::string& line, std::size_t begin, std::size_t end,
                  std::size_t line_no) {
    // trim surrounding spaces; an all-space field is still missing
    while (begin < end && line[begin] == ' ') ++begin;
    while (end > begin && line[end - 1] == ' ') --end;
    if (begin == end)
        throw IoError("line " + std::to_string(line_no) + ": missing field");
    Value v{};
    auto [ptr, ec] = std::from_chars(line.data() + begin, line.data() + end, v);
    if (ec != std::errc() || ptr != line.data() + end)
        throw IoError("line " + std::to_string(line_no) + ": malformed integer '" +
                      line.substr(begin, end - begin) + "'");
    return v;
}

std::size_t count_fields(const std::string& line) {
    return static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
}

}  // namespace

std::shared_ptr<const ColumnTable> load_csv(const std::string& table_name,
                                            const std::string& path,
                                            const std::vector<std::string>& schema,
                                            bool header) {
    if (schema.empty()) throw IoError("table '" + table_name + "': empty schema");
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");

    std::vector<Column> columns;
    columns.reserve(schema.size());
    for (const std::string& name : schema) columns.push_back(Column{name, {}});

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (header && line_no == 1) {
            if (count_fields(line) != schema.size())
                throw IoError("line 1: header has " + std::to_string(count_fields(line)) +
                              " fields, expected " + std::to_string(schema.size()));
            continue;
        }
        if (line.empty()) {
            // A blank final line is a trailing newline; anywhere else it is a
            // row with missing fields.
            if (in.peek() == std::char_traits<char>::eof()) break;
            throw IoError("line " + std::to_string(line_no) + ": missing field");
        }
        std::size_t begin = 0;
        std::size_t field = 0;
        while (true) {
            std::size_t comma = line.find(',', begin);
            std::size_t end = comma == std::string::npos ? line.size() : comma;
            if (field >= schema.size())
                throw IoError("line " + std::to_string(line_no) + ": too many fields");
            columns[field].values.push_back(parse_field(line, begin, end, line_no));
            ++field;
            if (comma == std::string::npos) break;
            begin = comma + 1;
        }
        if (field != schema.size()) {
            throw IoError("line " + std::to_string(line_no) + ": expected " +
                          std::to_string(schema.size()) + " fields, got " +
                          std::to_string(field));
        }
    }
    return std::make_shared<ColumnTable>(table_name, std::move(columns));
}

std::shared_ptr<const ColumnTable> apply_unary_filters(
    std::shared_ptr<const ColumnTable> table, const std::vector<UnaryPredicate>& predicates) {
    std::vector<std::pair<int, const UnaryPredicate*>> applicable;
    for (const UnaryPredicate& p : predicates) {
        if (p.table != table->name()) continue;
        int col = table->column_id(p.column);
        if (col < 0)
            throw QueryError("unary predicate references unknown column '" + p.table + "." +
                             p.column + "'");
        applicable.emplace_back(col, &p);
    }
    if (applicable.empty()) return table;

    std::vector<std::uint32_t> kept;
    for (std::uint32_t row = 0; row < table->row_count(); ++row) {
        bool ok = true;
        for (const auto& [col, pred] : applicable) {
            if (!eval_cmp(table->column(col).values[row], pred->op, pred->literal)) {
                ok = false;
                break;
            }
        }
        if (ok) kept.push_back(row);
    }

    std::vector<Column> columns;
    columns.reserve(table->column_count());
    for (std::size_t c = 0; c < table->column_count(); ++c) {
        Column col{table->column(c).name, {}};
        col.values.reserve(kept.size());
        for (std::uint32_t row : kept) col.values.push_back(table->column(c).values[row]);
        columns.push_back(std::move(col));
    }
    return std::make_shared<ColumnTable>(table->name(), std::move(columns), true);
}

}  // namespace cubejoin
