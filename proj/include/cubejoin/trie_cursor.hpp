#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "cubejoin/catalog.hpp"
#include "cubejoin/common.hpp"

namespace cubejoin {

struct CursorStats {
    std::uint64_t opens = 0;
    std::uint64_t nexts = 0;
    std::uint64_t seeks = 0;
    std::uint64_t total() const { return opens + nexts + seeks; }
};

// Views a sort index as a trie whose level i enumerates the distinct values
// of column_order[i] under the fixed values of the levels above. Navigation
// is a stack of row-range frames over the permutation; nothing is
// materialized. seek is forward-only and gallops from the current position.
class TrieCursor {
  public:
    TrieCursor(const ColumnTable& table, std::shared_ptr<const SortIndex> index,
               CursorStats* stats = nullptr);

    int depth() const { return static_cast<int>(frames_.size()) - 1; }
    std::size_t level_count() const { return index_->column_order.size(); }

    // Descend to the first value of the next level. Returns nothing only when
    // opening the root level of an empty table.
    std::optional<Value> open();
    void up();

    // Advance to the next distinct value at the current level.
    std::optional<Value> next();

    // Least value >= v at the current level, never moving backwards.
    std::optional<Value> seek(Value v);

    std::optional<Value> value() const;
    bool at_end() const;

    // Sorted-row positions sharing the full key down to the current level;
    // the range length is the key's multiplicity.
    std::pair<std::uint32_t, std::uint32_t> current_duplicate_range() const;

    // Original table row for a sorted position, for leaf expansion.
    std::uint32_t row_at(std::uint32_t sorted_pos) const { return index_->rows[sorted_pos]; }

  private:
    struct Frame {
        std::uint32_t group_lo;
        std::uint32_t group_hi;  // inclusive
        std::uint32_t pos;       // first row of the current run; > group_hi at end
    };

    Value key(int level, std::uint32_t sorted_pos) const {
        return columns_[index_->column_order[level]]->values[index_->rows[sorted_pos]];
    }

    // Last row of the run starting at pos within the current frame.
    std::uint32_t run_end(const Frame& f) const;

    void count_open() const { if (stats_) ++stats_->opens; }
    void count_next() const { if (stats_) ++stats_->nexts; }
    void count_seek() const { if (stats_) ++stats_->seeks; }

    const ColumnTable& table_;
    std::shared_ptr<const SortIndex> index_;
    std::vector<const Column*> columns_;
    CursorStats* stats_;
    std::vector<Frame> frames_;
};

}  // namespace cubejoin
