#include "cubejoin/trie_cursor.hpp"

#include <cassert>

namespace cubejoin {

TrieCursor::TrieCursor(const ColumnTable& table, std::shared_ptr<const SortIndex> index,
                       CursorStats* stats)
    : table_(table), index_(std::move(index)), stats_(stats) {
    columns_.reserve(table_.column_count());
    for (std::size_t i = 0; i < table_.column_count(); ++i) columns_.push_back(&table_.column(i));
    frames_.reserve(index_->column_order.size());
}

std::optional<Value> TrieCursor::open() {
    count_open();
    assert(frames_.size() < index_->column_order.size());
    if (frames_.empty()) {
        if (index_->rows.empty()) return std::nullopt;
        frames_.push_back(Frame{0, static_cast<std::uint32_t>(index_->rows.size()) - 1, 0});
        return key(0, 0);
    }
    const Frame& parent = frames_.back();
    assert(parent.pos <= parent.group_hi);
    Frame child{parent.pos, run_end(parent), parent.pos};
    frames_.push_back(child);
    return key(depth(), child.pos);
}

void TrieCursor::up() {
    assert(!frames_.empty());
    frames_.pop_back();
}

std::optional<Value> TrieCursor::next() {
    count_next();
    Frame& f = frames_.back();
    if (f.pos > f.group_hi) return std::nullopt;
    f.pos = run_end(f) + 1;
    if (f.pos > f.group_hi) return std::nullopt;
    return key(depth(), f.pos);
}

std::optional<Value> TrieCursor::seek(Value v) {
    count_seek();
    Frame& f = frames_.back();
    if (f.pos > f.group_hi) return std::nullopt;
    int level = depth();
    assert(v >= key(level, f.pos));
    if (key(level, f.pos) >= v) return key(level, f.pos);

    // gallop to bracket the first row with key >= v, then binary search
    std::uint64_t base = f.pos;  // key(base) < v
    std::uint64_t bound = 1;
    while (base + bound <= f.group_hi && key(level, static_cast<std::uint32_t>(base + bound)) < v)
        bound <<= 1;
    std::uint64_t lo = base + bound / 2;  // key(lo) < v
    std::uint64_t hi = std::min<std::uint64_t>(base + bound, f.group_hi + std::uint64_t{1});
    while (hi - lo > 1) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        if (key(level, static_cast<std::uint32_t>(mid)) < v)
            lo = mid;
        else
            hi = mid;
    }
    if (hi > f.group_hi) {
        f.pos = f.group_hi + 1;
        return std::nullopt;
    }
    f.pos = static_cast<std::uint32_t>(hi);
    return key(level, f.pos);
}

std::optional<Value> TrieCursor::value() const {
    const Frame& f = frames_.back();
    if (f.pos > f.group_hi) return std::nullopt;
    return key(depth(), f.pos);
}

bool TrieCursor::at_end() const {
    const Frame& f = frames_.back();
    return f.pos > f.group_hi;
}

std::pair<std::uint32_t, std::uint32_t> TrieCursor::current_duplicate_range() const {
    const Frame& f = frames_.back();
    assert(f.pos <= f.group_hi);
    return {f.pos, run_end(f)};
}

std::uint32_t TrieCursor::run_end(const Frame& f) const {
    int level = static_cast<int>(&f - frames_.data());
    Value v = key(level, f.pos);
    // gallop past the run of v, then binary search for its last row
    std::uint64_t base = f.pos;
    std::uint64_t bound = 1;
    while (base + bound <= f.group_hi && key(level, static_cast<std::uint32_t>(base + bound)) == v)
        bound <<= 1;
    std::uint64_t lo = base + bound / 2;  // key(lo) == v
    std::uint64_t hi = std::min<std::uint64_t>(base + bound, f.group_hi + std::uint64_t{1});
    while (hi - lo > 1) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        if (key(level, static_cast<std::uint32_t>(mid)) == v)
            lo = mid;
        else
            hi = mid;
    }
    return static_cast<std::uint32_t>(lo);
}

}  // namespace cubejoin
