#include <doctest.h>

#include <algorithm>
#include <memory>
#include <random>
#include <set>
#include <vector>

#include "cubejoin/catalog.hpp"
#include "cubejoin/trie_cursor.hpp"

using namespace cubejoin;

namespace {

std::shared_ptr<ColumnTable> make_table(const std::vector<std::vector<Value>>& rows,
                                        std::size_t arity) {
    std::vector<Column> cols(arity);
    for (std::size_t c = 0; c < arity; ++c) cols[c].name = "c" + std::to_string(c);
    for (const auto& row : rows)
        for (std::size_t c = 0; c < arity; ++c) cols[c].values.push_back(row[c]);
    return std::make_shared<ColumnTable>("t", std::move(cols));
}

TrieCursor cursor_for(const ColumnTable& t, std::vector<int> order,
                      CursorStats* stats = nullptr) {
    return TrieCursor(t, t.get_or_build_sort_index(order, CachePolicy::Persistent), stats);
}

void walk(TrieCursor& c, std::vector<Value>& path, std::vector<std::vector<Value>>& out) {
    auto v = c.open();
    if (!v) return;
    while (v) {
        path.push_back(*v);
        if (c.depth() + 1 == static_cast<int>(c.level_count()))
            out.push_back(path);
        else
            walk(c, path, out);
        path.pop_back();
        v = c.next();
    }
    c.up();
}

}  // namespace

TEST_CASE("trie traversal over a three-level relation") {
    // Values grouped as a trie: a=0 -> b in {3,4,5}, a=1 -> b=5.
    auto t = make_table(
        {{0, 3, 4}, {0, 3, 5}, {0, 4, 0}, {0, 4, 1}, {0, 4, 3}, {0, 5, 2}, {1, 5, 2}}, 3);
    CursorStats stats;
    TrieCursor c = cursor_for(*t, {0, 1, 2}, &stats);

    CHECK(c.depth() == -1);
    CHECK(c.open() == 0);
    CHECK(c.depth() == 0);
    CHECK(c.open() == 3);
    CHECK(c.next() == 4);
    CHECK(c.open() == 0);
    CHECK(c.seek(2) == 3);
    CHECK(c.value() == 3);
    c.up();
    CHECK(c.depth() == 1);
    CHECK(c.value() == 4);
    CHECK(c.next() == 5);
    CHECK(c.open() == 2);
    c.up();
    CHECK(c.next() == std::nullopt);
    CHECK(c.at_end());
    c.up();
    CHECK(c.next() == 1);  // root level continues after b is exhausted
    CHECK(c.open() == 5);
    CHECK(stats.opens == 5);
    CHECK(stats.nexts == 4);
    CHECK(stats.seeks == 1);
}

TEST_CASE("trie enumeration matches sorted distinct tuples") {
    std::mt19937_64 rng(21);
    for (int round = 0; round < 30; ++round) {
        const std::size_t arity = 1 + rng() % 3;
        std::vector<std::vector<Value>> rows;
        const int n = static_cast<int>(rng() % 25);
        for (int i = 0; i < n; ++i) {
            std::vector<Value> row;
            for (std::size_t c = 0; c < arity; ++c)
                row.push_back(static_cast<Value>(rng() % 5));
            rows.push_back(row);
        }
        auto t = make_table(rows, arity);

        std::vector<int> order(arity);
        for (std::size_t i = 0; i < arity; ++i) order[i] = static_cast<int>(i);
        std::shuffle(order.begin(), order.end(), rng);

        TrieCursor c = cursor_for(*t, order);
        std::vector<Value> path;
        std::vector<std::vector<Value>> seen;
        walk(c, path, seen);
        CHECK(c.depth() == -1);

        std::set<std::vector<Value>> expect;
        for (const auto& row : rows) {
            std::vector<Value> key;
            for (int col : order) key.push_back(row[col]);
            expect.insert(key);
        }
        CHECK(seen == std::vector<std::vector<Value>>(expect.begin(), expect.end()));
    }
}

TEST_CASE("seek behaves like lower_bound and never moves backwards") {
    std::mt19937_64 rng(22);
    for (int round = 0; round < 40; ++round) {
        std::vector<std::vector<Value>> rows;
        const int n = 1 + static_cast<int>(rng() % 40);
        for (int i = 0; i < n; ++i) rows.push_back({static_cast<Value>(rng() % 60)});
        auto t = make_table(rows, 1);
        std::vector<Value> distinct;
        for (const auto& r : rows) distinct.push_back(r[0]);
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

        TrieCursor c = cursor_for(*t, {0});
        REQUIRE(c.open() == distinct.front());
        Value probe = 0;
        while (true) {
            probe += static_cast<Value>(rng() % 9);
            auto it = std::lower_bound(distinct.begin(), distinct.end(), probe);
            auto got = c.seek(probe);
            if (it == distinct.end()) {
                CHECK(got == std::nullopt);
                CHECK(c.at_end());
                break;
            }
            CHECK(got == *it);
            probe = *got + 1;
            // a seek below the current position must not move the cursor
            if (rng() % 3 == 0) CHECK(c.seek(*got - 3 - (rng() % 4)) == got);
        }
    }
}

TEST_CASE("duplicate ranges expose key multiplicity and original rows") {
    auto t = make_table({{1, 7}, {2, 9}, {1, 7}, {1, 8}}, 2);
    TrieCursor c = cursor_for(*t, {0, 1});
    REQUIRE(c.open() == 1);
    auto [lo, hi] = c.current_duplicate_range();
    CHECK(hi - lo + 1 == 3);  // three rows with key prefix (1)
    REQUIRE(c.open() == 7);
    auto [l2, h2] = c.current_duplicate_range();
    CHECK(h2 - l2 + 1 == 2);
    std::set<std::uint32_t> original;
    for (std::uint32_t p = l2; p <= h2; ++p) original.insert(c.row_at(p));
    CHECK(original == std::set<std::uint32_t>{0, 2});
    CHECK(c.next() == 8);
    auto [l3, h3] = c.current_duplicate_range();
    CHECK(h3 - l3 + 1 == 1);
}

TEST_CASE("empty table open returns nothing") {
    auto t = make_table({}, 2);
    TrieCursor c = cursor_for(*t, {0, 1});
    CHECK(c.open() == std::nullopt);
    CHECK(c.depth() == -1);
}
