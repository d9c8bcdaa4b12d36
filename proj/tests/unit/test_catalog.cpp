#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubejoin/catalog.hpp"

using namespace cubejoin;

namespace {

struct TempFile {
    std::filesystem::path path;

    explicit TempFile(const std::string& content) {
        static int counter = 0;
        path = std::filesystem::temp_directory_path() /
               ("cubejoin_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) +
                ".csv");
        std::ofstream out(path, std::ios::binary);
        out << content;
    }
    ~TempFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("load_csv reads columns in row order") {
    TempFile f("3,14\n1,59\n2,65\n");
    auto t = load_csv("m", f.path.string(), {"x", "y"}, false);
    CHECK(t->name() == "m");
    CHECK(t->row_count() == 3);
    CHECK(t->column(0).name == "x");
    CHECK(t->column(0).values == std::vector<Value>{3, 1, 2});
    CHECK(t->column(1).values == std::vector<Value>{14, 59, 65});
    CHECK(t->column_id("y") == 1);
    CHECK(t->column_id("z") == -1);
    CHECK_FALSE(t->temporary());
}

TEST_CASE("load_csv header, negatives, spaces, crlf, trailing newline") {
    TempFile f("x,y\r\n-7, 42\r\n");
    auto t = load_csv("m", f.path.string(), {"x", "y"}, true);
    CHECK(t->row_count() == 1);
    CHECK(t->column(0).values == std::vector<Value>{-7});
    CHECK(t->column(1).values == std::vector<Value>{42});
}

TEST_CASE("load_csv errors carry the line number") {
    SUBCASE("malformed integer") {
        TempFile f("1,2\n3,oops\n");
        CHECK_THROWS_WITH_AS(load_csv("m", f.path.string(), {"x", "y"}, false),
                             "line 2: malformed integer 'oops'", IoError);
    }
    SUBCASE("missing field") {
        TempFile f("1,2\n3,\n");
        CHECK_THROWS_WITH_AS(load_csv("m", f.path.string(), {"x", "y"}, false),
                             "line 2: missing field", IoError);
    }
    SUBCASE("too few fields") {
        TempFile f("1,2\n3\n5,6\n");
        CHECK_THROWS_WITH_AS(load_csv("m", f.path.string(), {"x", "y"}, false),
                             "line 2: expected 2 fields, got 1", IoError);
    }
    SUBCASE("too many fields") {
        TempFile f("1,2,3\n");
        CHECK_THROWS_WITH_AS(load_csv("m", f.path.string(), {"x", "y"}, false),
                             "line 1: too many fields", IoError);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_csv("m", "/nonexistent/nope.csv", {"x"}, false), IoError);
    }
    SUBCASE("header width mismatch") {
        TempFile f("x\n1,2\n");
        CHECK_THROWS_AS(load_csv("m", f.path.string(), {"x", "y"}, true), IoError);
    }
}

TEST_CASE("column length mismatch is rejected at construction") {
    CHECK_THROWS_AS(ColumnTable("t", {{"a", {1, 2}}, {"b", {1}}}), std::invalid_argument);
}

TEST_CASE("sort index orders lexicographically with stable ties") {
    ColumnTable t("t", {{"a", {2, 1, 2, 1}}, {"b", {5, 9, 4, 9}}});
    auto by_ab = t.get_or_build_sort_index({0, 1}, CachePolicy::Persistent);
    CHECK(by_ab->rows == std::vector<std::uint32_t>{1, 3, 2, 0});
    auto by_b = t.get_or_build_sort_index({1, 0}, CachePolicy::Persistent);
    CHECK(by_b->rows == std::vector<std::uint32_t>{2, 0, 1, 3});
}

TEST_CASE("sort index cache builds each order once") {
    ColumnTable t("t", {{"a", {3, 1, 2}}, {"b", {1, 2, 3}}});
    CHECK(t.index_build_count() == 0);
    auto first = t.get_or_build_sort_index({0, 1}, CachePolicy::Persistent);
    CHECK(t.index_build_count() == 1);
    auto again = t.get_or_build_sort_index({0, 1}, CachePolicy::Persistent);
    CHECK(t.index_build_count() == 1);
    CHECK(first.get() == again.get());
    t.get_or_build_sort_index({1, 0}, CachePolicy::Persistent);
    CHECK(t.index_build_count() == 2);
}

TEST_CASE("unary filters keep matching rows and mark the copy temporary") {
    auto t = std::make_shared<ColumnTable>(
        "edge", std::vector<Column>{{"src", {1, 5, 3, 7}}, {"dst", {2, 2, 9, 9}}});

    SUBCASE("no applicable predicate returns the same table") {
        std::vector<UnaryPredicate> preds{{"other", "src", CmpOp::Lt, 4}};
        CHECK(apply_unary_filters(t, preds).get() == t.get());
    }
    SUBCASE("conjunction of predicates") {
        std::vector<UnaryPredicate> preds{{"edge", "src", CmpOp::Ge, 3},
                                          {"edge", "dst", CmpOp::Ne, 2}};
        auto f = apply_unary_filters(t, preds);
        CHECK(f->temporary());
        CHECK(f->column(0).values == std::vector<Value>{3, 7});
        CHECK(f->column(1).values == std::vector<Value>{9, 9});
        CHECK(f->index_build_count() == 0);  // fresh per-query cache
    }
    SUBCASE("unknown column") {
        std::vector<UnaryPredicate> preds{{"edge", "weight", CmpOp::Lt, 4}};
        CHECK_THROWS_AS(apply_unary_filters(t, preds), QueryError);
    }
}

TEST_CASE("catalog lookup") {
    Catalog c;
    c.add_table(std::make_shared<ColumnTable>("b", std::vector<Column>{{"x", {1}}}));
    c.add_table(std::make_shared<ColumnTable>("a", std::vector<Column>{{"x", {2}}}));
    CHECK(c.find("a")->column(0).values == std::vector<Value>{2});
    CHECK(c.find("missing") == nullptr);
    CHECK(c.table_names() == std::vector<std::string>{"a", "b"});
}
