#include <doctest.h>

#include <algorithm>
#include <memory>
#include <vector>

#include "cubejoin/query.hpp"

using namespace cubejoin;

TEST_CASE("parse triangle query") {
    const Query q = parse_query("Q(count) :- edge(a,b), edge(b,c), edge(a,c), a<b, b<c");
    CHECK(q.aggregate == Aggregate::Count);
    REQUIRE(q.atoms.size() == 3);
    CHECK(q.atoms[0].table == "edge");
    CHECK(q.atoms[0].attrs == std::vector<int>{0, 1});
    CHECK(q.atoms[1].attrs == std::vector<int>{1, 2});
    CHECK(q.atoms[2].attrs == std::vector<int>{0, 2});
    REQUIRE(q.attributes.size() == 3);
    CHECK(q.attributes[0].name == "a");
    CHECK(q.attributes[1].name == "b");
    CHECK(q.attributes[2].name == "c");
    REQUIRE(q.inequalities.size() == 2);
    CHECK(q.inequalities[0].left == 0);
    CHECK(q.inequalities[0].op == CmpOp::Lt);
    CHECK(q.inequalities[0].right == 1);
    CHECK(q.unary_predicates.empty());
    CHECK(q.attribute_id("c") == 2);
    CHECK(q.attribute_id("z") == -1);
}

TEST_CASE("parse four-relation query with a unary predicate") {
    const Query q =
        parse_query("Q(tuples) :- r(a, b, c), s(a, c), t(b), u(b, c), r.x >= 3, a != c");
    CHECK(q.aggregate == Aggregate::Tuples);
    REQUIRE(q.atoms.size() == 4);
    CHECK(q.atoms[1].attrs == std::vector<int>{0, 2});
    CHECK(q.atoms[2].attrs == std::vector<int>{1});
    REQUIRE(q.unary_predicates.size() == 1);
    CHECK(q.unary_predicates[0].table == "r");
    CHECK(q.unary_predicates[0].column == "x");
    CHECK(q.unary_predicates[0].op == CmpOp::Ge);
    CHECK(q.unary_predicates[0].literal == 3);
    REQUIRE(q.inequalities.size() == 1);
    CHECK(q.inequalities[0].op == CmpOp::Ne);
}

TEST_CASE("repeated variable within an atom") {
    const Query q = parse_query("Q(count) :- edge(a,a)");
    REQUIRE(q.atoms.size() == 1);
    CHECK(q.atoms[0].attrs == std::vector<int>{0, 0});
    CHECK(q.attributes.size() == 1);
}

TEST_CASE("inequalities may precede their atoms") {
    const Query q = parse_query("Q(count) :- a<b, edge(a,b)");
    REQUIRE(q.inequalities.size() == 1);
    CHECK(q.inequalities[0].left == 0);
    CHECK(q.inequalities[0].right == 1);
}

TEST_CASE("parse errors report a position") {
    SUBCASE("missing head") {
        CHECK_THROWS_AS(parse_query("edge(a,b)"), QueryError);
    }
    SUBCASE("bad aggregate") {
        CHECK_THROWS_WITH_AS(parse_query("Q(sum) :- r(a)"),
                             "expected 'tuples' or 'count', got 'sum' (at offset 5)", QueryError);
    }
    SUBCASE("unbound inequality variable") {
        try {
            parse_query("Q(count) :- edge(a,b), b<z");
            FAIL("expected QueryError");
        } catch (const QueryError& e) {
            CHECK(e.position() == 23);
        }
    }
    SUBCASE("trailing input") {
        CHECK_THROWS_AS(parse_query("Q(count) :- r(a) r(b)"), QueryError);
    }
    SUBCASE("no atoms") {
        CHECK_THROWS_AS(parse_query("Q(count) :- "), QueryError);
    }
    SUBCASE("unary predicate needs an integer") {
        CHECK_THROWS_AS(parse_query("Q(count) :- r(a), r.x < y"), QueryError);
    }
}

TEST_CASE("canonical text round-trips") {
    for (const char* text : {
             "Q(count) :- edge(a,b), edge(b,c), edge(a,c), a<b, b<c",
             "Q(tuples) :- r(a,b,c), s(a,c), t(b), u(b,c)",
             "Q(count) :- r(x,x), r.c0 != -4, x>=x",
         }) {
        const Query q = parse_query(text);
        const Query again = parse_query(to_text(q));
        CHECK(to_text(again) == to_text(q));
        CHECK(again.aggregate == q.aggregate);
        REQUIRE(again.atoms.size() == q.atoms.size());
        for (std::size_t i = 0; i < q.atoms.size(); ++i) {
            CHECK(again.atoms[i].table == q.atoms[i].table);
            CHECK(again.atoms[i].attrs == q.atoms[i].attrs);
        }
        CHECK(again.inequalities.size() == q.inequalities.size());
        CHECK(again.unary_predicates.size() == q.unary_predicates.size());
    }
}

TEST_CASE("catalog validation") {
    Catalog cat;
    cat.add_table(std::make_shared<ColumnTable>(
        "edge", std::vector<Column>{{"src", {1}}, {"dst", {2}}}));
    CHECK_NOTHROW(parse_query("Q(count) :- edge(a,b), edge.src < 5", cat));
    CHECK_THROWS_AS(parse_query("Q(count) :- road(a,b)", cat), QueryError);
    CHECK_THROWS_AS(parse_query("Q(count) :- edge(a,b,c)", cat), QueryError);
    CHECK_THROWS_AS(parse_query("Q(count) :- edge(a,b), edge.weight < 5", cat), QueryError);
}

TEST_CASE("connected candidates grow along shared atoms") {
    const Query tri = parse_query("Q(count) :- edge(a,b), edge(b,c), edge(a,c)");
    CHECK(connected_candidates(tri, {}) == std::vector<int>{0, 1, 2});
    CHECK(connected_candidates(tri, {0}) == std::vector<int>{1, 2});
    CHECK(connected_candidates(tri, {0, 2}) == std::vector<int>{1});

    const Query path = parse_query("Q(count) :- r(a,b), s(b,c), t(c,d)");
    CHECK(connected_candidates(path, {0}) == std::vector<int>{1});
    CHECK(connected_candidates(path, {1}) == std::vector<int>{0, 2});
    CHECK(connected_candidates(path, {1, 2}) == std::vector<int>{0, 3});
}

TEST_CASE("disconnected queries fall back to the remaining attributes") {
    const Query q = parse_query("Q(count) :- r(a,b), s(c,d)");
    CHECK(connected_candidates(q, {0}) == std::vector<int>{1});
    CHECK(connected_candidates(q, {0, 1}) == std::vector<int>{2, 3});

    const auto orders = all_attribute_orders(q);
    CHECK(orders.size() == 8);  // a component must finish before the other starts
    for (const auto& o : orders)
        CHECK((o[0] < 2) == (o[1] < 2));  // first two stay within one component
}

TEST_CASE("all attribute orders of a connected query are every permutation") {
    const Query tri = parse_query("Q(count) :- edge(a,b), edge(b,c), edge(a,c)");
    auto orders = all_attribute_orders(tri);
    CHECK(orders.size() == 6);
    std::sort(orders.begin(), orders.end());
    CHECK(std::unique(orders.begin(), orders.end()) == orders.end());
}

TEST_CASE("attribute domains intersect the binding columns") {
    auto r = std::make_shared<ColumnTable>(
        "r", std::vector<Column>{{"x", {1, 4, 9}}, {"y", {0, 2, 5}}});
    auto s = std::make_shared<ColumnTable>("s", std::vector<Column>{{"x", {3, 8}}});
    Query q = parse_query("Q(count) :- r(a,b), s(a)");
    compute_attribute_domains(q, {r, s});
    CHECK_FALSE(q.attributes[0].domain_empty);
    CHECK(q.attributes[0].domain_lo == 3);  // max of the two column minima
    CHECK(q.attributes[0].domain_hi == 8);  // min of the two column maxima
    CHECK(q.attributes[1].domain_lo == 0);
    CHECK(q.attributes[1].domain_hi == 5);
}

TEST_CASE("an empty binding relation empties the attribute domain") {
    auto r = std::make_shared<ColumnTable>(
        "r", std::vector<Column>{{"x", {1, 2}}, {"y", {3, 4}}});
    auto s = std::make_shared<ColumnTable>("s", std::vector<Column>{{"x", {}}});
    Query q = parse_query("Q(count) :- r(a,b), s(b)");
    compute_attribute_domains(q, {r, s});
    CHECK_FALSE(q.attributes[0].domain_empty);
    CHECK(q.attributes[1].domain_empty);
}
