#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cubejoin/catalog.hpp"
#include "cubejoin/common.hpp"

namespace cubejoin {

enum class Aggregate { Tuples, Count };

// One body atom: table name plus the attribute id bound to each table column,
// positionally. The same attribute may appear more than once (repeated
// variable), which adds an intra-atom equality.
struct Atom {
    std::string table;
    std::vector<int> attrs;
};

struct JoinAttribute {
    std::string name;
    Value domain_lo = 0;
    Value domain_hi = -1;
    bool domain_empty = true;
};

struct InequalityPredicate {
    int left;
    CmpOp op;
    int right;
};

struct Query {
    Aggregate aggregate = Aggregate::Tuples;
    std::vector<Atom> atoms;
    std::vector<JoinAttribute> attributes;  // id = index, in first-mention order
    std::vector<InequalityPredicate> inequalities;
    std::vector<UnaryPredicate> unary_predicates;

    std::size_t attribute_count() const { return attributes.size(); }
    int attribute_id(const std::string& name) const;
};

// Permutation of attribute ids; position = join level.
using AttributeOrder = std::vector<int>;

// Grammar:
//   query := "Q" "(" ("tuples" | "count") ")" ":-" item ("," item)*
//   item  := atom | unary | ineq
//   atom  := table "(" var ("," var)* ")"
//   unary := table "." column op integer
//   ineq  := var op var          with op in { < <= > >= != }
// Variables with the same name denote the same join attribute. Every
// inequality variable must be bound by some atom. When a catalog is supplied,
// table names, atom arities and unary-predicate columns are validated too.
Query parse_query(const std::string& text);
Query parse_query(const std::string& text, const Catalog& catalog);

// Canonical text form; parse_query(to_text(q)) reproduces q structurally.
std::string to_text(const Query& q);

// Attributes eligible to extend a prefix of an attribute order: those sharing
// an atom with a prefix attribute. An empty prefix admits every attribute;
// when connectivity yields nothing but unchosen attributes remain (Cartesian
// query parts), all remaining attributes are admitted. Ascending id order.
std::vector<int> connected_candidates(const Query& q, const std::vector<int>& prefix);

std::vector<AttributeOrder> all_attribute_orders(const Query& q);

// Tables an execution resolved each atom against (post unary filtering),
// parallel to q.atoms.
using BoundTables = std::vector<std::shared_ptr<const ColumnTable>>;

// Tightest per-attribute [min, max] over every binding column. An attribute
// bound only by empty relations gets an empty domain, which empties the whole
// join.
void compute_attribute_domains(Query& q, const BoundTables& tables);

}  // namespace cubejoin
