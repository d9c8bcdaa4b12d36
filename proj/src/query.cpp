#include "cubejoin/query.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <sstream>

namespace cubejoin {

int Query::attribute_id(const std::string& name) const {
    for (std::size_t i = 0; i < attributes.size(); ++i)
        if (attributes[i].name == name) return static_cast<int>(i);
    return -1;
}

namespace {

class Parser {
  public:
    explicit Parser(const std::string& text) : text_(text) {}

    Query parse() {
        Query q;
        expect_ident("Q");
        expect('(');
        std::string mode = ident("aggregate mode");
        if (mode == "tuples")
            q.aggregate = Aggregate::Tuples;
        else if (mode == "count")
            q.aggregate = Aggregate::Count;
        else
            fail("expected 'tuples' or 'count', got '" + mode + "'");
        expect(')');
        skip_ws();
        if (!consume(":-")) fail("expected ':-'");
        do {
            item(q);
        } while (consume(","));
        skip_ws();
        if (pos_ != text_.size()) fail("trailing input");
        if (q.atoms.empty()) fail("query has no atoms");
        return q;
    }

  private:
    void item(Query& q) {
        skip_ws();
        std::size_t start = pos_;
        std::string first = ident("atom, predicate or variable");
        skip_ws();
        if (peek() == '(') {
            atom(q, first);
        } else if (peek() == '.') {
            ++pos_;
            std::string column = ident("column name");
            CmpOp op = cmp_op();
            q.unary_predicates.push_back(UnaryPredicate{first, column, op, integer()});
        } else {
            CmpOp op = cmp_op();
            std::string right = ident("variable");
            // attribute ids come from atom mentions only; resolve after all
            // atoms are read so "a < b, r(a, b)" orderings still bind
            pending_raw_ineqs_.push_back({first, op, right, start});
        }
    }

    void atom(Query& q, const std::string& table) {
        expect('(');
        Atom a;
        a.table = table;
        do {
            std::string var = ident("variable");
            a.attrs.push_back(attr_id(var));
        } while (consume(","));
        expect(')');
        q.atoms.push_back(std::move(a));
        attrs_into(q);
    }

    int attr_id(const std::string& name) {
        for (std::size_t i = 0; i < attr_names_.size(); ++i)
            if (attr_names_[i] == name) return static_cast<int>(i);
        attr_names_.push_back(name);
        return static_cast<int>(attr_names_.size() - 1);
    }

    void attrs_into(Query& q) {
        while (q.attributes.size() < attr_names_.size())
            q.attributes.push_back(JoinAttribute{attr_names_[q.attributes.size()], 0, -1, true});
    }

    CmpOp cmp_op() {
        skip_ws();
        std::size_t at = pos_;
        if (consume("<=")) return CmpOp::Le;
        if (consume(">=")) return CmpOp::Ge;
        if (consume("!=")) return CmpOp::Ne;
        if (consume("<")) return CmpOp::Lt;
        if (consume(">")) return CmpOp::Gt;
        pos_ = at;
        fail("expected comparison operator");
        return CmpOp::Lt;
    }

    Value integer() {
        skip_ws();
        std::size_t start = pos_;
        if (peek() == '-') ++pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ == start || (text_[start] == '-' && pos_ == start + 1))
            fail("expected integer literal");
        try {
            return std::stoll(text_.substr(start, pos_ - start));
        } catch (const std::out_of_range&) {
            pos_ = start;
            fail("integer literal out of range");
            return 0;
        }
    }

    std::string ident(const char* what) {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < text_.size() &&
            (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
            while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                           text_[pos_] == '_'))
                ++pos_;
        }
        if (pos_ == start) fail(std::string("expected ") + what);
        return text_.substr(start, pos_ - start);
    }

    void expect_ident(const std::string& word) {
        std::string got = ident(("'" + word + "'").c_str());
        if (got != word) {
            pos_ -= got.size();
            fail("expected '" + word + "'");
        }
    }

    void expect(char c) {
        skip_ws();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    bool consume(const std::string& token) {
        skip_ws();
        if (text_.compare(pos_, token.size(), token) == 0) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    [[noreturn]] void fail(const std::string& message) { throw QueryError(message, pos_); }

    const std::string& text_;
    std::size_t pos_ = 0;
    std::vector<std::string> attr_names_;

    struct RawIneq {
        std::string left;
        CmpOp op;
        std::string right;
        std::size_t at;
    };

  public:
    std::vector<RawIneq> pending_raw_ineqs_;

    void bind_inequalities(Query& q) {
        for (const RawIneq& raw : pending_raw_ineqs_) {
            int l = q.attribute_id(raw.left);
            int r = q.attribute_id(raw.right);
            if (l < 0) throw QueryError("unbound attribute '" + raw.left + "'", raw.at);
            if (r < 0) throw QueryError("unbound attribute '" + raw.right + "'", raw.at);
            q.inequalities.push_back(InequalityPredicate{l, raw.op, r});
        }
    }
};

}  // namespace

Query parse_query(const std::string& text) {
    Parser p(text);
    Query q = p.parse();
    p.bind_inequalities(q);
    return q;
}

Query parse_query(const std::string& text, const Catalog& catalog) {
    Query q = parse_query(text);
    for (const Atom& a : q.atoms) {
        auto table = catalog.find(a.table);
        if (!table) throw QueryError("unknown table '" + a.table + "'");
        if (table->column_count() != a.attrs.size())
            throw QueryError("atom over '" + a.table + "' has " +
                             std::to_string(a.attrs.size()) + " variables, table has " +
                             std::to_string(table->column_count()) + " columns");
    }
    for (const UnaryPredicate& p : q.unary_predicates) {
        auto table = catalog.find(p.table);
        if (!table) throw QueryError("unknown table '" + p.table + "'");
        if (table->column_id(p.column) < 0)
            throw QueryError("unknown column '" + p.table + "." + p.column + "'");
    }
    return q;
}

std::string to_text(const Query& q) {
    std::ostringstream out;
    out << "Q(" << (q.aggregate == Aggregate::Count ? "count" : "tuples") << ") :- ";
    bool first = true;
    for (const Atom& a : q.atoms) {
        if (!first) out << ", ";
        first = false;
        out << a.table << '(';
        for (std::size_t i = 0; i < a.attrs.size(); ++i) {
            if (i) out << ", ";
            out << q.attributes[a.attrs[i]].name;
        }
        out << ')';
    }
    for (const InequalityPredicate& p : q.inequalities)
        out << ", " << q.attributes[p.left].name << ' ' << cmp_text(p.op) << ' '
            << q.attributes[p.right].name;
    for (const UnaryPredicate& p : q.unary_predicates)
        out << ", " << p.table << '.' << p.column << ' ' << cmp_text(p.op) << ' ' << p.literal;
    return out.str();
}

std::vector<int> connected_candidates(const Query& q, const std::vector<int>& prefix) {
    std::vector<bool> chosen(q.attribute_count(), false);
    for (int a : prefix) chosen[a] = true;

    std::vector<int> result;
    if (prefix.empty()) {
        for (std::size_t i = 0; i < q.attribute_count(); ++i) result.push_back(static_cast<int>(i));
        return result;
    }

    std::vector<bool> connected(q.attribute_count(), false);
    for (const Atom& atom : q.atoms) {
        bool touches_prefix = false;
        for (int a : atom.attrs)
            if (chosen[a]) {
                touches_prefix = true;
                break;
            }
        if (!touches_prefix) continue;
        for (int a : atom.attrs) connected[a] = true;
    }
    for (std::size_t i = 0; i < q.attribute_count(); ++i)
        if (connected[i] && !chosen[i]) result.push_back(static_cast<int>(i));
    if (!result.empty()) return result;

    for (std::size_t i = 0; i < q.attribute_count(); ++i)
        if (!chosen[i]) result.push_back(static_cast<int>(i));
    return result;
}

std::vector<AttributeOrder> all_attribute_orders(const Query& q) {
    std::vector<AttributeOrder> orders;
    AttributeOrder current;
    std::vector<bool> used(q.attribute_count(), false);

    // depth-first over connected_candidates so every emitted order is one the
    // learner could actually select
    struct Rec {
        const Query& q;
        std::vector<AttributeOrder>& orders;
        AttributeOrder& current;
        void operator()() {
            if (current.size() == q.attribute_count()) {
                orders.push_back(current);
                return;
            }
            for (int next : connected_candidates(q, current)) {
                current.push_back(next);
                (*this)();
                current.pop_back();
            }
        }
    } rec{q, orders, current};
    rec();
    return orders;
}

void compute_attribute_domains(Query& q, const BoundTables& tables) {
    assert(tables.size() == q.atoms.size());
    for (JoinAttribute& attr : q.attributes) {
        attr.domain_lo = 0;
        attr.domain_hi = -1;
        attr.domain_empty = true;
    }
    std::vector<bool> seen(q.attribute_count(), false);
    for (std::size_t ai = 0; ai < q.atoms.size(); ++ai) {
        const Atom& atom = q.atoms[ai];
        const ColumnTable& table = *tables[ai];
        for (std::size_t col = 0; col < atom.attrs.size(); ++col) {
            JoinAttribute& attr = q.attributes[atom.attrs[col]];
            const std::vector<Value>& values = table.column(col).values;
            if (values.empty()) {
                // a binding relation with no rows empties the attribute (and
                // with it the query), regardless of other bindings
                attr.domain_empty = true;
                attr.domain_lo = 0;
                attr.domain_hi = -1;
                seen[atom.attrs[col]] = true;
                continue;
            }
            if (seen[atom.attrs[col]] && attr.domain_empty) continue;
            auto [mn, mx] = std::minmax_element(values.begin(), values.end());
            if (!seen[atom.attrs[col]]) {
                attr.domain_lo = *mn;
                attr.domain_hi = *mx;
                attr.domain_empty = false;
            } else {
                attr.domain_lo = std::max(attr.domain_lo, *mn);
                attr.domain_hi = std::min(attr.domain_hi, *mx);
                if (attr.domain_lo > attr.domain_hi) {
                    attr.domain_empty = true;
                    attr.domain_lo = 0;
                    attr.domain_hi = -1;
                }
            }
            seen[atom.attrs[col]] = true;
        }
    }
}

}  // namespace cubejoin
