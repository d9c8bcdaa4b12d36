#include "cubejoin/join.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <optional>

#include "cubejoin/leapfrog.hpp"

namespace cubejoin {

namespace {

struct LevelPlan {
    int attr;
    Value lo;
    Value hi;
    std::vector<int> participants;                       // atom ids opening here
    std::vector<int> echo_columns;                       // extra bound columns, per participant
    std::vector<const InequalityPredicate*> checks;      // fully bound at this level
};

class JoinRun {
  public:
    JoinRun(const Query& q, const BoundTables& tables, const AttributeOrder& order,
            const Cube& target, std::uint64_t budget, ResultSink& sink)
        : q_(q), order_(order), target_(target), budget_(budget), sink_(sink) {
        const std::size_t n = order.size();
        std::vector<int> level_of(n);
        for (std::size_t a = 0; a < n; ++a) level_of[order[a]] = static_cast<int>(a);

        cursors_.reserve(q.atoms.size());
        for (std::size_t ai = 0; ai < q.atoms.size(); ++ai) {
            const Atom& atom = q.atoms[ai];
            std::vector<int> local(atom.attrs.size());
            for (std::size_t c = 0; c < local.size(); ++c) local[c] = static_cast<int>(c);
            std::stable_sort(local.begin(), local.end(), [&](int a, int b) {
                return level_of[atom.attrs[a]] < level_of[atom.attrs[b]];
            });
            const ColumnTable& table = *tables[ai];
            auto index = table.get_or_build_sort_index(
                local, table.temporary() ? CachePolicy::PerQuery : CachePolicy::Persistent);
            cursors_.emplace_back(table, std::move(index), &stats_);
        }

        plans_.resize(n);
        for (std::size_t a = 0; a < n; ++a) {
            LevelPlan& plan = plans_[a];
            plan.attr = order[a];
            plan.lo = target.lo[plan.attr];
            plan.hi = target.hi[plan.attr];
            for (std::size_t ai = 0; ai < q.atoms.size(); ++ai) {
                int bound = static_cast<int>(
                    std::count(q.atoms[ai].attrs.begin(), q.atoms[ai].attrs.end(), plan.attr));
                if (bound == 0) continue;
                plan.participants.push_back(static_cast<int>(ai));
                plan.echo_columns.push_back(bound - 1);
            }
            for (const InequalityPredicate& p : q.inequalities) {
                int deepest = std::max(level_of[p.left], level_of[p.right]);
                if (deepest == static_cast<int>(a)) plan.checks.push_back(&p);
            }
        }

        completed_.assign(n, std::nullopt);
        val_.assign(n, 0);
        tuple_.assign(n, 0);
        echo_open_.resize(n);
    }

    ProcessedReport run() {
        ProcessedReport report;
        if (target_.empty()) {
            report.processed.push_back(target_);
            return report;
        }
        Outcome outcome = run_level(0);
        if (outcome == Outcome::Complete) {
            report.processed.push_back(target_);
        } else {
            for (std::size_t a = 0; a <= abort_level_; ++a) {
                if (!completed_[a]) continue;
                Cube c = target_;
                for (std::size_t j = 0; j < a; ++j) {
                    c.lo[order_[j]] = val_[j];
                    c.hi[order_[j]] = val_[j];
                }
                c.hi[order_[a]] = *completed_[a];
                report.processed.push_back(std::move(c));
            }
        }
        report.steps = steps();
        return report;
    }

  private:
    enum class Outcome { Complete, Aborted };

    std::uint64_t steps() const { return stats_.total() + emitted_; }

    Outcome run_level(std::size_t a) {
        LevelPlan& plan = plans_[a];
        for (int ai : plan.participants) {
            auto first = cursors_[ai].open();
            assert(first.has_value());  // participant tables are non-empty once domains are
            (void)first;
        }
        LeapfrogLevel lf;
        lf.cursors.reserve(plan.participants.size());
        for (int ai : plan.participants) lf.cursors.push_back(&cursors_[ai]);

        completed_[a] = std::nullopt;
        Value from = plan.lo;
        while (true) {
            std::optional<Value> v = leapfrog_intersect_next(lf, from, plan.hi);
            if (!v) {
                completed_[a] = plan.hi;
                close_level(a);
                return Outcome::Complete;
            }
            if (*v > plan.lo) completed_[a] = *v - 1;
            val_[a] = *v;
            tuple_[plan.attr] = *v;

            if (admit(plan)) {
                if (open_echoes(a, *v)) {
                    if (a + 1 == plans_.size()) {
                        emit_leaf();
                    } else if (run_level(a + 1) == Outcome::Aborted) {
                        return Outcome::Aborted;
                    }
                    close_echoes(a);
                }
            }
            completed_[a] = *v;
            if (steps() >= budget_) {
                abort_level_ = a;
                return Outcome::Aborted;
            }
            if (*v == plan.hi) {
                close_level(a);
                return Outcome::Complete;
            }
            from = *v + 1;
        }
    }

    bool admit(const LevelPlan& plan) const {
        for (const InequalityPredicate* p : plan.checks)
            if (!eval_cmp(tuple_[p->left], p->op, tuple_[p->right])) return false;
        return true;
    }

    // Extra columns of an atom bound to the same attribute must hold the
    // matched value too; their trie levels stay open for the descent so
    // deeper groups are restricted to the matching rows.
    bool open_echoes(std::size_t a, Value v) {
        LevelPlan& plan = plans_[a];
        std::vector<TrieCursor*>& opened = echo_open_[a];
        assert(opened.empty());
        for (std::size_t pi = 0; pi < plan.participants.size(); ++pi) {
            TrieCursor& cur = cursors_[plan.participants[pi]];
            for (int e = 0; e < plan.echo_columns[pi]; ++e) {
                std::optional<Value> got = cur.open();
                if (got && *got < v) got = cur.seek(v);
                if (!got || *got != v) {
                    cur.up();
                    close_echoes(a);
                    return false;
                }
                opened.push_back(&cur);
            }
        }
        return true;
    }

    void close_echoes(std::size_t a) {
        std::vector<TrieCursor*>& opened = echo_open_[a];
        for (auto it = opened.rbegin(); it != opened.rend(); ++it) (*it)->up();
        opened.clear();
    }

    void close_level(std::size_t a) {
        for (int ai : plans_[a].participants) cursors_[ai].up();
    }

    void emit_leaf() {
        std::uint64_t multiplicity = 1;
        if (sink_.mode == Aggregate::Count) {
            for (TrieCursor& cur : cursors_) {
                auto [lo, hi] = cur.current_duplicate_range();
                multiplicity *= hi - lo + 1;
            }
        }
        sink_.emit(tuple_, multiplicity);
        ++emitted_;
    }

    const Query& q_;
    const AttributeOrder& order_;
    const Cube& target_;
    std::uint64_t budget_;
    ResultSink& sink_;

    std::vector<TrieCursor> cursors_;
    std::vector<LevelPlan> plans_;
    std::vector<std::optional<Value>> completed_;
    std::vector<Value> val_;
    std::vector<Value> tuple_;  // by attribute id
    std::vector<std::vector<TrieCursor*>> echo_open_;
    CursorStats stats_;
    std::uint64_t emitted_ = 0;
    std::size_t abort_level_ = 0;
};

}  // namespace

ProcessedReport join_one_cube(const Query& q, const BoundTables& tables,
                              const AttributeOrder& order, const Cube& target,
                              std::uint64_t budget, ResultSink& sink) {
    assert(order.size() == q.attribute_count());
    for (const auto& table : tables) {
        if (table->row_count() == 0) {
            // An empty participant makes the whole target trivially empty.
            ProcessedReport report;
            report.processed.push_back(target);
            return report;
        }
    }
    JoinRun run(q, tables, order, target, budget, sink);
    return run.run();
}

}  // namespace cubejoin
