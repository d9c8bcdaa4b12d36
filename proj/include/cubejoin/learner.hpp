#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "cubejoin/cube.hpp"
#include "cubejoin/query.hpp"

namespace cubejoin {

struct OrderStats {
    AttributeOrder order;
    std::uint64_t episodes = 0;
    double mean_reward = 0;
};

// Fraction of the total domain volume the processed cubes cover, in [0, 1].
double compute_reward(const std::vector<Cube>& processed, const mpz_class& total_volume);

// Learns attribute orders across episodes with a UCT tree over order
// prefixes. Only the root exists initially; each episode adds at most one
// node. At a fully expanded node the child with maximal
// mean + C*sqrt(ln(parent_visits)/child_visits) is followed (ties uniform
// from the seeded generator); at a partially expanded node one of the
// node-less candidates is taken uniformly, growing the tree there; below the
// new node attributes are drawn uniformly without growing the tree.
// Candidate sets respect attribute connectivity. Single-threaded: the engine
// calls it only between episodes.
class UctLearner {
  public:
    UctLearner(const Query& q, double exploration, std::uint64_t seed);

    AttributeOrder select();

    // Walks a caller-chosen order through the same expansion rule select()
    // uses, creating at most one node. Returns the prefix of the node created
    // this episode, if any.
    std::optional<std::vector<int>> register_forced(const AttributeOrder& order);

    // Mean is updated incrementally on every existing node along the order's
    // prefix path (root included); nodes off the path are untouched.
    void update(const AttributeOrder& order, double reward);

    // Per complete executed order, unsorted; callers sort for export.
    std::vector<OrderStats> order_statistics() const;

    std::uint64_t node_count() const { return node_count_; }

  private:
    struct Node {
        explicit Node(int a) : attr(a) {}

        int attr;  // attribute this node appends to its parent's prefix
        std::uint64_t visits = 0;
        double mean = 0;
        std::vector<std::unique_ptr<Node>> children;

        Node* child(int a) {
            for (auto& c : children)
                if (c->attr == a) return c.get();
            return nullptr;
        }
    };

    Node* grow(Node& parent, int attr);
    int pick_uniform(const std::vector<int>& candidates);

    const Query& q_;
    double exploration_;
    std::mt19937_64 rng_;
    Node root_{-1};
    std::uint64_t node_count_ = 0;  // root excluded
    std::map<AttributeOrder, std::pair<std::uint64_t, double>> per_order_;
};

}  // namespace cubejoin
