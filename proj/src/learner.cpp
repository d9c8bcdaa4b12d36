#include "cubejoin/learner.hpp"

#include <cassert>
#include <cmath>
#include <limits>

namespace cubejoin {

double compute_reward(const std::vector<Cube>& processed, const mpz_class& total_volume) {
    if (total_volume == 0) return 0.0;
    mpz_class covered = 0;
    for (const Cube& c : processed) covered += volume(c);
    mpq_class ratio(covered, total_volume);
    ratio.canonicalize();
    return ratio.get_d();
}

UctLearner::UctLearner(const Query& q, double exploration, std::uint64_t seed)
    : q_(q), exploration_(exploration), rng_(seed) {}

UctLearner::Node* UctLearner::grow(Node& parent, int attr) {
    parent.children.push_back(std::make_unique<Node>(attr));
    ++node_count_;
    return parent.children.back().get();
}

int UctLearner::pick_uniform(const std::vector<int>& candidates) {
    assert(!candidates.empty());
    if (candidates.size() == 1) return candidates[0];
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    return candidates[pick(rng_)];
}

AttributeOrder UctLearner::select() {
    AttributeOrder order;
    order.reserve(q_.attribute_count());
    Node* node = &root_;
    bool grew = false;

    while (order.size() < q_.attribute_count()) {
        std::vector<int> candidates = connected_candidates(q_, order);
        if (!node) {
            order.push_back(pick_uniform(candidates));
            continue;
        }
        std::vector<int> node_less;
        for (int a : candidates)
            if (!node->child(a)) node_less.push_back(a);

        if (node_less.empty()) {
            double best = -std::numeric_limits<double>::infinity();
            std::vector<int> ties;
            for (int a : candidates) {
                Node* child = node->child(a);
                double bound =
                    child->visits == 0
                        ? std::numeric_limits<double>::infinity()
                        : child->mean + exploration_ * std::sqrt(std::log(double(node->visits)) /
                                                                 double(child->visits));
                if (bound > best) {
                    best = bound;
                    ties.clear();
                }
                if (bound == best) ties.push_back(a);
            }
            int attr = pick_uniform(ties);
            order.push_back(attr);
            node = node->child(attr);
        } else {
            int attr = pick_uniform(node_less);
            order.push_back(attr);
            if (!grew) {
                node = grow(*node, attr);
                grew = true;
            } else {
                node = nullptr;
            }
        }
    }
    return order;
}

std::optional<std::vector<int>> UctLearner::register_forced(const AttributeOrder& order) {
    std::optional<std::vector<int>> created;
    Node* node = &root_;
    std::vector<int> prefix;
    for (int attr : order) {
        prefix.push_back(attr);
        if (!node) break;
        Node* child = node->child(attr);
        if (child) {
            node = child;
            continue;
        }
        if (!created) {
            node = grow(*node, attr);
            created = prefix;
        } else {
            node = nullptr;
        }
    }
    return created;
}

void UctLearner::update(const AttributeOrder& order, double reward) {
    auto bump = [reward](Node& n) {
        ++n.visits;
        n.mean += (reward - n.mean) / double(n.visits);
    };
    bump(root_);
    Node* node = &root_;
    for (int attr : order) {
        node = node->child(attr);
        if (!node) break;
        bump(*node);
    }
    auto& [episodes, mean] = per_order_[order];
    ++episodes;
    mean += (reward - mean) / double(episodes);
}

std::vector<OrderStats> UctLearner::order_statistics() const {
    std::vector<OrderStats> stats;
    stats.reserve(per_order_.size());
    for (const auto& [order, data] : per_order_)
        stats.push_back(OrderStats{order, data.first, data.second});
    return stats;
}

}  // namespace cubejoin
