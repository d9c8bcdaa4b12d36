#include "cubejoin/task_manager.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace cubejoin {

namespace {

// A staircase level reconstructed from the processed-cube list: the ranged
// dimension, the last fully covered value on it (absent when the level
// processed nothing), and the in-progress value the next level nested under
// (absent for the deepest level).
struct StairLevel {
    int dim;
    std::optional<Value> covered_to;
    std::optional<Value> in_progress;
};

}  // namespace

std::vector<Cube> staircase_complement(const Cube& target, const std::vector<Cube>& processed) {
    if (processed.empty()) return {target};

    const std::size_t dims = target.dims();
    for (const Cube& c : processed) {
        if (!cube_within(c, target))
            throw std::logic_error("processed cube outside its target");
        for (std::size_t i = 0; i < processed.size(); ++i) {
            const Cube& other = processed[i];
            if (&other != &c && cubes_overlap(c, other))
                throw std::logic_error("processed cubes overlap");
        }
    }

    std::vector<std::optional<Value>> fixed(dims);
    std::vector<StairLevel> levels;
    int previous_ranged = -1;
    bool saw_full_level = false;

    for (std::size_t i = 0; i < processed.size(); ++i) {
        const Cube& c = processed[i];
        const Cube* next = i + 1 < processed.size() ? &processed[i + 1] : nullptr;
        if (saw_full_level)
            throw std::logic_error("staircase continues below a completed level");

        // dims already fixed must stay collapsed to the same value
        for (std::size_t d = 0; d < dims; ++d)
            if (fixed[d] && (c.lo[d] != *fixed[d] || c.hi[d] != *fixed[d]))
                throw std::logic_error("staircase prefix not preserved");

        // this cube nests under the value its predecessor was working on
        if (previous_ranged >= 0) {
            const int d = previous_ranged;
            if (c.lo[d] != c.hi[d])
                throw std::logic_error("staircase level does not nest under its predecessor");
            Value v = c.lo[d];
            if (levels.back().covered_to && v <= *levels.back().covered_to)
                throw std::logic_error("in-progress value inside the covered range");
            levels.back().in_progress = v;
            fixed[d] = v;
        }

        // classify the remaining dims: full suffix, the cube's own ranged
        // interval, or prefix fixes of levels that processed nothing. A
        // single point at the target's lower bound is ranged exactly when a
        // deeper cube moves that dim to a different value.
        int ranged = -1;
        std::vector<std::pair<int, Value>> pseudo;
        for (std::size_t d = 0; d < dims; ++d) {
            if (fixed[d]) continue;
            if (c.lo[d] == target.lo[d] && c.hi[d] == target.hi[d]) continue;
            bool point = c.lo[d] == c.hi[d];
            bool moves_next =
                next && next->lo[d] == next->hi[d] && next->lo[d] != c.lo[d];
            if (point && !moves_next) {
                pseudo.emplace_back(static_cast<int>(d), c.lo[d]);
                continue;
            }
            if (ranged >= 0) throw std::logic_error("staircase cube has two ranged dimensions");
            if (c.lo[d] != target.lo[d])
                throw std::logic_error("staircase range does not start at the target bound");
            ranged = static_cast<int>(d);
        }
        for (const auto& [d, x] : pseudo) {
            levels.push_back(StairLevel{d, std::nullopt, x});
            fixed[d] = x;
        }
        if (ranged >= 0) {
            levels.push_back(StairLevel{ranged, c.hi[ranged], std::nullopt});
        } else {
            // prefix x full box: the level completed its whole window, so it
            // contributes no complement and nothing nests below it
            levels.push_back(StairLevel{-1, std::nullopt, std::nullopt});
            saw_full_level = true;
        }
        previous_ranged = ranged;
    }

    std::vector<Cube> complement;
    std::fill(fixed.begin(), fixed.end(), std::nullopt);
    for (const StairLevel& level : levels) {
        if (level.dim < 0) continue;
        const int d = level.dim;
        const Value lo = target.lo[d];
        const Value hi = target.hi[d];

        auto emit = [&](Value a, Value b) {
            if (a > b) return;
            Cube u = target;
            for (std::size_t j = 0; j < dims; ++j)
                if (fixed[j]) {
                    u.lo[j] = *fixed[j];
                    u.hi[j] = *fixed[j];
                }
            u.lo[d] = a;
            u.hi[d] = b;
            complement.push_back(std::move(u));
        };

        if (level.covered_to && *level.covered_to == hi) {
            assert(!level.in_progress);
        } else {
            Value start = level.covered_to ? *level.covered_to + 1 : lo;
            if (level.in_progress) {
                assert(*level.in_progress >= start);
                if (start <= *level.in_progress - 1) emit(start, *level.in_progress - 1);
                if (*level.in_progress < hi) emit(*level.in_progress + 1, hi);
            } else {
                emit(start, hi);
            }
        }
        if (level.in_progress)
            fixed[d] = *level.in_progress;
        else
            break;  // deepest level: nothing nests below it
    }
    return complement;
}

void TaskManager::init(const Cube& target, int pieces, std::uint64_t seed) {
    std::lock_guard<std::mutex> lock(mutex_);
    rng_.seed(seed);
    unprocessed_.clear();
    reserved_ = 0;
    processed_volume_ = 0;
    total_volume_ = volume(target);
    if (target.empty() || pieces < 1) return;

    std::size_t widest = 0;
    unsigned __int128 widest_width = 0;
    for (std::size_t d = 0; d < target.dims(); ++d) {
        unsigned __int128 width = static_cast<unsigned __int128>(
            static_cast<std::uint64_t>(target.hi[d]) - static_cast<std::uint64_t>(target.lo[d]));
        if (width > widest_width) {
            widest_width = width;
            widest = d;
        }
    }

    unsigned __int128 values = widest_width + 1;
    unsigned __int128 parts = std::min<unsigned __int128>(values, pieces);
    unsigned __int128 base = values / parts;
    unsigned __int128 extra = values % parts;
    Value next_lo = target.lo[widest];
    for (unsigned __int128 i = 0; i < parts; ++i) {
        unsigned __int128 size = base + (i < extra ? 1 : 0);
        Cube piece = target;
        piece.lo[widest] = next_lo;
        piece.hi[widest] = static_cast<Value>(next_lo + static_cast<Value>(size) - 1);
        unprocessed_.push_back(piece);
        if (i + 1 < parts) next_lo = piece.hi[widest] + 1;
    }
}

std::optional<Cube> TaskManager::retrieve() {
    std::lock_guard<std::mutex> lock(mutex_);
    if (unprocessed_.empty()) return std::nullopt;
    std::uniform_int_distribution<std::size_t> pick(0, unprocessed_.size() - 1);
    std::size_t idx = pick(rng_);
    Cube c = std::move(unprocessed_[idx]);
    unprocessed_[idx] = std::move(unprocessed_.back());
    unprocessed_.pop_back();
    ++reserved_;
    return c;
}

void TaskManager::remove(const Cube& target, const std::vector<Cube>& processed) {
    std::vector<Cube> complement = staircase_complement(target, processed);

    mpz_class processed_vol = 0;
    for (const Cube& c : processed) processed_vol += volume(c);
    mpz_class complement_vol = 0;
    for (const Cube& c : complement) complement_vol += volume(c);
    if (processed_vol + complement_vol != volume(target))
        throw std::logic_error("staircase does not tile its target");

    std::lock_guard<std::mutex> lock(mutex_);
    assert(reserved_ > 0);
    --reserved_;
    processed_volume_ += processed_vol;
    for (Cube& c : complement) {
        assert(!c.empty());
        unprocessed_.push_back(std::move(c));
    }
}

bool TaskManager::finished() {
    std::lock_guard<std::mutex> lock(mutex_);
    return unprocessed_.empty() && reserved_ == 0;
}

mpz_class TaskManager::total_volume() {
    std::lock_guard<std::mutex> lock(mutex_);
    return total_volume_;
}

mpz_class TaskManager::processed_volume() {
    std::lock_guard<std::mutex> lock(mutex_);
    return processed_volume_;
}

mpz_class TaskManager::unprocessed_volume() {
    std::lock_guard<std::mutex> lock(mutex_);
    mpz_class v = 0;
    for (const Cube& c : unprocessed_) v += volume(c);
    return v;
}

std::string TaskManager::dump_unprocessed() {
    std::lock_guard<std::mutex> lock(mutex_);
    std::ostringstream out;
    for (const Cube& c : unprocessed_) out << to_string(c) << '\n';
    return out.str();
}

std::size_t TaskManager::unprocessed_count() {
    std::lock_guard<std::mutex> lock(mutex_);
    return unprocessed_.size();
}

}  // namespace cubejoin
