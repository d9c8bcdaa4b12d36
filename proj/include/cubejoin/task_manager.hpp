#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "cubejoin/cube.hpp"
#include "cubejoin/query.hpp"

namespace cubejoin {

// Tracks the unprocessed region of the attribute-domain box as a set of
// non-empty pairwise-disjoint cubes. Workers reserve a cube, join inside it,
// and hand back the processed staircase; the manager re-inserts the exact
// complement, so reserved + unprocessed + processed always tile the box.
// All operations are internally locked; volumes are exact integers.
class TaskManager {
  public:
    // Splits the widest domain dimension of `target` into at most `pieces`
    // near-equal contiguous ranges (fewer when the dimension has fewer
    // values). An empty target yields no work at all.
    void init(const Cube& target, int pieces, std::uint64_t seed);

    // Uniformly random unprocessed cube, reserved for the caller; nothing
    // when no unprocessed cube remains (reserved cubes may still be in
    // flight).
    std::optional<Cube> retrieve();

    // Accounts a reserved cube: `processed` is the staircase reported by the
    // join (level order, possibly empty). Inserts the disjoint complement of
    // the staircase within `target` back into the unprocessed set — the whole
    // target again when nothing was processed. At most one complement cube
    // per join level is created.
    void remove(const Cube& target, const std::vector<Cube>& processed);

    // True once every cube has been processed: nothing unprocessed and
    // nothing reserved.
    bool finished();

    mpz_class total_volume();
    mpz_class processed_volume();
    mpz_class unprocessed_volume();

    // One cube per line, for debugging and tests.
    std::string dump_unprocessed();

    std::size_t unprocessed_count();

  private:
    std::mutex mutex_;
    std::vector<Cube> unprocessed_;
    std::size_t reserved_ = 0;
    mpz_class total_volume_ = 0;
    mpz_class processed_volume_ = 0;
    std::mt19937_64 rng_;
};

// Staircase complement used by TaskManager::remove, exposed for tests: the
// returned cubes are pairwise disjoint, disjoint from every processed cube,
// and together with them tile `target` exactly.
std::vector<Cube> staircase_complement(const Cube& target, const std::vector<Cube>& processed);

}  // namespace cubejoin
