#include "cubejoin/leapfrog.hpp"

#include <cassert>

namespace cubejoin {

std::optional<Value> leapfrog_intersect_next(LeapfrogLevel& level, Value from, Value hi) {
    const std::size_t k = level.cursors.size();
    assert(k > 0);
    if (from > hi) return std::nullopt;

    Value target = from;
    std::size_t agreeing = 0;
    while (true) {
        TrieCursor& cur = *level.cursors[level.rotation];
        std::optional<Value> v = cur.value();
        if (v && *v < target) v = cur.seek(target);
        if (!v) return std::nullopt;
        if (*v > hi) return std::nullopt;
        if (*v == target) {
            ++agreeing;
        } else {
            target = *v;
            agreeing = 1;
        }
        // leave rotation on the next cursor so the follow-up call advances a
        // different participant first
        level.rotation = (level.rotation + 1) % k;
        if (agreeing == k) return target;
    }
}

}  // namespace cubejoin
