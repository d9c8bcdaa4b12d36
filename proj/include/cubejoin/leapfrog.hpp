#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cubejoin/common.hpp"
#include "cubejoin/trie_cursor.hpp"

namespace cubejoin {

// One join level: the cursors of every atom binding this level's attribute,
// all opened at their trie level for it. The rotation index round-robins the
// cursor that moves next, so consecutive calls spread work like the classic
// protocol's next()-then-search step.
struct LeapfrogLevel {
    std::vector<TrieCursor*> cursors;
    std::size_t rotation = 0;
};

// Least value in [from, hi] present in every participant, advancing cursors
// forward only. Each underlying seek counts one cursor step. Returns nothing
// when the window holds no common value; cursors may then sit past hi or at
// end of level.
std::optional<Value> leapfrog_intersect_next(LeapfrogLevel& level, Value from, Value hi);

}  // namespace cubejoin
