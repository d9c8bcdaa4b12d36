#pragma once

#include <string>

namespace cubejoin {

// Benchmark query families over a relation named "edge":
//   clique n          all pairs joined, nodes ordered by a strict chain
//   cycle n           consecutive pairs plus the closing edge, strict chain
//   loomis-whitney n  n atoms of arity n-1, atom i dropping one attribute
// Counts results (Q(count)). n >= 3; clique/cycle names nodes a, b, c, ...
// and are limited to 26 nodes, loomis-whitney names attributes a1..an.
std::string generate_query(const std::string& kind, int n);

}  // namespace cubejoin
