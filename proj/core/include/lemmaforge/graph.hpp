#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace lemmaforge {

// Strongly connected components of a directed graph on nodes 0..n-1.
// Component ids follow a reverse topological order of the condensation: if
// there is an edge u -> v between different components, comp[v] < comp[u].
std::vector<int> strongly_connected_components(size_t n,
                                               const std::vector<std::pair<int, int>>& edges);

}  // namespace lemmaforge
