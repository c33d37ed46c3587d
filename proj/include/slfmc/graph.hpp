#pragma once

#include <vector>

namespace slfmc {

/// Strongly connected components (iterative Tarjan). comp[v] is the component
/// index of v; components come out in reverse topological order.
struct Sccs {
    std::vector<int> comp;
    int count = 0;
    /// True when the component contains a cycle (two vertices or a self-loop).
    std::vector<char> cyclic;
};

Sccs strongly_connected(const std::vector<std::vector<int>>& adj);

/// Vertices reachable from `sources`.
std::vector<char> reachable(const std::vector<std::vector<int>>& adj, const std::vector<int>& sources);

}  // namespace slfmc
