#include "slfmc/graph.hpp"

#include <algorithm>
#include <utility>

namespace slfmc {

Sccs strongly_connected(const std::vector<std::vector<int>>& adj) {
    const int n = static_cast<int>(adj.size());
    Sccs out;
    out.comp.assign(n, -1);
    std::vector<int> index(n, -1), low(n, 0), stack;
    std::vector<char> on_stack(n, 0);
    std::vector<std::pair<int, std::size_t>> work;
    int counter = 0;
    for (int root = 0; root < n; ++root) {
        if (index[root] >= 0) continue;
        work.push_back({root, 0});
        while (!work.empty()) {
            auto& [v, pos] = work.back();
            if (pos == 0 && index[v] < 0) {
                index[v] = low[v] = counter++;
                stack.push_back(v);
                on_stack[v] = 1;
            }
            if (pos < adj[v].size()) {
                int w = adj[v][pos++];
                if (index[w] < 0) {
                    work.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                int c = out.count++;
                bool cyc = false;
                int size = 0;
                while (true) {
                    int w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    out.comp[w] = c;
                    ++size;
                    if (w == v) break;
                }
                if (size > 1) cyc = true;
                else cyc = std::find(adj[v].begin(), adj[v].end(), v) != adj[v].end();
                out.cyclic.push_back(cyc ? 1 : 0);
            }
            int done = v;
            work.pop_back();
            if (!work.empty()) {
                int parent = work.back().first;
                low[parent] = std::min(low[parent], low[done]);
            }
        }
    }
    return out;
}

std::vector<char> reachable(const std::vector<std::vector<int>>& adj, const std::vector<int>& sources) {
    std::vector<char> seen(adj.size(), 0);
    std::vector<int> todo;
    for (int s : sources) {
        if (!seen[s]) {
            seen[s] = 1;
            todo.push_back(s);
        }
    }
    while (!todo.empty()) {
        int v = todo.back();
        todo.pop_back();
        for (int w : adj[v]) {
            if (!seen[w]) {
                seen[w] = 1;
                todo.push_back(w);
            }
        }
    }
    return seen;
}

}  // namespace slfmc
