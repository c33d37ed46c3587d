#include "safra_core.hpp"
#include "slfmc/error.hpp"
#include "slfmc/omega.hpp"

#include <deque>

namespace slfmc {

using detail::SafraNode;

Dpw determinize(const Nbw& a, std::size_t max_states) {
    if (max_states == 0) max_states = cap_from_env(1'000'000);
    // At most n nodes survive a step and at most n more are spawned.
    const int neutral = 4 * a.num_states + 1;
    const int top = neutral + 1;  // min-parity p becomes max-even top - p
    Dpw out;
    out.alphabet = a.alphabet;
    const std::size_t letters = a.alphabet.size();

    std::map<std::vector<int>, int> ids;
    std::vector<std::vector<SafraNode>> trees;
    std::deque<int> todo;
    auto id_of = [&](const std::vector<SafraNode>& tree, int prio) {
        std::vector<int> key{prio};
        detail::encode_tree(tree, key);
        auto [it, fresh] = ids.emplace(key, out.num_states);
        if (fresh) {
            if (static_cast<std::size_t>(out.num_states) >= max_states)
                throw Error(ErrorCode::ResourceCap, "determinization exceeds " + std::to_string(max_states) + " states");
            ++out.num_states;
            trees.push_back(tree);
            out.priority.push_back(prio);
            out.delta.emplace_back(letters, -1);
            out.names.push_back(tree.empty() ? std::string("empty") : detail::describe_tree(tree[0]));
            todo.push_back(it->second);
        }
        return it->second;
    };
    std::vector<SafraNode> init;
    if (!a.initial.empty()) {
        detail::StateSet l(a.initial.begin(), a.initial.end());
        std::sort(l.begin(), l.end());
        l.erase(std::unique(l.begin(), l.end()), l.end());
        init.push_back(SafraNode{1, l, {}});
    }
    out.initial = id_of(init, 1);
    while (!todo.empty()) {
        int s = todo.front();
        todo.pop_front();
        for (std::size_t l = 0; l < letters; ++l) {
            std::vector<SafraNode> t = trees[s];
            int p = detail::safra_step(
                t, [&](int q) -> const std::vector<int>& { return a.delta[q][l]; },
                [&](int q) { return a.accepting[q] != 0; }, neutral);
            out.delta[s][l] = id_of(t, top - p);
        }
    }
    return out;
}

}  // namespace slfmc
