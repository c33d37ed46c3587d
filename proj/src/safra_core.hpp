#pragma once

// Safra trees with compact names over an implicit Buchi automaton.

#include <algorithm>
#include <iterator>
#include <string>
#include <vector>

namespace slfmc::detail {

using StateSet = std::vector<int>;  // sorted

struct SafraNode {
    int name = 0;
    StateSet label;
    std::vector<SafraNode> kids;  // oldest first
};

inline StateSet set_union(const StateSet& a, const StateSet& b) {
    StateSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline StateSet set_minus(const StateSet& a, const StateSet& b) {
    StateSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

/// One step of the construction. `succ(q)` yields successors of q on the
/// current letter, `acc(q)` tells Buchi states. Returns a min-parity code:
/// 2i for a green node named i, 2i-1 for a removed one, `neutral` otherwise
/// (neutral must exceed twice any name that can occur).
template <class Succ, class Acc>
class SafraStep {
public:
    SafraStep(Succ succ, Acc acc) : succ_(std::move(succ)), acc_(std::move(acc)) {}

    int operator()(std::vector<SafraNode>& root, int neutral) {
        if (root.empty()) return neutral;
        green_ = bad_ = kNone;
        int next_name = 1 + count(root[0]);
        advance(root[0]);
        spawn(root[0], next_name);
        horizontal(root[0]);
        if (prune(root[0])) {
            bad_ = std::min(bad_, min_name(root[0]));
            root.clear();
        } else {
            vertical(root[0]);
            compact(root[0]);
        }
        int p = neutral;
        if (green_ != kNone) p = std::min(p, 2 * green_);
        if (bad_ != kNone) p = std::min(p, 2 * bad_ - 1);
        return p;
    }

private:
    static constexpr int kNone = 1 << 30;

    static int count(const SafraNode& t) {
        int c = 1;
        for (const auto& k : t.kids) c += count(k);
        return c;
    }

    static int min_name(const SafraNode& t) {
        int m = t.name;
        for (const auto& k : t.kids) m = std::min(m, min_name(k));
        return m;
    }

    void advance(SafraNode& t) {
        StateSet next;
        for (int q : t.label) {
            const auto& s = succ_(q);
            next.insert(next.end(), s.begin(), s.end());
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        t.label = std::move(next);
        for (auto& k : t.kids) advance(k);
    }

    void spawn(SafraNode& t, int& next_name) {
        for (auto& k : t.kids) spawn(k, next_name);
        StateSet acc;
        for (int q : t.label)
            if (acc_(q)) acc.push_back(q);
        if (!acc.empty()) t.kids.push_back(SafraNode{next_name++, std::move(acc), {}});
    }

    static void remove_states(SafraNode& t, const StateSet& drop) {
        t.label = set_minus(t.label, drop);
        for (auto& k : t.kids) remove_states(k, drop);
    }

    void horizontal(SafraNode& t) {
        StateSet seen;
        for (auto& k : t.kids) {
            remove_states(k, seen);
            seen = set_union(seen, k.label);
        }
        for (auto& k : t.kids) horizontal(k);
    }

    bool prune(SafraNode& t) {
        std::vector<SafraNode> keep;
        for (auto& k : t.kids) {
            if (prune(k)) bad_ = std::min(bad_, min_name(k));
            else keep.push_back(std::move(k));
        }
        t.kids = std::move(keep);
        return t.label.empty();
    }

    void vertical(SafraNode& t) {
        if (!t.kids.empty()) {
            StateSet u;
            for (const auto& k : t.kids) u = set_union(u, k.label);
            if (u == t.label) {
                for (const auto& k : t.kids) bad_ = std::min(bad_, min_name(k));
                t.kids.clear();
                green_ = std::min(green_, t.name);
                return;
            }
        }
        for (auto& k : t.kids) vertical(k);
    }

    static void collect(const SafraNode& t, std::vector<int>& names) {
        names.push_back(t.name);
        for (const auto& k : t.kids) collect(k, names);
    }

    static void rename(SafraNode& t, const std::vector<int>& sorted) {
        t.name = 1 + static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), t.name) - sorted.begin());
        for (auto& k : t.kids) rename(k, sorted);
    }

    static void compact(SafraNode& t) {
        std::vector<int> names;
        collect(t, names);
        std::sort(names.begin(), names.end());
        rename(t, names);
    }

    Succ succ_;
    Acc acc_;
    int green_ = kNone;
    int bad_ = kNone;
};

template <class Succ, class Acc>
int safra_step(std::vector<SafraNode>& root, Succ succ, Acc acc, int neutral) {
    return SafraStep<Succ, Acc>(std::move(succ), std::move(acc))(root, neutral);
}

/// Canonical key of a tree (empty forest allowed).
inline void encode_tree(const std::vector<SafraNode>& root, std::vector<int>& out) {
    struct Rec {
        static void go(const SafraNode& t, std::vector<int>& o) {
            o.push_back(t.name);
            o.push_back(static_cast<int>(t.label.size()));
            o.insert(o.end(), t.label.begin(), t.label.end());
            o.push_back(static_cast<int>(t.kids.size()));
            for (const auto& k : t.kids) go(k, o);
        }
    };
    out.push_back(static_cast<int>(root.size()));
    if (!root.empty()) Rec::go(root[0], out);
}

inline std::string describe_tree(const SafraNode& t) {
    std::string s = std::to_string(t.name) + "{";
    for (std::size_t i = 0; i < t.label.size(); ++i) s += (i ? "," : "") + std::to_string(t.label[i]);
    s += "}";
    if (!t.kids.empty()) {
        s += "(";
        for (std::size_t k = 0; k < t.kids.size(); ++k) s += (k ? " " : "") + describe_tree(t.kids[k]);
        s += ")";
    }
    return s;
}

}  // namespace slfmc::detail
