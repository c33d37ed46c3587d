// Alternation removal for parity tree automata.
//
// A run of an alternating automaton can be made positional, so a run is a
// labelling of tree nodes by local strategies: for each state present at a
// node, one minimal model of its transition. A run is accepting iff no trace
// through the strategies is losing. Losing traces are caught by a Buchi word
// automaton that guesses the largest priority seen infinitely often (odd),
// and this automaton is determinized lazily with Safra trees.

#include "safra_core.hpp"
#include "slfmc/error.hpp"
#include "slfmc/tree_automata.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace slfmc {

namespace {

using detail::SafraNode;
using Conj = std::vector<Move>;

constexpr int kNeutral = (1 << 28) + 1;
constexpr int kTop = kNeutral + 1;

class NondetView : public TreeAutomaton {
public:
    NondetView(TreeAutomatonPtr inner, std::uint64_t cap)
        : TreeAutomaton(inner->alphabet(), inner->dirs_ptr()), inner_(std::move(inner)), cap_(cap) {
        std::vector<SafraNode> init{SafraNode{1, {trace_id(inner_->initial(), -1, false)}, {}}};
        initial_ = state_id(init, 1);
    }

    TaKind kind() const override { return TaKind::Nondeterministic; }
    int initial() override { return initial_; }
    // The tree accepts iff its Safra run rejects, hence the shift by one.
    int priority(int d) override { return prio_.at(d) + 1; }
    std::size_t num_states() const override { return trees_.size(); }

    std::string describe(int d) override {
        const auto& t = trees_.at(d);
        if (t.empty()) return "empty";
        std::string s;
        describe_node(t[0], s);
        return s;
    }

    Pbf delta(int d, std::size_t letter, int dir) override {
        auto key = std::make_tuple(d, letter, dir);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        Pbf out = compute(d, letter, dir);
        memo_.emplace(key, out);
        return out;
    }

    NondetStats stats() const { return {traces_.size(), trees_.size(), strategies_}; }

private:
    struct Trace {
        int q;
        int k;  // committed odd priority, -1 while guessing
        bool hit;
    };

    int trace_id(int q, int k, bool hit) {
        auto [it, fresh] = trace_ids_.emplace(std::make_tuple(q, k, hit), static_cast<int>(traces_.size()));
        if (fresh) traces_.push_back({q, k, hit});
        return it->second;
    }

    int state_id(const std::vector<SafraNode>& tree, int prio) {
        std::vector<int> key{prio};
        detail::encode_tree(tree, key);
        auto [it, fresh] = ids_.emplace(key, static_cast<int>(trees_.size()));
        if (fresh) {
            if (trees_.size() >= cap_)
                throw Error(ErrorCode::ResourceCap, "nondeterminization exceeds " + std::to_string(cap_) + " states");
            trees_.push_back(tree);
            prio_.push_back(prio);
        }
        return it->second;
    }

    void describe_node(const SafraNode& t, std::string& s) {
        s += std::to_string(t.name) + "{";
        for (std::size_t i = 0; i < t.label.size(); ++i) {
            const Trace& tr = traces_[t.label[i]];
            if (i) s += ",";
            s += inner_->describe(tr.q);
            if (tr.k >= 0) s += "@" + std::to_string(tr.k) + (tr.hit ? "!" : "");
        }
        s += "}";
        if (!t.kids.empty()) {
            s += "(";
            for (std::size_t i = 0; i < t.kids.size(); ++i) {
                if (i) s += " ";
                describe_node(t.kids[i], s);
            }
            s += ")";
        }
    }

    // A move to a child together with the largest priority met on the way,
    // stay moves inlined.
    struct Step {
        int dir;
        int state;
        int top;
        friend auto operator<=>(const Step&, const Step&) = default;
    };
    using Model = std::vector<Step>;  // sorted

    static std::vector<Model> minimize(std::vector<Model> ms) {
        for (auto& m : ms) {
            std::sort(m.begin(), m.end());
            m.erase(std::unique(m.begin(), m.end()), m.end());
        }
        std::sort(ms.begin(), ms.end(), [](const Model& x, const Model& y) {
            return x.size() != y.size() ? x.size() < y.size() : x < y;
        });
        ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
        std::vector<Model> out;
        for (const auto& m : ms)
            if (std::none_of(out.begin(), out.end(),
                             [&](const Model& k) { return std::includes(m.begin(), m.end(), k.begin(), k.end()); }))
                out.push_back(m);
        return out;
    }

    // Minimal models of a transition with stay moves expanded. A stay cycle
    // decides the play at once by the parity of its largest priority.
    class Expander {
    public:
        Expander(NondetView& v, std::size_t letter, int dir) : v_(v), letter_(letter), dir_(dir) {}

        const std::vector<Model>& models(int q) {
            auto it = roots_.find(q);
            if (it != roots_.end()) return it->second;
            stack_.clear();
            stack_.push_back(q);
            bool cyclic = false;
            auto ms = expand(v_.inner_->delta(q, letter_, dir_), -1, cyclic);
            return roots_.emplace(q, std::move(ms)).first->second;
        }

    private:
        std::vector<Model> expand(const Pbf& f, int top, bool& cyclic) {
            switch (f.kind) {
                case Pbf::Kind::True: return {Model{}};
                case Pbf::Kind::False: return {};
                case Pbf::Kind::Atom: {
                    int pr = v_.inner_->priority(f.move.state);
                    int t = std::max(top, pr);
                    if (f.move.dir != kStay) return {Model{{f.move.dir, f.move.state, t}}};
                    auto pos = std::find(stack_.begin(), stack_.end(), f.move.state);
                    if (pos != stack_.end()) {
                        cyclic = true;
                        // Largest priority entered since the repeated state.
                        int c = pr;
                        for (auto i = static_cast<std::size_t>(pos - stack_.begin()) + 1; i < stack_.size(); ++i)
                            c = std::max(c, v_.inner_->priority(stack_[i]));
                        return c % 2 == 0 ? std::vector<Model>{Model{}} : std::vector<Model>{};
                    }
                    auto key = std::make_pair(f.move.state, t);
                    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
                    stack_.push_back(f.move.state);
                    bool inner_cycle = false;
                    auto ms = expand(v_.inner_->delta(f.move.state, letter_, dir_), t, inner_cycle);
                    stack_.pop_back();
                    if (inner_cycle) cyclic = true;
                    else memo_.emplace(key, ms);
                    return ms;
                }
                case Pbf::Kind::Or: {
                    std::vector<Model> out;
                    for (const auto& k : f.kids) {
                        auto part = expand(k, top, cyclic);
                        out.insert(out.end(), part.begin(), part.end());
                        if (out.size() > v_.cap_) throw Error(ErrorCode::ResourceCap, "transition has too many models");
                    }
                    return minimize(std::move(out));
                }
                default: {
                    std::vector<Model> acc{Model{}};
                    for (const auto& k : f.kids) {
                        auto part = expand(k, top, cyclic);
                        std::vector<Model> next;
                        for (const auto& x : acc)
                            for (const auto& y : part) {
                                Model m = x;
                                m.insert(m.end(), y.begin(), y.end());
                                next.push_back(std::move(m));
                                if (next.size() > v_.cap_)
                                    throw Error(ErrorCode::ResourceCap, "transition has too many models");
                            }
                        acc = minimize(std::move(next));
                        if (acc.empty()) break;
                    }
                    return acc;
                }
            }
        }

        NondetView& v_;
        std::size_t letter_;
        int dir_;
        std::vector<int> stack_;
        std::map<int, std::vector<Model>> roots_;
        std::map<std::pair<int, int>, std::vector<Model>> memo_;
    };

    Pbf compute(int d, std::size_t letter, int dir) {
        const std::vector<SafraNode> tree = trees_[d];  // trees_ grows below
        if (tree.empty()) return Pbf::yes();
        std::vector<int> present;
        for (int t : tree[0].label)
            if (traces_[t].k < 0) present.push_back(traces_[t].q);
        std::sort(present.begin(), present.end());
        present.erase(std::unique(present.begin(), present.end()), present.end());

        Expander ex(*this, letter, dir);
        std::vector<const std::vector<Model>*> options;
        for (int q : present) {
            options.push_back(&ex.models(q));
            if (options.back()->empty()) return Pbf::no();
        }

        const auto& children = dirs().succ.at(dir);
        std::set<Conj> disjuncts;
        std::map<int, const Model*> f;
        auto finish = [&]() {
            if (++strategies_ > cap_)
                throw Error(ErrorCode::ResourceCap, "too many local strategies during nondeterminization");
            Conj conj;
            for (int c : children) {
                std::map<int, std::vector<int>> succ_cache;
                std::vector<SafraNode> t = tree;
                int p = detail::safra_step(
                    t,
                    [&](int tid) -> const std::vector<int>& {
                        auto it = succ_cache.find(tid);
                        if (it == succ_cache.end()) it = succ_cache.emplace(tid, trace_succ(tid, *f.at(traces_[tid].q), c)).first;
                        return it->second;
                    },
                    [&](int tid) { return traces_[tid].hit; }, kNeutral);
                // An empty tree accepts every subtree, so its move is dropped.
                if (!t.empty()) conj.push_back({c, state_id(t, kTop - p)});
            }
            std::sort(conj.begin(), conj.end());
            disjuncts.insert(std::move(conj));
        };
        auto search = [&](auto&& self, std::size_t i) -> void {
            if (i == present.size()) {
                finish();
                return;
            }
            for (const auto& m : *options[i]) {
                f[present[i]] = &m;
                self(self, i + 1);
            }
        };
        search(search, 0);

        std::vector<Pbf> parts;
        if (disjuncts.count(Conj{})) return Pbf::yes();
        for (const auto& conj : disjuncts) {
            std::vector<Pbf> atoms;
            for (const auto& m : conj) atoms.push_back(Pbf::atom(m.dir, m.state));
            parts.push_back(Pbf::all(std::move(atoms)));
        }
        return Pbf::any(std::move(parts));
    }

    // `hit` records that the committed priority was met on the way to the child.
    std::vector<int> trace_succ(int tid, const Model& m, int child) {
        const Trace tr = traces_[tid];
        std::vector<int> out;
        for (const auto& s : m) {
            if (s.dir != child) continue;
            if (tr.k < 0) {
                out.push_back(trace_id(s.state, -1, false));
                if (s.top % 2 != 0) out.push_back(trace_id(s.state, s.top, true));
            } else if (s.top <= tr.k) {
                out.push_back(trace_id(s.state, tr.k, s.top == tr.k));
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    TreeAutomatonPtr inner_;
    std::uint64_t cap_;
    int initial_ = 0;
    std::vector<Trace> traces_;
    std::map<std::tuple<int, int, bool>, int> trace_ids_;
    std::vector<std::vector<SafraNode>> trees_;
    std::vector<int> prio_;
    std::map<std::vector<int>, int> ids_;
    std::map<std::tuple<int, std::size_t, int>, Pbf> memo_;
    std::uint64_t strategies_ = 0;
};

}  // namespace

TreeAutomatonPtr nondeterminize(TreeAutomatonPtr a, std::uint64_t cap) {
    if (a->kind() == TaKind::Nondeterministic) return a;
    if (cap == 0) cap = cap_from_env(2'000'000);
    return std::make_shared<NondetView>(std::move(a), cap);
}

NondetStats nondet_stats(const TreeAutomaton& a) {
    if (const auto* n = dynamic_cast<const NondetView*>(&a)) return n->stats();
    return {};
}

}  // namespace slfmc
