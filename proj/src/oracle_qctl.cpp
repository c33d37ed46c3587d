#include "slfmc/error.hpp"
#include "slfmc/oracle.hpp"

#include <functional>
#include <map>

namespace slfmc {

namespace {

bool is_min(const Formula& f) { return f->op == Op::Func && f->func->kind == FuncKind::Min; }
bool is_max(const Formula& f) { return f->op == Op::Func && f->func->kind == FuncKind::Max; }

class TreeEval {
public:
    TreeEval(const FiniteTree& t, const TreeOptions& o) : t_(t), opts_(o), labels_(t.labels), cols_() {
        for (std::size_t i = 0; i < t.aps.size(); ++i) cols_[t.aps[i]] = static_cast<int>(i);
    }

    std::uint64_t enumerated = 0;

    Rat state(const Formula& f, int node) {
        switch (f->op) {
            case Op::Atom: {
                auto it = cols_.find(f->name);
                if (it == cols_.end()) throw Error(ErrorCode::Schema, "proposition '" + f->name + "' does not label the tree");
                return labels_[node][it->second];
            }
            case Op::Func: {
                std::vector<Rat> args;
                for (const auto& k : f->kids) {
                    args.push_back(state(k, node));
                    if (is_min(f) && args.back() == Rat(0)) return Rat(0);
                    if (is_max(f) && args.back() == Rat(1)) return Rat(1);
                }
                return apply_func(*f->func, args);
            }
            case Op::ExistsProp: return relabel(f, node);
            case Op::PathE: return some_branch(f->kids[0], node);
            default: throw Error(ErrorCode::NotInFragment, "operator not allowed in a QCTL state formula");
        }
    }

private:
    const FiniteTree& t_;
    TreeOptions opts_;
    std::vector<std::vector<Rat>> labels_;
    std::map<std::string, int> cols_;

    int reach(const Formula& f, int node) {
        if (opts_.mode == TreeMode::Window) return t_.max_depth - t_.depth[node];
        auto d = temporal_depth(f);
        if (!d) throw Error(ErrorCode::ModeMismatch, "exact tree evaluation needs an X-bounded formula");
        if (t_.depth[node] + *d > t_.max_depth)
            throw Error(ErrorCode::DepthInsufficient, "tree depth " + std::to_string(t_.max_depth) +
                                                          " is too shallow for temporal depth " + std::to_string(*d));
        return *d;
    }

    Rat relabel(const Formula& f, int node) {
        const int d = reach(f->kids[0], node);
        std::vector<int> window;
        std::vector<int> stack{node};
        while (!stack.empty()) {
            int n = stack.back();
            stack.pop_back();
            window.push_back(n);
            if (t_.depth[n] - t_.depth[node] < d)
                for (int c : t_.children[n]) stack.push_back(c);
        }
        if (window.size() > 62) throw Error(ErrorCode::OracleCap, "relabeling window too large");
        const std::uint64_t total = std::uint64_t{1} << window.size();
        enumerated += total;
        if (enumerated > opts_.cap)
            throw Error(ErrorCode::OracleCap, "oracle enumeration cap of " + std::to_string(opts_.cap) + " exceeded");

        int col;
        auto it = cols_.find(f->name);
        const bool fresh = it == cols_.end();
        if (fresh) {
            col = static_cast<int>(labels_[0].size());
            for (auto& row : labels_) row.push_back(Rat(0));
            cols_[f->name] = col;
        } else {
            col = it->second;
        }
        std::vector<Rat> saved;
        for (int n : window) saved.push_back(labels_[n][col]);

        Rat best(0);
        for (std::uint64_t mask = 0; mask < total && best != Rat(1); ++mask) {
            for (std::size_t i = 0; i < window.size(); ++i) labels_[window[i]][col] = Rat((mask >> i) & 1);
            best = max(best, state(f->kids[0], node));
        }
        for (std::size_t i = 0; i < window.size(); ++i) labels_[window[i]][col] = saved[i];
        if (fresh) {
            for (auto& row : labels_) row.pop_back();
            cols_.erase(f->name);
        }
        return best;
    }

    Rat some_branch(const Formula& psi, int node) {
        const int d = reach(psi, node);
        Rat best(0);
        std::vector<int> branch{node};
        std::function<void()> dfs = [&]() {
            if (best == Rat(1)) return;
            int last = branch.back();
            if (static_cast<int>(branch.size()) - 1 == d || t_.children[last].empty()) {
                best = max(best, path(psi, branch, 0));
                return;
            }
            for (int c : t_.children[last]) {
                branch.push_back(c);
                dfs();
                branch.pop_back();
            }
        };
        dfs();
        return best;
    }

    Rat path(const Formula& f, const std::vector<int>& branch, std::size_t i) {
        switch (f->op) {
            case Op::Next:
                if (i + 1 >= branch.size()) {
                    if (opts_.mode == TreeMode::Window) return Rat(1);
                    throw Error(ErrorCode::DepthInsufficient, "branch too short");
                }
                return path(f->kids[0], branch, i + 1);
            case Op::Until: {
                if (opts_.mode != TreeMode::Window)
                    throw Error(ErrorCode::ModeMismatch, "exact tree evaluation needs an X-bounded formula");
                Rat best(0), prefix(1);
                for (std::size_t j = i; j < branch.size(); ++j) {
                    best = max(best, min(path(f->kids[1], branch, j), prefix));
                    prefix = min(prefix, path(f->kids[0], branch, j));
                    if (prefix <= best) break;
                }
                return best;
            }
            case Op::Func: {
                if (is_state_formula(f)) break;
                std::vector<Rat> args;
                for (const auto& k : f->kids) {
                    args.push_back(path(k, branch, i));
                    if (is_min(f) && args.back() == Rat(0)) return Rat(0);
                    if (is_max(f) && args.back() == Rat(1)) return Rat(1);
                }
                return apply_func(*f->func, args);
            }
            default: break;
        }
        return state(f, branch[i]);
    }
};

}  // namespace

OracleResult eval_bqctl(const Formula& phi, const FiniteTree& t, int node, const TreeOptions& opts) {
    if (node < 0 || node >= static_cast<int>(t.size())) throw Error(ErrorCode::OutOfRange, "tree node out of range");
    if (!is_state_formula(phi)) throw Error(ErrorCode::NotInFragment, "expected a state formula");
    TreeOptions o = opts;
    o.cap = cap_from_env(opts.cap);
    TreeEval ev(t, o);
    OracleResult r;
    r.value = ev.state(phi, node);
    r.exact = true;
    r.enumerated = ev.enumerated;
    return r;
}

}  // namespace slfmc
