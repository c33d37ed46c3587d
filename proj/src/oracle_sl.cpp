#include "slfmc/error.hpp"
#include "slfmc/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <set>

#ifdef SLFMC_HAVE_OPENMP
#include <omp.h>
#endif

namespace slfmc {

namespace {

struct IStrat {
    virtual ~IStrat() = default;
    virtual int act(const History& h) const = 0;
};

struct Wrapped final : IStrat {
    StrategyPtr s;
    explicit Wrapped(StrategyPtr p) : s(std::move(p)) {}
    int act(const History& h) const override { return s->act(h); }
};

using HistIndex = std::map<History, int>;

// Choices on the histories of a finite window below some history.
struct Windowed final : IStrat {
    std::shared_ptr<const HistIndex> index;
    std::vector<int> choice;
    int act(const History& h) const override {
        auto it = index->find(h);
        if (it == index->end()) throw Error(ErrorCode::StrategyDomain, "history outside the enumerated strategy window");
        return choice[it->second];
    }
};

struct Positional final : IStrat {
    std::vector<int> choice;
    int act(const History& h) const override { return choice[h.back()]; }
};

using Env = std::map<std::string, std::shared_ptr<const IStrat>>;

bool is_min(const Formula& f) { return f->op == Op::Func && f->func->kind == FuncKind::Min; }
bool is_max(const Formula& f) { return f->op == Op::Func && f->func->kind == FuncKind::Max; }

class SlEval {
public:
    SlEval(const Wcgs& g, const OracleOptions& o) : g_(g), opts_(o) {}

    std::atomic<std::uint64_t> enumerated{0};

    Rat state(const Formula& f, const Env& env, const History& rho, bool par) {
        switch (f->op) {
            case Op::Atom: {
                auto i = g_.ap_index(f->name);
                if (!i) throw Error(ErrorCode::Schema, "proposition '" + f->name + "' does not occur in the game");
                return g_.labels[rho.back()][*i];
            }
            case Op::Func: {
                std::vector<Rat> args;
                args.reserve(f->kids.size());
                for (const auto& k : f->kids) {
                    args.push_back(state(k, env, rho, par));
                    if (is_min(f) && args.back() == Rat(0)) return Rat(0);
                    if (is_max(f) && args.back() == Rat(1)) return Rat(1);
                }
                return apply_func(*f->func, args);
            }
            case Op::Bind: {
                auto it = env.find(f->var);
                if (it == env.end()) throw Error(ErrorCode::UnboundVariable, "variable '" + f->var + "' is not quantified");
                Env e = env;
                e[f->name] = it->second;
                return state(f->kids[0], e, rho, par);
            }
            case Op::ExistsStrat: return quantify(f, env, rho, par);
            case Op::PathA:
                return opts_.mode == OracleMode::MemorylessApprox ? all_paths_lasso(f, env, rho)
                                                                  : all_paths_finite(f, env, rho);
            default: throw Error(ErrorCode::NotInFragment, "operator not allowed in an SL state formula");
        }
    }

private:
    const Wcgs& g_;
    OracleOptions opts_;
    std::mutex memo_mu_;
    std::map<const Node*, int> depth_memo_;

    int tdepth(const Formula& f) {
        std::lock_guard<std::mutex> lock(memo_mu_);
        auto it = depth_memo_.find(f.get());
        if (it != depth_memo_.end()) return it->second;
        auto d = temporal_depth(f);
        if (!d) throw Error(ErrorCode::ModeMismatch, "exact evaluation needs an X-bounded formula");
        depth_memo_[f.get()] = *d;
        return *d;
    }

    void count(std::uint64_t n) {
        if ((enumerated += n) > opts_.cap)
            throw Error(ErrorCode::OracleCap, "oracle enumeration cap of " + std::to_string(opts_.cap) + " exceeded");
    }

    std::uint64_t power(std::size_t base, std::size_t exp) {
        std::uint64_t r = 1;
        for (std::size_t i = 0; i < exp; ++i) {
            if (r > opts_.cap / std::max<std::size_t>(base, 1) + 1)
                throw Error(ErrorCode::OracleCap, "strategy space exceeds the oracle cap");
            r *= base;
        }
        return r;
    }

    std::shared_ptr<const HistIndex> window(const History& rho, int depth) {
        auto idx = std::make_shared<HistIndex>();
        std::vector<History> layer{rho};
        for (int d = 0; d < depth; ++d) {
            std::vector<History> next;
            for (const auto& h : layer) {
                idx->emplace(h, static_cast<int>(idx->size()));
                if (d + 1 < depth)
                    for (int s : g_.successors(h.back())) {
                        History e = h;
                        e.push_back(s);
                        next.push_back(std::move(e));
                    }
            }
            layer = std::move(next);
        }
        return idx;
    }

    Rat quantify(const Formula& f, const Env& env, const History& rho, bool par) {
        const Formula& body = f->kids[0];
        const std::size_t m = g_.actions.size();
        std::shared_ptr<const HistIndex> idx;
        std::size_t slots;
        if (opts_.mode == OracleMode::MemorylessApprox) {
            slots = g_.states.size();
        } else {
            int d = tdepth(body);
            if (opts_.mode == OracleMode::HorizonTree) {
                if (opts_.horizon < d)
                    throw Error(ErrorCode::DepthInsufficient,
                                "strategy horizon " + std::to_string(opts_.horizon) + " below temporal depth " +
                                    std::to_string(d));
                d = opts_.horizon;
            }
            idx = window(rho, d);
            slots = idx->size();
        }
        const std::uint64_t total = power(m, slots);
        count(total);

        auto make = [&](std::uint64_t k) -> std::shared_ptr<const IStrat> {
            std::vector<int> choice(slots);
            for (std::size_t i = 0; i < slots; ++i) {
                choice[i] = static_cast<int>(k % m);
                k /= m;
            }
            if (idx) {
                auto s = std::make_shared<Windowed>();
                s->index = idx;
                s->choice = std::move(choice);
                return s;
            }
            auto s = std::make_shared<Positional>();
            s->choice = std::move(choice);
            return s;
        };

        if (!par) {
            Rat best(0);
            for (std::uint64_t k = 0; k < total; ++k) {
                Env e = env;
                e[f->name] = make(k);
                best = max(best, state(body, e, rho, false));
                if (best == Rat(1)) break;
            }
            return best;
        }

        Rat best(0);
        std::exception_ptr failure;
        std::atomic<bool> done{false};
        std::mutex mu;
#ifdef SLFMC_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
        for (std::int64_t k = 0; k < static_cast<std::int64_t>(total); ++k) {
            if (done.load(std::memory_order_relaxed)) continue;
            try {
                Env e = env;
                e[f->name] = make(static_cast<std::uint64_t>(k));
                Rat v = state(body, e, rho, false);
                std::lock_guard<std::mutex> lock(mu);
                best = max(best, v);
                if (best == Rat(1)) done = true;
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!failure) failure = std::current_exception();
                done = true;
            }
        }
        if (failure) std::rethrow_exception(failure);
        return best;
    }

    std::vector<std::vector<int>> joint_choices(const Env& env, const History& h) {
        const std::size_t n = g_.agents.size();
        std::vector<std::vector<int>> choices(n);
        for (std::size_t i = 0; i < n; ++i) {
            auto it = env.find(g_.agents[i]);
            if (it != env.end()) {
                choices[i] = {it->second->act(h)};
            } else {
                for (std::size_t a = 0; a < g_.actions.size(); ++a) choices[i].push_back(static_cast<int>(a));
            }
        }
        return choices;
    }

    std::vector<int> consistent_successors(const Env& env, const History& h) {
        auto choices = joint_choices(env, h);
        const std::size_t n = choices.size();
        std::set<int> out;
        std::vector<std::size_t> idx(n, 0);
        std::vector<int> acts(n);
        while (true) {
            for (std::size_t i = 0; i < n; ++i) acts[i] = choices[i][idx[i]];
            out.insert(g_.step(h.back(), acts));
            std::size_t k = n;
            bool carry = true;
            while (carry && k > 0) {
                --k;
                if (++idx[k] < choices[k].size()) carry = false;
                else idx[k] = 0;
            }
            if (carry) break;
        }
        return {out.begin(), out.end()};
    }

    Rat all_paths_finite(const Formula& f, const Env& env, const History& rho) {
        const Formula& psi = f->kids[0];
        const int h = tdepth(psi);
        std::vector<History> plays{rho};
        for (int step = 0; step < h; ++step) {
            std::vector<History> next;
            for (const auto& p : plays)
                for (int s : consistent_successors(env, p)) {
                    History e = p;
                    e.push_back(s);
                    next.push_back(std::move(e));
                }
            plays = std::move(next);
        }
        Rat worst(1);
        for (const auto& play : plays) {
            worst = min(worst, path(psi, env, play, rho.size() - 1));
            if (worst == Rat(0)) break;
        }
        return worst;
    }

    Rat path(const Formula& f, const Env& env, const History& play, std::size_t i) {
        switch (f->op) {
            case Op::Next: return path(f->kids[0], env, play, i + 1);
            case Op::Until: throw Error(ErrorCode::ModeMismatch, "exact evaluation needs an X-bounded formula");
            case Op::Func: {
                if (is_state_formula(f)) break;
                std::vector<Rat> args;
                for (const auto& k : f->kids) {
                    args.push_back(path(k, env, play, i));
                    if (is_min(f) && args.back() == Rat(0)) return Rat(0);
                    if (is_max(f) && args.back() == Rat(1)) return Rat(1);
                }
                return apply_func(*f->func, args);
            }
            default: break;
        }
        return state(f, env, History(play.begin(), play.begin() + static_cast<std::ptrdiff_t>(i) + 1), false);
    }

    // Memoryless approximation: infimum over bounded lassos of consistent plays.
    Rat all_paths_lasso(const Formula& f, const Env& env, const History& rho) {
        const Formula& psi = f->kids[0];
        std::vector<Formula> subs;
        Formula skeleton = abstract_states(psi, subs);
        const int bound = opts_.lasso_bound > 0 ? opts_.lasso_bound : static_cast<int>(g_.states.size()) + 1;
        Rat worst(1);
        History path_states{rho.back()};
        std::map<std::pair<std::size_t, std::size_t>, Rat> cache;  // (sub, position) -> value
        std::vector<History> histories{rho};

        std::function<void()> dfs = [&]() {
            if (worst == Rat(0)) return;
            const History& cur = histories.back();
            for (int s : consistent_successors(env, cur)) {
                for (std::size_t j = 0; j < path_states.size(); ++j) {
                    if (path_states[j] != s) continue;
                    LassoWord w;
                    for (std::size_t k = 0; k < subs.size(); ++k) w.aps.push_back("#" + std::to_string(k));
                    for (std::size_t pos = 0; pos < path_states.size(); ++pos) {
                        std::vector<Rat> row;
                        for (std::size_t k = 0; k < subs.size(); ++k) {
                            auto key = std::make_pair(k, pos);
                            auto it = cache.find(key);
                            if (it == cache.end()) it = cache.emplace(key, state(subs[k], env, histories[pos], false)).first;
                            row.push_back(it->second);
                        }
                        (pos < j ? w.prefix : w.loop).push_back(std::move(row));
                    }
                    worst = min(worst, eval_ltlf_lasso(skeleton, w, 0));
                }
                if (static_cast<int>(path_states.size()) < bound) {
                    History ext = cur;
                    ext.push_back(s);
                    histories.push_back(std::move(ext));
                    path_states.push_back(s);
                    dfs();
                    path_states.pop_back();
                    histories.pop_back();
                    for (auto it = cache.begin(); it != cache.end();)
                        it = it->first.second >= path_states.size() ? cache.erase(it) : std::next(it);
                }
            }
        };
        dfs();
        return worst;
    }

    // Replaces maximal state subformulas of a path formula by fresh atoms "#k".
    Formula abstract_states(const Formula& f, std::vector<Formula>& subs) {
        if (f->op == Op::Next || f->op == Op::Until || (f->op == Op::Func && !is_state_formula(f))) {
            auto n = std::make_shared<Node>(*f);
            for (auto& k : n->kids) k = abstract_states(k, subs);
            return n;
        }
        for (std::size_t k = 0; k < subs.size(); ++k)
            if (structurally_equal(subs[k], f)) return fb::atom("#" + std::to_string(k));
        subs.push_back(f);
        return fb::atom("#" + std::to_string(subs.size() - 1));
    }
};

}  // namespace

OracleResult eval_sl(const Formula& phi, const Wcgs& g, const Assignment& chi, const History& rho,
                     const OracleOptions& opts) {
    if (!g.valid_history(rho)) throw Error(ErrorCode::Schema, "history is not a path of the game");
    if (!is_state_formula(phi)) throw Error(ErrorCode::NotInFragment, "expected a state formula");
    if (opts.mode != OracleMode::MemorylessApprox && !is_x_bounded(phi))
        throw Error(ErrorCode::ModeMismatch, "exact evaluation needs an X-bounded formula; use the memoryless mode");
    OracleOptions o = opts;
    o.cap = cap_from_env(opts.cap);
    SlEval ev(g, o);
    Env env;
    for (const auto& [k, s] : chi.entries()) env[k] = std::make_shared<Wrapped>(s);
    OracleResult r;
    r.value = ev.state(phi, env, rho, opts.parallel);
    r.exact = opts.mode != OracleMode::MemorylessApprox;
    r.enumerated = ev.enumerated.load();
    return r;
}

OracleResult eval_sl(const Formula& phi, const Wcgs& g, const OracleOptions& opts) {
    return eval_sl(phi, g, Assignment{}, History{g.initial}, opts);
}

}  // namespace slfmc
