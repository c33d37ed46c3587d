#include "slfmc/translation.hpp"

#include "slfmc/error.hpp"

#include <json.hpp>

#include <algorithm>

namespace slfmc {

StrategyAtoms::StrategyAtoms(const Wcgs& g, const std::vector<std::string>& taken) : taken_(taken) {
    taken_.insert(taken_.end(), g.aps.begin(), g.aps.end());
}

const std::string& StrategyAtoms::prop(const std::string& var, const std::string& action) {
    auto key = std::make_pair(var, action);
    auto it = names_.find(key);
    if (it != names_.end()) return it->second;
    std::string name = fresh_name("st_" + var + "_" + action, taken_);
    taken_.push_back(name);
    return names_.emplace(key, name).first->second;
}

Formula phi_str(const std::vector<std::string>& action_props) {
    std::vector<Formula> options;
    for (std::size_t i = 0; i < action_props.size(); ++i) {
        std::vector<Formula> parts{fb::atom(action_props[i])};
        for (std::size_t j = 0; j < action_props.size(); ++j)
            if (j != i) parts.push_back(fb::neg(fb::atom(action_props[j])));
        options.push_back(fb::min(std::move(parts)));
    }
    return fb::qctl_all(fb::always(fb::max(std::move(options))));
}

Formula psi_out(const Wcgs& g, const KripkeOfGame& k, const BindingContext& ctx, StrategyAtoms& atoms) {
    std::vector<Formula> per_state;
    for (std::size_t v = 0; v < g.states.size(); ++v) {
        std::vector<Formula> moves;
        for (int c = 0; c < g.num_joint(); ++c) {
            auto joint = g.decode_joint(c);
            std::vector<Formula> parts;
            for (const auto& [agent, var] : ctx) {
                int a = g.agent_index(agent);
                parts.push_back(fb::atom(atoms.prop(var, g.actions[joint[a]])));
            }
            int next = g.delta[v][c];
            parts.push_back(fb::next(fb::atom(k.state_props[next])));
            moves.push_back(fb::min(std::move(parts)));
        }
        per_state.push_back(fb::implies(fb::atom(k.state_props[v]), fb::max(std::move(moves))));
    }
    return fb::always(fb::min(std::move(per_state)));
}

namespace {

class Translator {
public:
    Translator(const Wcgs& g, const KripkeOfGame& k, bool closed) : g_(g), k_(k), atoms_(g, k.kripke.aps), closed_(closed) {}

    Formula state(const Formula& f, const BindingContext& ctx, std::vector<std::string>& quantified) {
        switch (f->op) {
            case Op::Atom: return f;
            case Op::Func: {
                std::vector<Formula> kids;
                for (const auto& k : f->kids) kids.push_back(state(k, ctx, quantified));
                return fb::func(*f->func, std::move(kids));
            }
            case Op::Bind: {
                if (closed_ && std::find(quantified.begin(), quantified.end(), f->var) == quantified.end())
                    throw Error(ErrorCode::UnboundVariable, "variable '" + f->var + "' is bound to agent '" + f->name +
                                                                "' but never quantified");
                g_.agent_index(f->name);
                BindingContext next = ctx;
                next[f->name] = f->var;
                return state(f->kids[0], next, quantified);
            }
            case Op::ExistsStrat: {
                std::vector<std::string> props;
                for (const auto& act : g_.actions) props.push_back(atoms_.prop(f->name, act));
                quantified.push_back(f->name);
                Formula body = fb::min({phi_str(props), state(f->kids[0], ctx, quantified)});
                quantified.pop_back();
                for (auto it = props.rbegin(); it != props.rend(); ++it) body = fb::exists_prop(*it, body);
                return body;
            }
            case Op::PathA:
                return fb::qctl_all(fb::implies(psi_out(g_, k_, ctx, atoms_), path(f->kids[0], ctx, quantified)));
            default: throw Error(ErrorCode::NotInFragment, "not an SL state formula: " + print(f));
        }
    }

    Formula path(const Formula& f, const BindingContext& ctx, std::vector<std::string>& quantified) {
        switch (f->op) {
            case Op::Next: return fb::next(path(f->kids[0], ctx, quantified));
            case Op::Until: return fb::until(path(f->kids[0], ctx, quantified), path(f->kids[1], ctx, quantified));
            case Op::Func: {
                std::vector<Formula> kids;
                for (const auto& k : f->kids) kids.push_back(path(k, ctx, quantified));
                return fb::func(*f->func, std::move(kids));
            }
            default: return state(f, ctx, quantified);
        }
    }

    const StrategyAtoms& atoms() const { return atoms_; }

private:
    const Wcgs& g_;
    const KripkeOfGame& k_;
    StrategyAtoms atoms_;
    bool closed_;
};

}  // namespace

Translation translate(const Formula& phi, const Wcgs& g, const BindingContext& ctx, bool require_closed) {
    validate(phi, Dialect::SL);
    Translation out;
    out.model = game_to_kripke(g);
    for (const auto& [agent, var] : ctx) g.agent_index(agent);
    Translator tr(g, out.model, require_closed);
    std::vector<std::string> quantified;
    for (const auto& [agent, var] : ctx) quantified.push_back(var);
    out.formula = tr.state(phi, ctx, quantified);
    out.strategy_atoms = tr.atoms().all();
    return out;
}

std::string Translation::manifest_json(const Wcgs& g) const {
    nlohmann::json j;
    nlohmann::json sp = nlohmann::json::object();
    for (std::size_t v = 0; v < g.states.size(); ++v) sp[g.states[v]] = model.state_props[v];
    j["state_props"] = sp;
    nlohmann::json sa = nlohmann::json::array();
    for (const auto& [key, prop] : strategy_atoms) sa.push_back({{"var", key.first}, {"action", key.second}, {"prop", prop}});
    j["strategy_atoms"] = sa;
    j["formula"] = print(formula);
    return j.dump(2);
}

ReduxReport check_redux(const Formula& phi, const Wcgs& g, int d, std::uint64_t cap) {
    if (cap == 0) cap = cap_from_env(10'000'000);
    auto td = temporal_depth(phi);
    if (!td) throw Error(ErrorCode::NotInFragment, "check_redux needs an X-bounded formula");
    ReduxReport rep;
    Translation tr = translate(phi, g);
    rep.translated = tr.formula;
    rep.tree_depth = d + *td;

    OracleOptions so;
    so.cap = cap;
    TreeOptions to;
    to.mode = TreeMode::Window;
    to.cap = cap;

    std::vector<History> layer{{g.initial}};
    for (int step = 0; step <= d; ++step) {
        // Window relabeling covers the whole subtree, so keep it exactly td deep.
        FiniteTree tree = unfold_wks(tr.model.kripke, step + *td);
        std::vector<History> next;
        for (const auto& rho : layer) {
            ReduxRow row;
            row.rho = rho;
            row.sl_value = eval_sl(phi, g, Assignment{}, rho, so).value;
            auto node = tree.find(tr.model.to_kripke(rho));
            if (!node) throw Error(ErrorCode::DepthInsufficient, "history missing from the unfolding");
            row.qctl_value = eval_bqctl(tr.formula, tree, *node, to).value;
            row.equal = row.sl_value == row.qctl_value;
            rep.all_equal = rep.all_equal && row.equal;
            rep.rows.push_back(row);
            if (step < d)
                for (int s : g.successors(rho.back())) {
                    History h = rho;
                    h.push_back(s);
                    next.push_back(std::move(h));
                }
        }
        layer = std::move(next);
    }
    return rep;
}

}  // namespace slfmc
