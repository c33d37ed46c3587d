#include "slfmc/sl1g.hpp"

#include "slfmc/error.hpp"
#include "slfmc/oracle.hpp"
#include "slfmc/value_set.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <set>

namespace slfmc {

using nlohmann::json;

std::vector<PrefixEntry> normalize_prefix(const std::vector<QuantEntry>& quants,
                                          const std::vector<std::pair<std::string, std::string>>& bindings) {
    std::set<std::string> used;
    for (const auto& [agent, var] : bindings) used.insert(var);
    std::vector<std::string> names;
    for (const auto& q : quants) names.push_back(q.var);
    for (const auto& var : used)
        if (std::find(names.begin(), names.end(), var) == names.end())
            throw Error(ErrorCode::OpenCombination, "variable '" + var + "' is bound but not quantified");

    std::vector<PrefixEntry> out;
    for (const auto& q : quants) {
        // Unbound variables cannot influence the play.
        if (!bindings.empty() && !used.count(q.var)) continue;
        while ((out.size() % 2 == 0) != q.existential) {
            std::string d = fresh_name("dummy", names);
            names.push_back(d);
            out.push_back({d, out.size() % 2 == 0, true});
        }
        out.push_back({q.var, q.existential, false});
    }
    if (out.empty()) {
        std::string d = fresh_name("dummy", names);
        out.push_back({d, true, true});
    }
    return out;
}

int Cmpg::num_joint() const {
    int n = 1;
    for (int a : num_actions) n *= a;
    return n;
}

std::vector<int> Cmpg::decode(int joint) const {
    std::vector<int> acts(num_actions.size());
    for (std::size_t i = num_actions.size(); i-- > 0;) {
        acts[i] = joint % num_actions[i];
        joint /= num_actions[i];
    }
    return acts;
}

std::vector<std::size_t> state_letters(const Wcgs& g, const Alphabet& a) {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < g.states.size(); ++v) {
        std::vector<Rat> vals;
        for (const auto& atom : a.atoms) vals.push_back(g.weight(static_cast<int>(v), atom));
        out.push_back(a.encode(vals));
    }
    return out;
}

Cmpg build_cmpg(const Wcgs& g, const std::vector<PrefixEntry>& prefix,
                const std::vector<std::pair<std::string, std::string>>& bindings, const Dpw& d) {
    Cmpg c;
    c.players = prefix;
    c.agents.resize(prefix.size());
    std::vector<int> owner(g.agents.size(), -1);
    for (const auto& [agent, var] : bindings) {
        int a = g.agent_index(agent);
        auto it = std::find_if(prefix.begin(), prefix.end(), [&](const PrefixEntry& e) { return e.var == var; });
        if (it == prefix.end() || it->dummy)
            throw Error(ErrorCode::OpenCombination, "variable '" + var + "' is not in the prefix");
        if (owner[a] >= 0) throw Error(ErrorCode::OpenCombination, "agent '" + agent + "' bound twice");
        owner[a] = static_cast<int>(it - prefix.begin());
        c.agents[owner[a]].push_back(a);
    }
    for (std::size_t a = 0; a < owner.size(); ++a)
        if (owner[a] < 0) throw Error(ErrorCode::OpenCombination, "agent '" + g.agents[a] + "' is not bound");
    for (const auto& e : prefix) c.num_actions.push_back(e.dummy ? 1 : static_cast<int>(g.actions.size()));

    auto letters = state_letters(g, d.alphabet);
    c.num_game_states = static_cast<int>(g.states.size());
    c.num_dpw_states = d.num_states;
    c.initial = c.state(g.initial, d.initial);
    int joints = c.num_joint();
    std::uint64_t cap = cap_from_env(1'000'000);
    std::uint64_t size = static_cast<std::uint64_t>(c.num_game_states) * c.num_dpw_states * joints;
    if (size > cap) throw Error(ErrorCode::ResourceCap, "product game needs " + std::to_string(size) + " edges");
    c.priority.resize(static_cast<std::size_t>(c.num_game_states) * c.num_dpw_states);
    c.delta.resize(c.priority.size());
    std::vector<int> acts(g.agents.size());
    for (int v = 0; v < c.num_game_states; ++v)
        for (int q = 0; q < c.num_dpw_states; ++q) {
            int s = c.state(v, q);
            c.priority[s] = d.priority[q];
            int q2 = d.delta[q][letters[v]];
            c.delta[s].resize(joints);
            for (int j = 0; j < joints; ++j) {
                auto picks = c.decode(j);
                for (std::size_t p = 0; p < picks.size(); ++p)
                    for (int a : c.agents[p]) acts[a] = picks[p];
                c.delta[s][j] = c.state(g.step(v, acts), q2);
            }
        }
    return c;
}

CmpgSolution solve_cmpg(const Cmpg& c, const Wcgs& g, const Dpw& d) {
    CmpgSolution out;
    ParityGame& pg = out.game;
    int players = static_cast<int>(c.players.size());
    auto owner_of = [&](int i) { return c.players[i].existential ? kEven : kOdd; };
    // Round-start vertices first, so vertex s is product state s.
    for (int s = 0; s < c.size(); ++s)
        pg.add_vertex(owner_of(0), c.priority[s], std::to_string(c.game_state(s)) + "," + std::to_string(c.dpw_state(s)));
    std::vector<std::vector<int>> first_edges(c.size());  // target per action of player 0
    for (int s = 0; s < c.size(); ++s) {
        // Vertex for the picks made so far; `partial` is their mixed-radix code.
        std::function<void(int, int, int)> expand = [&](int vertex, int player, int partial) {
            for (int a = 0; a < c.num_actions[player]; ++a) {
                int code = partial * c.num_actions[player] + a;
                int target;
                if (player + 1 == players) {
                    target = c.delta[s][code];
                } else {
                    target = pg.add_vertex(owner_of(player + 1), 0);
                    expand(target, player + 1, code);
                }
                pg.add_edge(vertex, target);
                if (player == 0) first_edges[s].push_back(target);
            }
        };
        expand(s, 0, 0);
    }
    out.game_vertices = pg.size();
    auto sol = solve(pg);
    out.existential_wins = sol.winner[c.initial] == kEven;

    const auto letters = state_letters(g, d.alphabet);
    std::vector<std::vector<int>> update(c.num_dpw_states), output(c.num_dpw_states);
    for (int q = 0; q < c.num_dpw_states; ++q)
        for (int v = 0; v < c.num_game_states; ++v) {
            int s = c.state(v, q);
            update[q].push_back(d.delta[q][letters[v]]);
            int act = 0;
            if (sol.winner[s] == kEven && sol.strategy[s] >= 0) {
                const auto& e = first_edges[s];
                act = static_cast<int>(std::find(e.begin(), e.end(), sol.strategy[s]) - e.begin());
            }
            output[q].push_back(act);
        }
    out.witness.var = c.players[0].dummy ? std::string() : c.players[0].var;
    out.witness.strategy = Strategy::make_mealy(d.initial, std::move(update), std::move(output));
    return out;
}

namespace {

bool is_temporal_free(const Formula& f) {
    if (f->op == Op::Next || f->op == Op::Until) return false;
    if (f->op != Op::Atom && f->op != Op::Func) return false;
    return std::all_of(f->kids.begin(), f->kids.end(), is_temporal_free);
}

bool is_ltl(const Formula& f) {
    if (f->op != Op::Atom && f->op != Op::Func && f->op != Op::Next && f->op != Op::Until) return false;
    return std::all_of(f->kids.begin(), f->kids.end(), is_ltl);
}

void collect_atoms(const Formula& f, std::set<std::string>& out) {
    if (f->op == Op::Atom) out.insert(f->name);
    for (const auto& k : f->kids) collect_atoms(k, out);
}

void maximal_sentences(const Formula& f, const std::vector<std::string>& agents, std::vector<Formula>& out) {
    if (match_sentence(f, agents)) {
        if (std::none_of(out.begin(), out.end(), [&](const Formula& o) { return structurally_equal(o, f); }))
            out.push_back(f);
        return;
    }
    for (const auto& k : f->kids) maximal_sentences(k, agents, out);
}

class Checker {
public:
    Checker(const Sl1gOptions& o, Sl1gResult& r) : opts_(o), report_(r) {}

    // Replaces every maximal sentence of `f` by a fresh proposition that
    // carries its value at each state.
    Formula flatten(const Formula& f, Wcgs& g, bool record) {
        std::vector<Formula> inner;
        maximal_sentences(f, g.agents, inner);
        Formula out = f;
        for (const auto& s : inner) {
            std::vector<Rat> vals;
            for (std::size_t v = 0; v < g.states.size(); ++v) {
                Wcgs h = g;
                h.initial = static_cast<int>(v);
                vals.push_back(value(s, h, false));
            }
            std::set<std::string> taken(g.aps.begin(), g.aps.end());
            collect_atoms(out, taken);
            std::string name = fresh_name("sent", {taken.begin(), taken.end()});
            g = g.with_prop(name, vals);
            out = replace_subformula(out, s, fb::atom(name));
            if (record) report_.inner.push_back({name, print(s), vals});
        }
        return out;
    }

    Rat value(const Formula& f, const Wcgs& g0, bool outer) {
        Wcgs g = g0;
        if (auto s = match_sentence(f, g.agents)) return sentence(*s, g, outer);
        Formula flat = flatten(f, g, outer);
        if (!is_temporal_free(flat)) throw Error(ErrorCode::NotInFragment, "temporal operator outside a goal");
        LassoWord w;
        w.aps = g.aps;
        w.loop = {g.labels[g.initial]};
        return eval_ltlf_lasso(flat, w);
    }

private:
    Rat sentence(const Sentence& s, Wcgs& g, bool outer) {
        Formula goal = flatten(s.goal_negated ? fb::neg(s.goal) : s.goal, g, outer);
        std::set<std::string> atoms;
        collect_atoms(goal, atoms);
        std::map<std::string, ValueSet> atom_values;
        for (const auto& a : atoms) {
            std::vector<Rat> vs;
            for (std::size_t v = 0; v < g.states.size(); ++v) vs.push_back(g.weight(static_cast<int>(v), a));
            atom_values[a] = make_value_set(vs);
        }
        auto prefix = normalize_prefix(s.quants, s.bindings);
        ValueSet candidates = value_set(goal, atom_values);
        std::optional<Rat> best;
        for (auto it = candidates.rbegin(); it != candidates.rend(); ++it) {
            Nbw nbw = degeneralize(ltlf_to_ngbw(goal, atom_values, Predicate::at_least(*it)));
            Dpw dpw = determinize(nbw, opts_.dpw_cap);
            Cmpg c = build_cmpg(g, prefix, s.bindings, dpw);
            CmpgSolution sol = solve_cmpg(c, g, dpw);
            if (outer) {
                report_.runs.push_back({*it, sol.existential_wins, dpw.num_states, c.size(), sol.game_vertices});
                if (sol.existential_wins && !best && !c.players[0].dummy) {
                    report_.has_witness = true;
                    report_.witness = sol.witness;
                }
            }
            if (sol.existential_wins && !best) best = *it;
            if (best && !(outer && opts_.all_thresholds)) break;
        }
        // The least candidate is always met.
        return best.value_or(candidates.front());
    }

    const Sl1gOptions& opts_;
    Sl1gResult& report_;
};

}  // namespace

Sl1gResult check_sl1g_report(const Formula& phi, const Wcgs& g, const Sl1gOptions& opts) {
    auto t0 = std::chrono::steady_clock::now();
    g.validate();
    Sl1gResult r;
    r.depth = sentence_depth(phi, g.agents);
    Checker ch(opts, r);
    r.value = ch.value(phi, g, true);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

Rat check_sl1g(const Formula& phi, const Wcgs& g) { return check_sl1g_report(phi, g).value; }

json Sl1gResult::telemetry_json() const {
    json runs_j = json::array();
    for (const auto& r : runs)
        runs_j.push_back({{"threshold", r.threshold.str()},
                          {"win", r.win},
                          {"dpw_states", r.dpw_states},
                          {"cmpg_states", r.cmpg_states},
                          {"game_vertices", r.game_vertices}});
    json inner_j = json::array();
    for (const auto& in : inner) {
        json vals = json::array();
        for (const auto& v : in.per_state) vals.push_back(v.str());
        inner_j.push_back({{"prop", in.prop}, {"sentence", in.sentence}, {"values", vals}});
    }
    return {{"depth", depth}, {"seconds", seconds}, {"thresholds", runs_j}, {"inner", inner_j}};
}

LassoWord play_lasso(const Wcgs& g, const std::vector<const Strategy*>& per_agent) {
    if (per_agent.size() != g.agents.size()) throw Error(ErrorCode::Schema, "one strategy per agent is required");
    for (const auto* s : per_agent)
        if (s->kind == Strategy::Kind::HorizonTree)
            throw Error(ErrorCode::StrategyDomain, "plays need finite-memory strategies");
    std::map<std::vector<int>, std::size_t> seen;
    std::vector<int> path;
    std::vector<int> key{g.initial};
    for (const auto* s : per_agent) key.push_back(s->kind == Strategy::Kind::Mealy ? s->memory_init : 0);
    while (!seen.count(key)) {
        seen[key] = path.size();
        int v = key[0];
        path.push_back(v);
        std::vector<int> acts(per_agent.size());
        std::vector<int> next{0};
        for (std::size_t i = 0; i < per_agent.size(); ++i) {
            const Strategy& s = *per_agent[i];
            if (s.kind == Strategy::Kind::Mealy) {
                acts[i] = s.output.at(key[i + 1]).at(v);
                next.push_back(s.update.at(key[i + 1]).at(v));
            } else {
                acts[i] = s.act({v});
                next.push_back(0);
            }
        }
        next[0] = g.step(v, acts);
        key = std::move(next);
    }
    std::size_t start = seen[key];
    LassoWord w;
    w.aps = g.aps;
    for (std::size_t i = 0; i < path.size(); ++i)
        (i < start ? w.prefix : w.loop).push_back(g.labels[path[i]]);
    return w;
}

Wcgs fix_agents(const Wcgs& g, const std::vector<int>& agents, const std::vector<Strategy>& profile, int free_agent) {
    if (agents.size() != g.agents.size() || profile.size() != agents.size())
        throw Error(ErrorCode::Schema, "the profile must give one strategy per agent");
    Wcgs h = g;
    if (free_agent >= 0) {
        h.agents = {g.agents[agents[free_agent]]};
    } else {
        h.agents = {fresh_name("fixed", g.agents)};
        h.actions = {"stay"};
    }
    int width = static_cast<int>(h.actions.size());
    for (std::size_t v = 0; v < g.states.size(); ++v) {
        std::vector<int> acts(g.agents.size());
        for (std::size_t i = 0; i < agents.size(); ++i) acts[agents[i]] = profile[i].act({static_cast<int>(v)});
        h.delta[v].assign(width, 0);
        for (int a = 0; a < width; ++a) {
            if (free_agent >= 0) acts[agents[free_agent]] = a;
            h.delta[v][a] = g.step(static_cast<int>(v), acts);
        }
    }
    return h;
}

NeReport check_ne_profile(const Wcgs& g, const concepts::Profile& p, const std::vector<Strategy>& profile) {
    for (const auto& s : profile)
        if (s.kind != Strategy::Kind::Memoryless) throw Error(ErrorCode::StrategyDomain, "profiles must be memoryless");
    std::vector<int> agents;
    for (const auto& a : p.agents) agents.push_back(g.agent_index(a));
    NeReport r;
    r.gap = Rat(0);
    for (std::size_t i = 0; i < agents.size(); ++i) {
        const Formula& goal = p.goals.at(i);
        if (!is_ltl(goal)) throw Error(ErrorCode::NotInFragment, "goals must be temporal formulas over propositions");
        Wcgs fixed = fix_agents(g, agents, profile, -1);
        Rat cur = check_sl1g(fb::exists_strat("z", fb::bind(fixed.agents[0], "z", fb::path_a(goal))), fixed);
        Wcgs dev = fix_agents(g, agents, profile, static_cast<int>(i));
        Rat best = check_sl1g(fb::exists_strat("y", fb::bind(dev.agents[0], "y", fb::path_a(goal))), dev);
        r.current.push_back(cur);
        r.best.push_back(best);
        if (cur < best && r.gap < best - cur) r.gap = best - cur;
    }
    r.verdict = r.gap == Rat(0);
    return r;
}

}  // namespace slfmc
