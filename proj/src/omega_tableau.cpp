#include "slfmc/error.hpp"
#include "slfmc/omega.hpp"

#include <algorithm>
#include <deque>

namespace slfmc {

namespace {

struct Closure {
    std::vector<Formula> nodes;  // children before parents; root last
    std::vector<std::vector<int>> kids;
    std::vector<ValueSet> values;
    std::vector<int> free;  // atoms, X and U nodes: guessed per state
    std::vector<int> nexts;
    std::vector<int> untils;
};

Closure make_closure(const Formula& psi, const std::map<std::string, ValueSet>& atoms_values) {
    Closure c;
    std::map<Formula, int, FormulaLess> index;
    for (const auto& f : subformulas_postorder(psi)) {
        switch (f->op) {
            case Op::Atom:
            case Op::Func:
            case Op::Next:
            case Op::Until: break;
            default: throw Error(ErrorCode::NotInFragment, "not a path formula over atoms: " + print(f));
        }
        int id = static_cast<int>(c.nodes.size());
        index.emplace(f, id);
        c.nodes.push_back(f);
        std::vector<int> ks;
        std::vector<ValueSet> kv;
        for (const auto& k : f->kids) {
            ks.push_back(index.at(k));
            kv.push_back(c.values[ks.back()]);
        }
        c.kids.push_back(ks);
        switch (f->op) {
            case Op::Atom: {
                auto it = atoms_values.find(f->name);
                if (it == atoms_values.end() || it->second.empty())
                    throw Error(ErrorCode::EmptyAlphabet, "no values for atom '" + f->name + "'");
                c.values.push_back(make_value_set(it->second));
                c.free.push_back(id);
                break;
            }
            case Op::Func: c.values.push_back(func_image(*f->func, kv)); break;
            case Op::Next:
                c.values.push_back(kv[0]);
                c.free.push_back(id);
                c.nexts.push_back(id);
                break;
            default:
                c.values.push_back(unite(kv[0], kv[1]));
                c.free.push_back(id);
                c.untils.push_back(id);
                break;
        }
    }
    return c;
}

}  // namespace

std::map<std::string, ValueSet> uniform_atom_values(const Formula& psi, const ValueSet& base) {
    std::map<std::string, ValueSet> m;
    for (const auto& a : atoms_of(psi)) m[a] = base;
    return m;
}

Ngbw ltlf_to_ngbw(const Formula& psi, const std::map<std::string, ValueSet>& atoms_values, const Predicate& p) {
    Alphabet alphabet = Alphabet::from_map(atoms_values);
    Closure c = make_closure(psi, atoms_values);
    const std::size_t n = c.nodes.size();
    const std::uint64_t cap = cap_from_env(2'000'000);

    // Every locally consistent valuation of the closure.
    std::uint64_t combos = 1;
    for (int f : c.free) {
        combos *= c.values[f].size();
        if (combos > cap) throw Error(ErrorCode::ResourceCap, "tableau exceeds " + std::to_string(cap) + " valuations");
    }
    std::vector<std::vector<Rat>> vals;
    std::vector<Rat> cur(n);
    for (std::uint64_t code = 0; code < combos; ++code) {
        std::uint64_t rest = code;
        for (std::size_t k = c.free.size(); k-- > 0;) {
            const auto& vs = c.values[c.free[k]];
            cur[c.free[k]] = vs[rest % vs.size()];
            rest /= vs.size();
        }
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            const auto& f = c.nodes[i];
            if (f->op == Op::Func) {
                std::vector<Rat> args;
                for (int k : c.kids[i]) args.push_back(cur[k]);
                cur[i] = apply_func(*f->func, args);
            } else if (f->op == Op::Until) {
                const Rat& a = cur[c.kids[i][0]];
                const Rat& b = cur[c.kids[i][1]];
                // u = max(b, min(a, u')) for some u'
                ok = cur[i] == b || (b < cur[i] && cur[i] <= a);
            }
        }
        if (ok) vals.push_back(cur);
    }

    // A state is the obligation a valuation inherits from its predecessor:
    // the values its X arguments and Untils must take. Valuations sharing an
    // obligation are folded into one state, so the letter is read on the way
    // out. Fulfilment bits of the Untils ride along for the acceptance sets.
    auto key_of = [&](const std::vector<Rat>& v) {
        std::vector<Rat> key;
        for (int x : c.nexts) key.push_back(v[c.kids[x][0]]);
        for (int u : c.untils) key.push_back(v[u]);
        return key;
    };
    std::map<std::vector<Rat>, int> key_ids;
    std::vector<std::vector<Rat>> keys;
    std::vector<std::vector<int>> members;
    for (std::size_t s = 0; s < vals.size(); ++s) {
        auto k = key_of(vals[s]);
        auto [it, fresh] = key_ids.emplace(k, static_cast<int>(keys.size()));
        if (fresh) {
            keys.push_back(k);
            members.emplace_back();
        }
        members[it->second].push_back(static_cast<int>(s));
    }
    auto next_keys = [&](const std::vector<Rat>& v) {
        std::vector<int> out;
        for (std::size_t id = 0; id < keys.size(); ++id) {
            const auto& key = keys[id];
            bool ok = true;
            std::size_t k = 0;
            for (int x : c.nexts) ok = ok && v[x] == key[k++];
            for (int u : c.untils) {
                if (!ok) break;
                const Rat& a = v[c.kids[u][0]];
                const Rat& b = v[c.kids[u][1]];
                ok = v[u] == max(b, min(a, key[k++]));
            }
            if (ok) out.push_back(static_cast<int>(id));
        }
        return out;
    };

    std::vector<std::pair<int, std::size_t>> atom_cols;  // closure node, alphabet column
    for (std::size_t i = 0; i < n; ++i) {
        if (c.nodes[i]->op != Op::Atom) continue;
        auto it = std::find(alphabet.atoms.begin(), alphabet.atoms.end(), c.nodes[i]->name);
        atom_cols.push_back({static_cast<int>(i), static_cast<std::size_t>(it - alphabet.atoms.begin())});
    }
    std::map<std::vector<Rat>, std::vector<int>> letters_by_proj;
    for (std::size_t l = 0; l < alphabet.size(); ++l) {
        auto d = alphabet.decode(l);
        std::vector<Rat> proj;
        for (const auto& [node, col] : atom_cols) proj.push_back(d[col]);
        letters_by_proj[proj].push_back(static_cast<int>(l));
    }

    // Per valuation: letters, fulfilment bits and successor obligations.
    struct Move {
        const std::vector<int>* letters;
        int bits;
        std::vector<int> targets;
    };
    std::vector<Move> moves(vals.size());
    for (std::size_t s = 0; s < vals.size(); ++s) {
        const auto& v = vals[s];
        std::vector<Rat> proj;
        for (const auto& [node, col] : atom_cols) proj.push_back(v[node]);
        int bits = 0;
        for (std::size_t u = 0; u < c.untils.size(); ++u)
            if (v[c.untils[u]] == v[c.kids[c.untils[u]][1]]) bits |= 1 << u;
        moves[s] = {&letters_by_proj[proj], bits, next_keys(v)};
    }
    if (c.untils.size() > 20) throw Error(ErrorCode::ResourceCap, "too many Until subformulas");

    // State 0 is the start, then (obligation, bits) pairs in discovery order.
    Ngbw out;
    out.alphabet = alphabet;
    std::map<std::pair<int, int>, int> ids;
    std::vector<std::pair<int, int>> order{{-1, 0}};
    std::deque<int> todo{0};
    out.num_states = 1;
    out.initial = {0};
    auto visit = [&](int key, int bits) {
        auto [it, fresh] = ids.emplace(std::make_pair(key, bits), out.num_states);
        if (fresh) {
            ++out.num_states;
            order.push_back({key, bits});
            todo.push_back(it->second);
        }
        return it->second;
    };
    std::vector<std::vector<std::vector<int>>> delta;
    while (!todo.empty()) {
        int me = todo.front();
        todo.pop_front();
        if (static_cast<int>(delta.size()) <= me) delta.resize(me + 1);
        delta[me].assign(alphabet.size(), {});
        int key = order[me].first;
        auto step = [&](int s) {
            for (int k : moves[s].targets) {
                int t = visit(k, moves[s].bits);
                for (int l : *moves[s].letters) delta[me][l].push_back(t);
            }
        };
        if (key < 0) {
            for (std::size_t s = 0; s < vals.size(); ++s)
                if (p.contains(vals[s][n - 1])) step(static_cast<int>(s));
        } else {
            for (int s : members[key]) step(s);
        }
    }
    delta.resize(out.num_states, std::vector<std::vector<int>>(alphabet.size()));
    for (auto& row : delta)
        for (auto& succ : row) {
            std::sort(succ.begin(), succ.end());
            succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
        }
    out.delta = std::move(delta);
    out.acc_sets.assign(c.untils.size(), std::vector<char>(out.num_states, 0));
    out.names.resize(out.num_states);
    out.names[0] = "start";
    for (int me = 1; me < out.num_states; ++me) {
        auto [key, bits] = order[me];
        std::string name;
        std::size_t k = 0;
        for (int x : c.nexts) {
            if (!name.empty()) name += ", ";
            name += print(c.nodes[c.kids[x][0]]) + "=" + keys[key][k++].str();
        }
        for (std::size_t u = 0; u < c.untils.size(); ++u) {
            out.acc_sets[u][me] = (bits >> u) & 1;
            if (!name.empty()) name += ", ";
            name += print(c.nodes[c.untils[u]]) + "=" + keys[key][k++].str() + ((bits >> u) & 1 ? "!" : "");
        }
        out.names[me] = name.empty() ? "*" : name;
    }
    return out;
}

ThresholdAutomata threshold_automata(const Formula& psi, const std::map<std::string, ValueSet>& atoms_values,
                                     const Rat& v) {
    return {ltlf_to_ngbw(psi, atoms_values, Predicate::less(v)), ltlf_to_ngbw(psi, atoms_values, Predicate::point(v)),
            ltlf_to_ngbw(psi, atoms_values, Predicate::greater(v))};
}

}  // namespace slfmc
