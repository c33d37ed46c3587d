#include "slfmc/error.hpp"
#include "slfmc/graph.hpp"
#include "slfmc/omega.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace slfmc {

using nlohmann::json;

Alphabet Alphabet::from_map(const std::map<std::string, ValueSet>& m) {
    Alphabet a;
    for (const auto& [atom, vals] : m) {
        if (vals.empty()) throw Error(ErrorCode::EmptyAlphabet, "atom '" + atom + "' has no values");
        a.atoms.push_back(atom);
        a.values.push_back(make_value_set(vals));
    }
    return a;
}

std::size_t Alphabet::size() const {
    std::size_t n = 1;
    for (const auto& v : values) n *= v.size();
    return n;
}

std::vector<Rat> Alphabet::decode(std::size_t letter) const {
    std::vector<Rat> out(atoms.size());
    for (std::size_t i = atoms.size(); i-- > 0;) {
        out[i] = values[i][letter % values[i].size()];
        letter /= values[i].size();
    }
    return out;
}

std::size_t Alphabet::encode(const std::vector<Rat>& vals) const {
    if (vals.size() != atoms.size()) throw Error(ErrorCode::AlphabetMismatch, "letter has the wrong number of atoms");
    std::size_t letter = 0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        auto it = std::lower_bound(values[i].begin(), values[i].end(), vals[i]);
        if (it == values[i].end() || *it != vals[i])
            throw Error(ErrorCode::AlphabetMismatch,
                        "value " + vals[i].str() + " of atom '" + atoms[i] + "' is outside its value set");
        letter = letter * values[i].size() + static_cast<std::size_t>(it - values[i].begin());
    }
    return letter;
}

std::string Alphabet::letter_str(std::size_t letter) const {
    auto vals = decode(letter);
    std::string s;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i) s += ",";
        s += atoms[i] + "=" + vals[i].str();
    }
    return s.empty() ? "-" : s;
}

LetterLasso to_letters(const Alphabet& a, const LassoWord& w) {
    if (w.loop.empty()) throw Error(ErrorCode::AlphabetMismatch, "lasso has an empty loop");
    std::vector<std::size_t> col;
    for (const auto& atom : a.atoms) {
        auto it = std::find(w.aps.begin(), w.aps.end(), atom);
        if (it == w.aps.end()) throw Error(ErrorCode::AlphabetMismatch, "lasso lacks atom '" + atom + "'");
        col.push_back(static_cast<std::size_t>(it - w.aps.begin()));
    }
    auto conv = [&](const std::vector<Rat>& row) {
        std::vector<Rat> vals;
        for (auto c : col) vals.push_back(row.at(c));
        return static_cast<int>(a.encode(vals));
    };
    LetterLasso out;
    for (const auto& r : w.prefix) out.prefix.push_back(conv(r));
    for (const auto& r : w.loop) out.loop.push_back(conv(r));
    return out;
}

std::size_t TransitionSystem::num_transitions() const {
    std::size_t n = 0;
    for (const auto& row : delta)
        for (const auto& succ : row) n += succ.size();
    return n;
}

Nbw degeneralize(const Ngbw& a) {
    Nbw out;
    out.alphabet = a.alphabet;
    const int k = static_cast<int>(a.acc_sets.size());
    if (k <= 1) {
        static_cast<TransitionSystem&>(out) = a;
        out.accepting = k == 0 ? std::vector<char>(a.num_states, 1) : a.acc_sets[0];
        return out;
    }
    // State (s, i) waits for acceptance set i.
    std::map<std::pair<int, int>, int> ids;
    std::vector<std::pair<int, int>> todo;
    auto id_of = [&](int s, int i) {
        auto [it, fresh] = ids.emplace(std::make_pair(s, i), out.num_states);
        if (fresh) {
            ++out.num_states;
            todo.push_back({s, i});
            out.delta.emplace_back(a.alphabet.size());
            out.accepting.push_back(i == k - 1 && a.acc_sets[i][s]);
            out.names.push_back((a.names.empty() ? std::to_string(s) : a.names[s]) + " #" + std::to_string(i));
        }
        return it->second;
    };
    for (int s : a.initial) out.initial.push_back(id_of(s, 0));
    while (!todo.empty()) {
        auto [s, i] = todo.back();
        todo.pop_back();
        int from = ids.at({s, i});
        int ni = a.acc_sets[i][s] ? (i + 1) % k : i;
        for (std::size_t l = 0; l < a.alphabet.size(); ++l) {
            for (int t : a.delta[s][l]) {
                int to = id_of(t, ni);
                out.delta[from][l].push_back(to);
            }
        }
    }
    return out;
}

Ubw dualize(const Nbw& a) {
    Ubw out;
    static_cast<TransitionSystem&>(out) = a;
    out.rejecting = a.accepting;
    return out;
}

Nbw dualize(const Ubw& a) {
    Nbw out;
    static_cast<TransitionSystem&>(out) = a;
    out.accepting = a.rejecting;
    return out;
}

Dpw complement(const Dpw& a) {
    Dpw out = a;
    for (auto& p : out.priority) ++p;
    return out;
}

namespace {

struct Product {
    std::vector<std::vector<int>> adj;
    std::vector<int> state;  // product node -> automaton state
    std::vector<int> sources;
};

// Nodes are (q, i) for every automaton state q and lasso position i.
Product product(const TransitionSystem& a, const LetterLasso& w) {
    if (w.loop.empty()) throw Error(ErrorCode::AlphabetMismatch, "lasso has an empty loop");
    const int len = static_cast<int>(w.length());
    Product p;
    p.adj.resize(static_cast<std::size_t>(a.num_states) * len);
    p.state.resize(p.adj.size());
    for (int q = 0; q < a.num_states; ++q) {
        for (int i = 0; i < len; ++i) {
            int node = q * len + i;
            p.state[node] = q;
            int letter = w.at(i);
            if (letter < 0 || static_cast<std::size_t>(letter) >= a.alphabet.size())
                throw Error(ErrorCode::AlphabetMismatch, "letter index out of range");
            int ni = static_cast<int>(w.next(i));
            for (int t : a.delta[q][letter]) p.adj[node].push_back(t * len + ni);
        }
    }
    for (int q : a.initial) p.sources.push_back(q * len);
    return p;
}

// Is there a reachable cycle meeting every set? An empty list means "any cycle".
bool fair_cycle(const Product& p, const std::vector<const std::vector<char>*>& sets) {
    auto reach = reachable(p.adj, p.sources);
    std::vector<std::vector<int>> sub(p.adj.size());
    for (std::size_t v = 0; v < p.adj.size(); ++v) {
        if (!reach[v]) continue;
        sub[v] = p.adj[v];
    }
    auto scc = strongly_connected(sub);
    std::vector<std::vector<char>> hit(scc.count, std::vector<char>(sets.size(), 0));
    for (std::size_t v = 0; v < p.adj.size(); ++v) {
        if (!reach[v]) continue;
        int c = scc.comp[v];
        for (std::size_t k = 0; k < sets.size(); ++k)
            if ((*sets[k])[p.state[v]]) hit[c][k] = 1;
    }
    for (std::size_t v = 0; v < p.adj.size(); ++v) {
        if (!reach[v]) continue;
        int c = scc.comp[v];
        if (scc.cyclic[c] && std::all_of(hit[c].begin(), hit[c].end(), [](char x) { return x != 0; })) return true;
    }
    return false;
}

}  // namespace

bool ngbw_lasso_member(const Ngbw& a, const LetterLasso& w) {
    std::vector<const std::vector<char>*> sets;
    for (const auto& s : a.acc_sets) sets.push_back(&s);
    return fair_cycle(product(a, w), sets);
}

bool nbw_lasso_member(const Nbw& a, const LetterLasso& w) { return fair_cycle(product(a, w), {&a.accepting}); }

bool ubw_lasso_member(const Ubw& a, const LetterLasso& w) {
    return !fair_cycle(product(a, w), {&a.rejecting});
}

bool dpw_lasso_member(const Dpw& a, const LetterLasso& w) {
    if (w.loop.empty()) throw Error(ErrorCode::AlphabetMismatch, "lasso has an empty loop");
    const std::size_t len = w.length();
    std::map<std::pair<int, std::size_t>, std::size_t> seen;
    std::vector<int> trace;
    int q = a.initial;
    std::size_t i = 0;
    while (true) {
        auto [it, fresh] = seen.emplace(std::make_pair(q, i), trace.size());
        if (!fresh) break;
        trace.push_back(q);
        int letter = w.at(i);
        if (letter < 0 || static_cast<std::size_t>(letter) >= a.alphabet.size())
            throw Error(ErrorCode::AlphabetMismatch, "letter index out of range");
        q = a.delta[q][letter];
        i = w.next(i);
        (void)len;
    }
    int best = -1;
    for (std::size_t k = seen.at({q, i}); k < trace.size(); ++k) best = std::max(best, a.priority[trace[k]]);
    return best % 2 == 0;
}

bool ngbw_lasso_member(const Ngbw& a, const LassoWord& w) { return ngbw_lasso_member(a, to_letters(a.alphabet, w)); }
bool nbw_lasso_member(const Nbw& a, const LassoWord& w) { return nbw_lasso_member(a, to_letters(a.alphabet, w)); }
bool ubw_lasso_member(const Ubw& a, const LassoWord& w) { return ubw_lasso_member(a, to_letters(a.alphabet, w)); }
bool dpw_lasso_member(const Dpw& a, const LassoWord& w) { return dpw_lasso_member(a, to_letters(a.alphabet, w)); }

bool within_size_envelope(const Ngbw& a, const Formula& psi) {
    double n = static_cast<double>(formula_size(psi));
    std::size_t widest = 2;
    for (const auto& v : a.alphabet.values) widest = std::max(widest, v.size());
    return std::log2(std::max(1, a.num_states)) <= n * n * std::log2(static_cast<double>(widest));
}

// Export.

namespace {

json alphabet_json(const Alphabet& a) {
    json j;
    j["atoms"] = a.atoms;
    json vals = json::array();
    for (const auto& vs : a.values) {
        json row = json::array();
        for (const auto& v : vs) row.push_back(v.str());
        vals.push_back(row);
    }
    j["values"] = vals;
    j["letters"] = a.size();
    return j;
}

json states_json(const TransitionSystem& a, const std::function<json(int)>& acc) {
    json states = json::array();
    for (int s = 0; s < a.num_states; ++s) {
        json st;
        st["id"] = s;
        if (!a.names.empty()) st["name"] = a.names[s];
        st["acc"] = acc(s);
        json edges = json::array();
        for (std::size_t l = 0; l < a.delta[s].size(); ++l)
            if (!a.delta[s][l].empty()) edges.push_back({{"letter", l}, {"to", a.delta[s][l]}});
        st["edges"] = edges;
        states.push_back(st);
    }
    return states;
}

json ts_json(const TransitionSystem& a, const std::string& kind, const std::string& acceptance,
             const std::function<json(int)>& acc) {
    json j;
    j["format"] = "hoa-json";
    j["kind"] = kind;
    j["acceptance"] = acceptance;
    j["alphabet"] = alphabet_json(a.alphabet);
    j["num_states"] = a.num_states;
    j["initial"] = a.initial;
    j["states"] = states_json(a, acc);
    return j;
}

std::string ts_dot(const TransitionSystem& a, const std::string& title, const std::function<std::string(int)>& shape) {
    std::ostringstream os;
    os << "digraph \"" << title << "\" {\n  rankdir=LR;\n  init [shape=point];\n";
    for (int s = 0; s < a.num_states; ++s) {
        std::string label = a.names.empty() ? std::to_string(s) : a.names[s];
        os << "  q" << s << " [label=\"" << label << "\", shape=" << shape(s) << "];\n";
    }
    for (int s : a.initial) os << "  init -> q" << s << ";\n";
    for (int s = 0; s < a.num_states; ++s) {
        std::map<int, std::vector<std::size_t>> by_target;
        for (std::size_t l = 0; l < a.delta[s].size(); ++l)
            for (int t : a.delta[s][l]) by_target[t].push_back(l);
        for (const auto& [t, letters] : by_target) {
            std::string label;
            for (std::size_t k = 0; k < letters.size(); ++k) {
                if (k) label += "\\n";
                label += a.alphabet.letter_str(letters[k]);
            }
            os << "  q" << s << " -> q" << t << " [label=\"" << label << "\"];\n";
        }
    }
    os << "}\n";
    return os.str();
}

}  // namespace

std::string to_hoa_json(const Ngbw& a) {
    json j = ts_json(a, "nondeterministic", "generalized-buchi " + std::to_string(a.acc_sets.size()), [&](int s) {
        json sets = json::array();
        for (std::size_t k = 0; k < a.acc_sets.size(); ++k)
            if (a.acc_sets[k][s]) sets.push_back(k);
        return sets;
    });
    return j.dump(2);
}

std::string to_hoa_json(const Nbw& a) {
    return ts_json(a, "nondeterministic", "buchi", [&](int s) { return a.accepting[s] ? json::array({0}) : json::array(); })
        .dump(2);
}

std::string to_hoa_json(const Ubw& a) {
    return ts_json(a, "universal", "co-buchi", [&](int s) { return a.rejecting[s] ? json::array({0}) : json::array(); })
        .dump(2);
}

std::string to_hoa_json(const Dpw& a) {
    json j;
    j["format"] = "hoa-json";
    j["kind"] = "deterministic";
    j["acceptance"] = "parity max even";
    j["alphabet"] = alphabet_json(a.alphabet);
    j["num_states"] = a.num_states;
    j["initial"] = json::array({a.initial});
    json states = json::array();
    for (int s = 0; s < a.num_states; ++s) {
        json st{{"id", s}, {"priority", a.priority[s]}, {"succ", a.delta[s]}};
        if (!a.names.empty()) st["name"] = a.names[s];
        states.push_back(st);
    }
    j["states"] = states;
    return j.dump(2);
}

std::string to_dot(const Ngbw& a) {
    return ts_dot(a, "ngbw", [&](int s) {
        for (const auto& set : a.acc_sets)
            if (set[s]) return std::string("doublecircle");
        return std::string("circle");
    });
}

std::string to_dot(const Nbw& a) {
    return ts_dot(a, "nbw", [&](int s) { return std::string(a.accepting[s] ? "doublecircle" : "circle"); });
}

std::string to_dot(const Ubw& a) {
    return ts_dot(a, "ubw", [&](int s) { return std::string(a.rejecting[s] ? "box" : "circle"); });
}

std::string to_dot(const Dpw& a) {
    std::ostringstream os;
    os << "digraph \"dpw\" {\n  rankdir=LR;\n  init [shape=point];\n";
    for (int s = 0; s < a.num_states; ++s)
        os << "  q" << s << " [label=\"" << s << " : " << a.priority[s] << "\"];\n";
    os << "  init -> q" << a.initial << ";\n";
    for (int s = 0; s < a.num_states; ++s) {
        std::map<int, std::vector<std::size_t>> by_target;
        for (std::size_t l = 0; l < a.delta[s].size(); ++l) by_target[a.delta[s][l]].push_back(l);
        for (const auto& [t, letters] : by_target) {
            std::string label;
            for (std::size_t k = 0; k < letters.size(); ++k) {
                if (k) label += "\\n";
                label += a.alphabet.letter_str(letters[k]);
            }
            os << "  q" << s << " -> q" << t << " [label=\"" << label << "\"];\n";
        }
    }
    os << "}\n";
    return os.str();
}

}  // namespace slfmc
