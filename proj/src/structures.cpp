#include "slfmc/structures.hpp"

#include "slfmc/error.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace slfmc {

using nlohmann::json;

Rat rat_from_json(const json& v) {
    if (v.is_string()) return Rat::parse(v.get<std::string>());
    if (v.is_number_integer()) return Rat(v.get<std::int64_t>());
    if (v.is_number_float()) {
        // Shortest round-trip form recovers the decimal literal as written.
        char buf[64];
        auto res = std::to_chars(buf, buf + sizeof buf, v.get<double>());
        std::string text(buf, res.ptr);
        if (text.find('e') != std::string::npos || text.find('E') != std::string::npos)
            throw Error(ErrorCode::Schema, "exponent notation is not supported for weights: " + text);
        return Rat::parse(text);
    }
    throw Error(ErrorCode::Schema, "expected a rational, got " + v.dump());
}

namespace {

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Schema, path + ": " + e.what());
    }
}

int index_of(const std::vector<std::string>& v, const std::string& name, const char* what) {
    auto it = std::find(v.begin(), v.end(), name);
    if (it == v.end()) throw Error(ErrorCode::DanglingReference, std::string("unknown ") + what + " '" + name + "'");
    return static_cast<int>(it - v.begin());
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (c != ' ') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

const json& require(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::Schema, std::string("missing field '") + key + "'");
    return j.at(key);
}

std::vector<std::string> string_list(const json& j, const char* key) {
    const json& a = require(j, key);
    if (!a.is_array()) throw Error(ErrorCode::Schema, std::string("field '") + key + "' must be an array");
    std::vector<std::string> out;
    for (const auto& e : a) {
        if (!e.is_string()) throw Error(ErrorCode::Schema, std::string("field '") + key + "' must hold strings");
        out.push_back(e.get<std::string>());
    }
    std::set<std::string> uniq(out.begin(), out.end());
    if (uniq.size() != out.size()) throw Error(ErrorCode::Schema, std::string("duplicate entry in '") + key + "'");
    return out;
}

// States as [{"id":..,"label":{..}}] (or plain ids). Collects propositions.
void read_states(const json& j, std::vector<std::string>& states, std::vector<std::string>& aps,
                 std::vector<std::vector<Rat>>& labels) {
    const json& arr = require(j, "states");
    if (!arr.is_array() || arr.empty()) throw Error(ErrorCode::Schema, "'states' must be a nonempty array");
    if (j.contains("aps")) aps = string_list(j, "aps");
    std::vector<std::map<std::string, Rat>> raw;
    for (const auto& s : arr) {
        std::map<std::string, Rat> lab;
        if (s.is_string()) {
            states.push_back(s.get<std::string>());
        } else {
            const json& id = require(s, "id");
            states.push_back(id.is_string() ? id.get<std::string>() : id.dump());
            if (s.contains("label")) {
                if (!s.at("label").is_object()) throw Error(ErrorCode::Schema, "'label' must be an object");
                for (const auto& [p, w] : s.at("label").items()) {
                    Rat r = rat_from_json(w);
                    if (!r.in_unit())
                        throw Error(ErrorCode::OutOfRange, "weight of '" + p + "' in state '" + states.back() +
                                                               "' is outside [0,1]");
                    lab[p] = r;
                    if (std::find(aps.begin(), aps.end(), p) == aps.end()) aps.push_back(p);
                }
            }
        }
        raw.push_back(std::move(lab));
    }
    std::set<std::string> uniq(states.begin(), states.end());
    if (uniq.size() != states.size()) throw Error(ErrorCode::Schema, "duplicate state id");
    std::sort(aps.begin(), aps.end());
    labels.assign(states.size(), std::vector<Rat>(aps.size(), Rat(0)));
    for (std::size_t s = 0; s < states.size(); ++s)
        for (const auto& [p, w] : raw[s]) labels[s][index_of(aps, p, "proposition")] = w;
}

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

std::string label_text(const std::vector<std::string>& aps, const std::vector<Rat>& lab) {
    std::string out;
    for (std::size_t i = 0; i < aps.size(); ++i) {
        if (lab[i] == Rat(0)) continue;
        if (!out.empty()) out += ", ";
        out += aps[i] + "=" + lab[i].str();
    }
    return out;
}

json label_json(const std::vector<std::string>& aps, const std::vector<Rat>& lab) {
    json o = json::object();
    for (std::size_t i = 0; i < aps.size(); ++i)
        if (lab[i] != Rat(0)) o[aps[i]] = lab[i].str();
    return o;
}

}  // namespace

// ---------------------------------------------------------------- Wcgs

int Wcgs::num_joint() const {
    int n = 1;
    for (std::size_t i = 0; i < agents.size(); ++i) n *= static_cast<int>(actions.size());
    return n;
}

std::vector<int> Wcgs::decode_joint(int joint) const {
    std::vector<int> acts(agents.size());
    const int m = static_cast<int>(actions.size());
    for (std::size_t i = agents.size(); i-- > 0;) {
        acts[i] = joint % m;
        joint /= m;
    }
    return acts;
}

int Wcgs::encode_joint(const std::vector<int>& acts) const {
    int j = 0;
    for (int a : acts) j = j * static_cast<int>(actions.size()) + a;
    return j;
}

std::vector<int> Wcgs::successors(int v) const {
    std::vector<int> out = delta[v];
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

int Wcgs::state_index(const std::string& name) const { return index_of(states, name, "state"); }
int Wcgs::agent_index(const std::string& name) const { return index_of(agents, name, "agent"); }
int Wcgs::action_index(const std::string& name) const { return index_of(actions, name, "action"); }

std::optional<int> Wcgs::ap_index(const std::string& name) const {
    auto it = std::find(aps.begin(), aps.end(), name);
    if (it == aps.end()) return std::nullopt;
    return static_cast<int>(it - aps.begin());
}

Rat Wcgs::weight(int v, const std::string& ap) const {
    auto i = ap_index(ap);
    return i ? labels[v][*i] : Rat(0);
}

void Wcgs::validate() const {
    if (agents.empty()) throw Error(ErrorCode::Schema, "a game needs at least one agent");
    if (actions.empty()) throw Error(ErrorCode::Schema, "a game needs at least one action");
    if (states.empty()) throw Error(ErrorCode::Schema, "a game needs at least one state");
    if (initial < 0 || initial >= static_cast<int>(states.size()))
        throw Error(ErrorCode::DanglingReference, "initial state out of range");
    if (labels.size() != states.size()) throw Error(ErrorCode::Schema, "label table size mismatch");
    for (const auto& l : labels) {
        if (l.size() != aps.size()) throw Error(ErrorCode::Schema, "label row size mismatch");
        for (const auto& w : l)
            if (!w.in_unit()) throw Error(ErrorCode::OutOfRange, "weight outside [0,1]");
    }
    if (delta.size() != states.size()) throw Error(ErrorCode::NonTotalTransition, "transition table size mismatch");
    for (std::size_t v = 0; v < states.size(); ++v) {
        if (static_cast<int>(delta[v].size()) != num_joint())
            throw Error(ErrorCode::NonTotalTransition, "state '" + states[v] + "' lacks joint actions");
        for (int t : delta[v])
            if (t < 0 || t >= static_cast<int>(states.size()))
                throw Error(ErrorCode::NonTotalTransition, "state '" + states[v] + "' has an undefined joint action");
    }
}

bool Wcgs::valid_history(const History& h) const {
    if (h.empty()) return false;
    for (std::size_t i = 0; i + 1 < h.size(); ++i) {
        const auto& row = delta[h[i]];
        if (std::find(row.begin(), row.end(), h[i + 1]) == row.end()) return false;
    }
    return true;
}

Wcgs Wcgs::from_json(const json& j) {
    Wcgs g;
    g.agents = string_list(j, "agents");
    g.actions = string_list(j, "actions");
    read_states(j, g.states, g.aps, g.labels);
    const json& init = require(j, "initial");
    g.initial = g.state_index(init.is_string() ? init.get<std::string>() : init.dump());
    const int nj = g.num_joint();
    g.delta.assign(g.states.size(), std::vector<int>(nj, -1));
    const json& tr = require(j, "transitions");
    if (!tr.is_object()) throw Error(ErrorCode::Schema, "'transitions' must be an object");
    for (const auto& [src, row] : tr.items()) {
        int v = g.state_index(src);
        if (!row.is_object()) throw Error(ErrorCode::Schema, "transition row of '" + src + "' must be an object");
        // Entries may use '*' for any action; fewer wildcards take precedence.
        std::vector<std::tuple<int, std::vector<int>, int>> entries;
        for (const auto& [key, dst] : row.items()) {
            auto parts = split(key, ',');
            if (parts.size() != g.agents.size())
                throw Error(ErrorCode::Schema, "joint action '" + key + "' does not name one action per agent");
            std::vector<int> acts;
            int wild = 0;
            for (const auto& p : parts) {
                if (p == "*") {
                    acts.push_back(-1);
                    ++wild;
                } else {
                    acts.push_back(g.action_index(p));
                }
            }
            if (!dst.is_string()) throw Error(ErrorCode::Schema, "transition target must be a state id");
            entries.emplace_back(wild, acts, g.state_index(dst.get<std::string>()));
        }
        std::vector<int> spec(nj, -1);
        for (const auto& [wild, acts, target] : entries) {
            for (int c = 0; c < nj; ++c) {
                auto ca = g.decode_joint(c);
                bool match = true;
                for (std::size_t i = 0; i < acts.size(); ++i)
                    if (acts[i] >= 0 && acts[i] != ca[i]) match = false;
                if (!match) continue;
                if (g.delta[v][c] < 0 || wild < spec[c]) {
                    g.delta[v][c] = target;
                    spec[c] = wild;
                } else if (wild == spec[c] && g.delta[v][c] != target) {
                    throw Error(ErrorCode::Schema, "conflicting transitions from '" + src + "'");
                }
            }
        }
    }
    for (std::size_t v = 0; v < g.states.size(); ++v)
        for (int c = 0; c < nj; ++c)
            if (g.delta[v][c] < 0) {
                auto acts = g.decode_joint(c);
                std::string key;
                for (std::size_t i = 0; i < acts.size(); ++i) key += (i ? "," : "") + g.actions[acts[i]];
                throw Error(ErrorCode::NonTotalTransition,
                            "no transition from '" + g.states[v] + "' on joint action '" + key + "'");
            }
    g.validate();
    return g;
}

Wcgs Wcgs::load(const std::string& path) { return from_json(read_json_file(path)); }

json Wcgs::to_json() const {
    json j;
    j["agents"] = agents;
    j["actions"] = actions;
    j["aps"] = aps;
    json st = json::array();
    for (std::size_t v = 0; v < states.size(); ++v) st.push_back({{"id", states[v]}, {"label", label_json(aps, labels[v])}});
    j["states"] = st;
    j["initial"] = states[initial];
    json tr = json::object();
    for (std::size_t v = 0; v < states.size(); ++v) {
        json row = json::object();
        for (int c = 0; c < num_joint(); ++c) {
            auto acts = decode_joint(c);
            std::string key;
            for (std::size_t i = 0; i < acts.size(); ++i) key += (i ? "," : "") + actions[acts[i]];
            row[key] = states[delta[v][c]];
        }
        tr[states[v]] = row;
    }
    j["transitions"] = tr;
    return j;
}

std::string Wcgs::dot() const {
    std::ostringstream os;
    os << "digraph wcgs {\n  rankdir=LR;\n  __init [shape=point];\n";
    for (std::size_t v = 0; v < states.size(); ++v)
        os << "  s" << v << " [label=\"" << dot_escape(states[v]) << "\\n" << dot_escape(label_text(aps, labels[v]))
           << "\"];\n";
    os << "  __init -> s" << initial << ";\n";
    for (std::size_t v = 0; v < states.size(); ++v) {
        std::map<int, std::vector<std::string>> by_target;
        for (int c = 0; c < num_joint(); ++c) {
            auto acts = decode_joint(c);
            std::string key;
            for (std::size_t i = 0; i < acts.size(); ++i) key += (i ? "," : "") + actions[acts[i]];
            by_target[delta[v][c]].push_back(key);
        }
        for (const auto& [t, keys] : by_target) {
            std::string lab;
            for (const auto& k : keys) lab += (lab.empty() ? "" : "\\n") + k;
            os << "  s" << v << " -> s" << t << " [label=\"" << dot_escape(lab) << "\"];\n";
        }
    }
    os << "}\n";
    return os.str();
}

Wcgs Wcgs::with_prop(const std::string& name, const std::vector<Rat>& weights) const {
    Wcgs g = *this;
    auto idx = g.ap_index(name);
    if (!idx) {
        g.aps.push_back(name);
        for (auto& l : g.labels) l.push_back(Rat(0));
        idx = static_cast<int>(g.aps.size()) - 1;
    }
    for (std::size_t v = 0; v < g.states.size(); ++v) g.labels[v][*idx] = weights.at(v);
    return g;
}

// ---------------------------------------------------------------- Wks

int Wks::state_index(const std::string& name) const { return index_of(states, name, "state"); }

std::optional<int> Wks::ap_index(const std::string& name) const {
    auto it = std::find(aps.begin(), aps.end(), name);
    if (it == aps.end()) return std::nullopt;
    return static_cast<int>(it - aps.begin());
}

Rat Wks::weight(int s, const std::string& ap) const {
    auto i = ap_index(ap);
    return i ? labels[s][*i] : Rat(0);
}

std::vector<Rat> Wks::weight_values() const {
    std::set<Rat> vals{Rat(0), Rat(1)};
    for (const auto& l : labels) vals.insert(l.begin(), l.end());
    return {vals.begin(), vals.end()};
}

void Wks::validate() const {
    if (states.empty()) throw Error(ErrorCode::Schema, "a Kripke structure needs at least one state");
    if (initial < 0 || initial >= static_cast<int>(states.size()))
        throw Error(ErrorCode::DanglingReference, "initial state out of range");
    if (labels.size() != states.size() || succ.size() != states.size())
        throw Error(ErrorCode::Schema, "table size mismatch");
    for (const auto& l : labels) {
        if (l.size() != aps.size()) throw Error(ErrorCode::Schema, "label row size mismatch");
        for (const auto& w : l)
            if (!w.in_unit()) throw Error(ErrorCode::OutOfRange, "weight outside [0,1]");
    }
    for (std::size_t s = 0; s < states.size(); ++s) {
        if (succ[s].empty()) throw Error(ErrorCode::NonTotalTransition, "state '" + states[s] + "' has no successor");
        for (int t : succ[s])
            if (t < 0 || t >= static_cast<int>(states.size()))
                throw Error(ErrorCode::DanglingReference, "edge to an unknown state");
    }
}

bool Wks::valid_history(const History& h) const {
    if (h.empty()) return false;
    for (std::size_t i = 0; i + 1 < h.size(); ++i)
        if (!std::binary_search(succ[h[i]].begin(), succ[h[i]].end(), h[i + 1])) return false;
    return true;
}

Wks Wks::from_json(const json& j) {
    Wks k;
    read_states(j, k.states, k.aps, k.labels);
    const json& init = require(j, "initial");
    k.initial = k.state_index(init.is_string() ? init.get<std::string>() : init.dump());
    k.succ.assign(k.states.size(), {});
    const json& edges = require(j, "edges");
    if (!edges.is_array()) throw Error(ErrorCode::Schema, "'edges' must be an array");
    for (const auto& e : edges) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
            throw Error(ErrorCode::Schema, "an edge is a pair of state ids");
        k.succ[k.state_index(e[0].get<std::string>())].push_back(k.state_index(e[1].get<std::string>()));
    }
    for (auto& s : k.succ) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    k.validate();
    return k;
}

Wks Wks::load(const std::string& path) { return from_json(read_json_file(path)); }

json Wks::to_json() const {
    json j;
    j["aps"] = aps;
    json st = json::array();
    for (std::size_t s = 0; s < states.size(); ++s) st.push_back({{"id", states[s]}, {"label", label_json(aps, labels[s])}});
    j["states"] = st;
    j["initial"] = states[initial];
    json edges = json::array();
    for (std::size_t s = 0; s < states.size(); ++s)
        for (int t : succ[s]) edges.push_back({states[s], states[t]});
    j["edges"] = edges;
    return j;
}

std::string Wks::dot() const {
    std::ostringstream os;
    os << "digraph wks {\n  rankdir=LR;\n  __init [shape=point];\n";
    for (std::size_t s = 0; s < states.size(); ++s)
        os << "  s" << s << " [label=\"" << dot_escape(states[s]) << "\\n" << dot_escape(label_text(aps, labels[s]))
           << "\"];\n";
    os << "  __init -> s" << initial << ";\n";
    for (std::size_t s = 0; s < states.size(); ++s)
        for (int t : succ[s]) os << "  s" << s << " -> s" << t << ";\n";
    os << "}\n";
    return os.str();
}

Wks Wks::rooted_at(int s) const {
    Wks k = *this;
    k.initial = s;
    return k;
}

Wks Wks::with_prop(const std::string& name, const std::vector<Rat>& weights) const {
    Wks k = *this;
    auto idx = k.ap_index(name);
    if (!idx) {
        k.aps.push_back(name);
        for (auto& l : k.labels) l.push_back(Rat(0));
        idx = static_cast<int>(k.aps.size()) - 1;
    }
    for (std::size_t s = 0; s < k.states.size(); ++s) k.labels[s][*idx] = weights.at(s);
    return k;
}

// ---------------------------------------------------------------- strategies

Strategy Strategy::make_memoryless(std::vector<int> choice) {
    Strategy s;
    s.kind = Kind::Memoryless;
    s.memoryless = std::move(choice);
    return s;
}

Strategy Strategy::make_tree(std::map<History, int> choices, int horizon) {
    Strategy s;
    s.kind = Kind::HorizonTree;
    s.tree = std::move(choices);
    s.horizon = horizon;
    return s;
}

Strategy Strategy::make_mealy(int m0, std::vector<std::vector<int>> update, std::vector<std::vector<int>> output) {
    Strategy s;
    s.kind = Kind::Mealy;
    s.memory_init = m0;
    s.update = std::move(update);
    s.output = std::move(output);
    return s;
}

int Strategy::act(const History& h) const {
    if (h.empty()) throw Error(ErrorCode::StrategyDomain, "empty history");
    switch (kind) {
        case Kind::Memoryless:
            if (h.back() >= static_cast<int>(memoryless.size()))
                throw Error(ErrorCode::StrategyDomain, "memoryless strategy undefined at state");
            return memoryless[h.back()];
        case Kind::HorizonTree: {
            auto it = tree.find(h);
            if (it == tree.end()) throw Error(ErrorCode::StrategyDomain, "strategy tree does not cover the history");
            return it->second;
        }
        case Kind::Mealy: {
            int m = memory_init;
            for (std::size_t i = 0; i + 1 < h.size(); ++i) m = update.at(m).at(h[i]);
            return output.at(m).at(h.back());
        }
    }
    return 0;
}

json Strategy::to_json(const Wcgs& g) const {
    json j;
    switch (kind) {
        case Kind::Memoryless: {
            j["kind"] = "memoryless";
            json m = json::object();
            for (std::size_t v = 0; v < memoryless.size(); ++v) m[g.states[v]] = g.actions[memoryless[v]];
            j["choice"] = m;
            break;
        }
        case Kind::HorizonTree: {
            j["kind"] = "tree";
            j["horizon"] = horizon;
            json arr = json::array();
            for (const auto& [h, a] : tree) {
                json hist = json::array();
                for (int v : h) hist.push_back(g.states[v]);
                arr.push_back({{"history", hist}, {"action", g.actions[a]}});
            }
            j["choices"] = arr;
            break;
        }
        case Kind::Mealy: {
            j["kind"] = "mealy";
            j["memory_states"] = update.size();
            j["initial_memory"] = memory_init;
            json rows = json::array();
            for (std::size_t m = 0; m < update.size(); ++m)
                for (std::size_t v = 0; v < update[m].size(); ++v)
                    rows.push_back({{"memory", m},
                                    {"state", g.states[v]},
                                    {"action", g.actions[output[m][v]]},
                                    {"next_memory", update[m][v]}});
            j["table"] = rows;
            break;
        }
    }
    return j;
}

Assignment Assignment::set(const std::string& key, StrategyPtr s) const {
    Assignment a = *this;
    a.map_[key] = std::move(s);
    return a;
}

StrategyPtr Assignment::get(const std::string& key) const {
    auto it = map_.find(key);
    return it == map_.end() ? nullptr : it->second;
}

std::vector<History> outcomes(const Assignment& chi, const History& rho, const Wcgs& g, int h) {
    const std::size_t n = g.agents.size();
    std::vector<StrategyPtr> fixed(n);
    for (std::size_t i = 0; i < n; ++i) fixed[i] = chi.get(g.agents[i]);
    std::set<History> frontier{rho};
    for (int step = 0; step < h; ++step) {
        std::set<History> next;
        for (const auto& hist : frontier) {
            std::vector<std::vector<int>> choices(n);
            for (std::size_t i = 0; i < n; ++i) {
                if (fixed[i]) {
                    choices[i] = {fixed[i]->act(hist)};
                } else {
                    for (std::size_t a = 0; a < g.actions.size(); ++a) choices[i].push_back(static_cast<int>(a));
                }
            }
            std::vector<int> idx(n, 0), acts(n);
            while (true) {
                for (std::size_t i = 0; i < n; ++i) acts[i] = choices[i][idx[i]];
                History ext = hist;
                ext.push_back(g.step(hist.back(), acts));
                next.insert(std::move(ext));
                std::size_t k = n;
                while (k > 0) {
                    --k;
                    if (++idx[k] < static_cast<int>(choices[k].size())) break;
                    idx[k] = 0;
                    if (k == 0) goto done;
                }
                if (n == 0) break;
            }
        done:
            (void)0;
        }
        frontier = std::move(next);
    }
    return {frontier.begin(), frontier.end()};
}

// ---------------------------------------------------------------- trees

std::optional<int> FiniteTree::ap_index(const std::string& name) const {
    auto it = std::find(aps.begin(), aps.end(), name);
    if (it == aps.end()) return std::nullopt;
    return static_cast<int>(it - aps.begin());
}

std::optional<int> FiniteTree::find(const History& h) const {
    if (h.empty() || origin.empty() || origin[0] != h[0]) return std::nullopt;
    int node = 0;
    for (std::size_t i = 1; i < h.size(); ++i) {
        int next = -1;
        for (int c : children[node])
            if (origin[c] == h[i]) next = c;
        if (next < 0) return std::nullopt;
        node = next;
    }
    return node;
}

History FiniteTree::path(int node) const {
    History h;
    for (int n = node; n >= 0; n = parent[n]) h.push_back(origin[n]);
    std::reverse(h.begin(), h.end());
    return h;
}

bool FiniteTree::boolean_in(const std::string& ap) const {
    auto i = ap_index(ap);
    if (!i) return true;
    for (const auto& l : labels)
        if (!l[*i].is_boolean()) return false;
    return true;
}

FiniteTree unfold_wks(const Wks& k, int d) {
    FiniteTree t;
    t.aps = k.aps;
    t.max_depth = d;
    t.parent.push_back(-1);
    t.children.emplace_back();
    t.depth.push_back(0);
    t.origin.push_back(k.initial);
    t.labels.push_back(k.labels[k.initial]);
    for (std::size_t n = 0; n < t.parent.size(); ++n) {
        if (t.depth[n] >= d) continue;
        for (int s : k.succ[t.origin[n]]) {
            int c = static_cast<int>(t.parent.size());
            t.parent.push_back(static_cast<int>(n));
            t.children.emplace_back();
            t.depth.push_back(t.depth[n] + 1);
            t.origin.push_back(s);
            t.labels.push_back(k.labels[s]);
            t.children[n].push_back(c);
        }
    }
    return t;
}

std::string fresh_name(const std::string& base, const std::vector<std::string>& taken) {
    std::string name = base;
    while (std::find(taken.begin(), taken.end(), name) != taken.end()) name += "_";
    return name;
}

KripkeOfGame game_to_kripke(const Wcgs& g) {
    KripkeOfGame out;
    Wks& k = out.kripke;
    k.states = g.states;
    k.initial = g.initial;
    k.aps = g.aps;
    std::vector<std::string> taken = g.aps;
    for (const auto& s : g.states) {
        std::string p = fresh_name("pv_" + s, taken);
        taken.push_back(p);
        out.state_props.push_back(p);
        k.aps.push_back(p);
    }
    const std::size_t n = g.states.size();
    k.labels.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        k.labels[v] = g.labels[v];
        for (std::size_t u = 0; u < n; ++u) k.labels[v].push_back(u == v ? Rat(1) : Rat(0));
        k.succ.push_back(g.successors(static_cast<int>(v)));
    }
    k.validate();
    return out;
}

}  // namespace slfmc
