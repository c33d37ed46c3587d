#include "slfmc/parity.hpp"

#include "slfmc/error.hpp"
#include "slfmc/graph.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <sstream>

namespace slfmc {

int ParityGame::add_vertex(int who, int prio, std::string name) {
    owner.push_back(who);
    priority.push_back(prio);
    succ.emplace_back();
    names.push_back(std::move(name));
    return size() - 1;
}

void ParityGame::add_edge(int from, int to) { succ[from].push_back(to); }

void ParityGame::validate() const {
    if (priority.size() != owner.size() || succ.size() != owner.size())
        throw Error(ErrorCode::Schema, "parity game arrays have different lengths");
    for (int v = 0; v < size(); ++v) {
        if (owner[v] != kEven && owner[v] != kOdd) throw Error(ErrorCode::Schema, "vertex " + std::to_string(v) + " has no owner");
        if (priority[v] < 0) throw Error(ErrorCode::Schema, "negative priority at vertex " + std::to_string(v));
        if (succ[v].empty()) throw Error(ErrorCode::Schema, "dead end at vertex " + std::to_string(v));
        for (int w : succ[v])
            if (w < 0 || w >= size()) throw Error(ErrorCode::DanglingReference, "edge to unknown vertex " + std::to_string(w));
    }
}

ParityGame ParityGame::from_pgsolver(const std::string& text) {
    // Statements end with ';'. Names are quoted and may not contain ';'.
    std::vector<std::string> stmts;
    std::string cur;
    bool quoted = false;
    for (char ch : text) {
        if (ch == '"') quoted = !quoted;
        if (ch == ';' && !quoted) {
            stmts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    auto blank = [](const std::string& s) { return s.find_first_not_of(" \t\r\n") == std::string::npos; };
    if (!blank(cur)) throw Error(ErrorCode::Syntax, "missing ';' at end of PGSolver input");

    struct Row {
        long id, prio, owner;
        std::vector<long> succ;
        std::string name;
    };
    std::vector<Row> rows;
    static const std::regex header(R"(^\s*(parity|start)\s+\d+\s*$)");
    static const std::regex row_re(R"re(^\s*(\d+)\s+(\d+)\s+([01])\s+([0-9,\s]+?)\s*(?:"([^"]*)")?\s*$)re");
    for (const auto& s : stmts) {
        if (blank(s) || std::regex_match(s, header)) continue;
        std::smatch m;
        if (!std::regex_match(s, m, row_re)) throw Error(ErrorCode::Syntax, "bad PGSolver line: " + s);
        Row r{std::stol(m[1]), std::stol(m[2]), std::stol(m[3]), {}, m[5].matched ? m[5].str() : std::string()};
        std::stringstream ss(m[4].str());
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (blank(tok)) throw Error(ErrorCode::Syntax, "empty successor in: " + s);
            r.succ.push_back(std::stol(tok));
        }
        rows.push_back(std::move(r));
    }
    std::map<long, int> index;
    ParityGame g;
    for (const auto& r : rows) {
        if (!index.emplace(r.id, g.size()).second) throw Error(ErrorCode::Schema, "duplicate vertex " + std::to_string(r.id));
        g.add_vertex(static_cast<int>(r.owner), static_cast<int>(r.prio), r.name);
    }
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (long s : rows[i].succ) {
            auto it = index.find(s);
            if (it == index.end()) throw Error(ErrorCode::DanglingReference, "edge to unknown vertex " + std::to_string(s));
            g.add_edge(static_cast<int>(i), it->second);
        }
    g.validate();
    return g;
}

std::string ParityGame::to_pgsolver() const {
    std::ostringstream os;
    os << "parity " << (size() - 1) << ";\n";
    for (int v = 0; v < size(); ++v) {
        os << v << ' ' << priority[v] << ' ' << owner[v] << ' ';
        for (std::size_t k = 0; k < succ[v].size(); ++k) os << (k ? "," : "") << succ[v][k];
        if (v < static_cast<int>(names.size()) && !names[v].empty()) os << " \"" << names[v] << '"';
        os << ";\n";
    }
    return os.str();
}

std::vector<char> ParitySolution::region(int player) const {
    std::vector<char> r(winner.size(), 0);
    for (std::size_t v = 0; v < winner.size(); ++v) r[v] = winner[v] == player;
    return r;
}

std::vector<int> ParitySolution::strategy_of(int player, const ParityGame& g) const {
    std::vector<int> s(winner.size(), -1);
    for (std::size_t v = 0; v < winner.size(); ++v)
        if (winner[v] == player && g.owner[v] == player) s[v] = strategy[v];
    return s;
}

namespace {

class Zielonka {
public:
    explicit Zielonka(const ParityGame& g) : g_(g), pred_(g.size()) {
        for (int v = 0; v < g.size(); ++v)
            for (int w : g.succ[v]) pred_[w].push_back(v);
    }

    ParitySolution run() {
        const int n = g_.size();
        ParitySolution sol;
        sol.winner.assign(n, -1);
        sol.strategy.assign(n, -1);
        std::vector<int> all(n);
        for (int v = 0; v < n; ++v) all[v] = v;
        solve(all, sol);
        return sol;
    }

private:
    // Attractor of `target` for `player` within `in`; fills strategy for
    // player's vertices that are pulled in.
    std::vector<int> attract(const std::vector<int>& in, const std::vector<int>& target, int player,
                             std::vector<int>& strategy) {
        const int n = g_.size();
        std::vector<char> member(n, 0), inside(n, 0);
        std::vector<int> count(n, 0);
        for (int v : in) inside[v] = 1;
        for (int v : in)
            for (int w : g_.succ[v]) count[v] += inside[w];
        std::vector<int> out, todo;
        for (int v : target) {
            member[v] = 1;
            out.push_back(v);
            todo.push_back(v);
        }
        while (!todo.empty()) {
            int w = todo.back();
            todo.pop_back();
            for (int v : pred_[w]) {
                if (!inside[v] || member[v]) continue;
                if (g_.owner[v] == player) {
                    strategy[v] = w;
                } else if (--count[v] > 0) {
                    continue;
                }
                member[v] = 1;
                out.push_back(v);
                todo.push_back(v);
            }
        }
        return out;
    }

    static std::vector<int> minus(const std::vector<int>& a, const std::vector<int>& b, int n) {
        std::vector<char> drop(n, 0);
        for (int v : b) drop[v] = 1;
        std::vector<int> out;
        for (int v : a)
            if (!drop[v]) out.push_back(v);
        return out;
    }

    // Writes winners and strategies for the subgame `in`.
    void solve(const std::vector<int>& in, ParitySolution& sol) {
        if (in.empty()) return;
        const int n = g_.size();
        int d = -1;
        for (int v : in) d = std::max(d, g_.priority[v]);
        const int p = d % 2;
        std::vector<char> inside(n, 0);
        for (int v : in) inside[v] = 1;
        std::vector<int> top;
        for (int v : in)
            if (g_.priority[v] == d) top.push_back(v);
        std::vector<int> attr_strategy(n, -1);
        auto a = attract(in, top, p, attr_strategy);
        auto rest = minus(in, a, n);
        solve(rest, sol);
        std::vector<int> opp;
        for (int v : rest)
            if (sol.winner[v] == 1 - p) opp.push_back(v);
        if (opp.empty()) {
            for (int v : a) {
                sol.winner[v] = p;
                if (g_.owner[v] != p) continue;
                if (attr_strategy[v] >= 0) {
                    sol.strategy[v] = attr_strategy[v];
                } else {
                    // top-priority vertex: any move staying in the subgame
                    for (int w : g_.succ[v])
                        if (inside[w]) {
                            sol.strategy[v] = w;
                            break;
                        }
                }
            }
            return;
        }
        std::vector<int> b_strategy(n, -1);
        auto b = attract(in, opp, 1 - p, b_strategy);
        for (int v : b) {
            sol.winner[v] = 1 - p;
            if (g_.owner[v] == 1 - p && b_strategy[v] >= 0) sol.strategy[v] = b_strategy[v];
        }
        // Vertices of `opp` keep the strategy from the recursive call.
        solve(minus(in, b, n), sol);
    }

    const ParityGame& g_;
    std::vector<std::vector<int>> pred_;
};

}  // namespace

ParitySolution solve(const ParityGame& g) {
    g.validate();
    return Zielonka(g).run();
}

bool check_certificate(const ParityGame& g, const std::vector<int>& sigma, int side, const std::vector<char>& region) {
    const int n = g.size();
    if (static_cast<int>(sigma.size()) != n || static_cast<int>(region.size()) != n)
        throw Error(ErrorCode::CertificateRegion, "strategy or region has the wrong size");
    std::vector<std::vector<int>> adj(n);
    for (int v = 0; v < n; ++v) {
        if (!region[v]) continue;
        if (g.owner[v] == side) {
            int w = sigma[v];
            if (w < 0 || w >= n || !region[w] || std::find(g.succ[v].begin(), g.succ[v].end(), w) == g.succ[v].end())
                throw Error(ErrorCode::CertificateRegion, "strategy leaves the region at vertex " + std::to_string(v));
            adj[v].push_back(w);
        } else {
            for (int w : g.succ[v]) {
                if (!region[w]) return false;  // the opponent escapes
                adj[v].push_back(w);
            }
        }
    }
    // A losing cycle exists iff for some priority d of the wrong parity, the
    // graph restricted to priorities <= d has a cycle through a d-vertex.
    std::vector<int> prios;
    for (int v = 0; v < n; ++v)
        if (region[v] && g.priority[v] % 2 != side) prios.push_back(g.priority[v]);
    std::sort(prios.begin(), prios.end());
    prios.erase(std::unique(prios.begin(), prios.end()), prios.end());
    for (int d : prios) {
        std::vector<std::vector<int>> sub(n);
        for (int v = 0; v < n; ++v) {
            if (!region[v] || g.priority[v] > d) continue;
            for (int w : adj[v])
                if (g.priority[w] <= d) sub[v].push_back(w);
        }
        auto scc = strongly_connected(sub);
        for (int v = 0; v < n; ++v)
            if (region[v] && g.priority[v] == d && scc.cyclic[scc.comp[v]]) return false;
    }
    return true;
}

std::vector<int> brute_force_winners(const ParityGame& g) {
    g.validate();
    const int n = g.size();
    if (n > 12) throw Error(ErrorCode::ResourceCap, "brute force is limited to 12 vertices");
    std::vector<int> even, odd;
    for (int v = 0; v < n; ++v) (g.owner[v] == kEven ? even : odd).push_back(v);

    auto for_each_choice = [&](const std::vector<int>& vs, auto&& fn) {
        std::vector<int> pick(vs.size(), 0);
        while (true) {
            fn(pick);
            std::size_t k = 0;
            while (k < vs.size() && ++pick[k] == static_cast<int>(g.succ[vs[k]].size())) pick[k++] = 0;
            if (k == vs.size()) return;
        }
    };
    // Winner of the unique play from v under a full positional profile.
    auto play_winner = [&](const std::vector<int>& next, int v) {
        std::vector<int> seen(n, -1);
        std::vector<int> trace;
        while (seen[v] < 0) {
            seen[v] = static_cast<int>(trace.size());
            trace.push_back(v);
            v = next[v];
        }
        int best = -1;
        for (std::size_t k = seen[v]; k < trace.size(); ++k) best = std::max(best, g.priority[trace[k]]);
        return best % 2;
    };

    std::vector<char> even_wins(n, 0);
    std::vector<int> next(n);
    for_each_choice(even, [&](const std::vector<int>& pe) {
        for (std::size_t k = 0; k < even.size(); ++k) next[even[k]] = g.succ[even[k]][pe[k]];
        std::vector<char> holds(n, 1);
        for_each_choice(odd, [&](const std::vector<int>& po) {
            for (std::size_t k = 0; k < odd.size(); ++k) next[odd[k]] = g.succ[odd[k]][po[k]];
            for (int v = 0; v < n; ++v)
                if (holds[v] && play_winner(next, v) != kEven) holds[v] = 0;
        });
        for (int v = 0; v < n; ++v)
            if (holds[v]) even_wins[v] = 1;
    });
    std::vector<int> w(n);
    for (int v = 0; v < n; ++v) w[v] = even_wins[v] ? kEven : kOdd;
    return w;
}

}  // namespace slfmc
