#include "slfmc/tree_automata.hpp"

#include "slfmc/error.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace slfmc {

Pbf Pbf::all(std::vector<Pbf> parts) {
    std::vector<Pbf> kids;
    for (auto& p : parts) {
        if (p.is_false()) return no();
        if (p.is_true()) continue;
        if (p.kind == Kind::And) {
            for (auto& k : p.kids) kids.push_back(std::move(k));
        } else {
            kids.push_back(std::move(p));
        }
    }
    if (kids.empty()) return yes();
    if (kids.size() == 1) return std::move(kids[0]);
    return {Kind::And, {}, std::move(kids)};
}

Pbf Pbf::any(std::vector<Pbf> parts) {
    std::vector<Pbf> kids;
    for (auto& p : parts) {
        if (p.is_true()) return yes();
        if (p.is_false()) continue;
        if (p.kind == Kind::Or) {
            for (auto& k : p.kids) kids.push_back(std::move(k));
        } else {
            kids.push_back(std::move(p));
        }
    }
    if (kids.empty()) return no();
    if (kids.size() == 1) return std::move(kids[0]);
    return {Kind::Or, {}, std::move(kids)};
}

Pbf dual(const Pbf& f) {
    switch (f.kind) {
        case Pbf::Kind::True: return Pbf::no();
        case Pbf::Kind::False: return Pbf::yes();
        case Pbf::Kind::Atom: return f;
        default: {
            std::vector<Pbf> kids;
            for (const auto& k : f.kids) kids.push_back(dual(k));
            return f.kind == Pbf::Kind::And ? Pbf::any(std::move(kids)) : Pbf::all(std::move(kids));
        }
    }
}

Pbf expand(const Pbf& f, const std::vector<int>& children) {
    switch (f.kind) {
        case Pbf::Kind::True:
        case Pbf::Kind::False: return f;
        case Pbf::Kind::Atom: {
            if (f.move.dir != kSome && f.move.dir != kAll) return f;
            std::vector<Pbf> parts;
            for (int c : children) parts.push_back(Pbf::atom(c, f.move.state));
            return f.move.dir == kSome ? Pbf::any(std::move(parts)) : Pbf::all(std::move(parts));
        }
        default: {
            std::vector<Pbf> kids;
            for (const auto& k : f.kids) kids.push_back(expand(k, children));
            return f.kind == Pbf::Kind::And ? Pbf::all(std::move(kids)) : Pbf::any(std::move(kids));
        }
    }
}

namespace {

using Conj = std::vector<Move>;

std::vector<Conj> minimal(std::vector<Conj> cs) {
    for (auto& c : cs) {
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
    }
    std::sort(cs.begin(), cs.end(), [](const Conj& a, const Conj& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    std::vector<Conj> out;
    for (const auto& c : cs) {
        bool dominated = std::any_of(out.begin(), out.end(), [&](const Conj& k) {
            return std::includes(c.begin(), c.end(), k.begin(), k.end());
        });
        if (!dominated) out.push_back(c);
    }
    return out;
}

std::vector<Conj> dnf(const Pbf& f, std::size_t cap) {
    switch (f.kind) {
        case Pbf::Kind::True: return {Conj{}};
        case Pbf::Kind::False: return {};
        case Pbf::Kind::Atom: return {Conj{f.move}};
        case Pbf::Kind::Or: {
            std::vector<Conj> out;
            for (const auto& k : f.kids) {
                auto part = dnf(k, cap);
                out.insert(out.end(), part.begin(), part.end());
                if (out.size() > cap) throw Error(ErrorCode::ResourceCap, "disjunctive normal form exceeds the cap");
            }
            return minimal(std::move(out));
        }
        default: {
            std::vector<Conj> acc{Conj{}};
            for (const auto& k : f.kids) {
                auto part = dnf(k, cap);
                std::vector<Conj> next;
                for (const auto& a : acc)
                    for (const auto& b : part) {
                        Conj c = a;
                        c.insert(c.end(), b.begin(), b.end());
                        next.push_back(std::move(c));
                        if (next.size() > cap) throw Error(ErrorCode::ResourceCap, "disjunctive normal form exceeds the cap");
                    }
                acc = minimal(std::move(next));
                if (acc.empty()) return acc;
            }
            return acc;
        }
    }
}

}  // namespace

std::vector<std::vector<Move>> to_dnf(const Pbf& f, std::size_t cap) { return dnf(f, cap); }

std::string to_string(const Pbf& f) {
    switch (f.kind) {
        case Pbf::Kind::True: return "true";
        case Pbf::Kind::False: return "false";
        case Pbf::Kind::Atom: {
            std::string d = f.move.dir == kStay ? "=" : f.move.dir == kSome ? "<>" : f.move.dir == kAll ? "[]"
                                                                                                   : std::to_string(f.move.dir);
            return "(" + d + "," + std::to_string(f.move.state) + ")";
        }
        default: {
            std::string s = "(";
            for (std::size_t i = 0; i < f.kids.size(); ++i) {
                if (i) s += f.kind == Pbf::Kind::And ? " & " : " | ";
                s += to_string(f.kids[i]);
            }
            return s + ")";
        }
    }
}

Directions Directions::of(const Wks& k) {
    Directions d;
    d.succ = k.succ;
    return d;
}

int ExplicitApt::add_state(int priority, std::vector<Pbf> per_letter, std::string name) {
    if (per_letter.size() != alphabet_.size())
        throw Error(ErrorCode::AlphabetMismatch, "one transition per letter is required");
    priority_.push_back(priority);
    table_.push_back(std::move(per_letter));
    names_.push_back(name.empty() ? "q" + std::to_string(priority_.size() - 1) : std::move(name));
    return static_cast<int>(priority_.size()) - 1;
}

Pbf ExplicitApt::delta(int q, std::size_t letter, int dir) { return expand(table_.at(q).at(letter), dirs().succ.at(dir)); }

namespace {

class DualView : public TreeAutomaton {
public:
    explicit DualView(TreeAutomatonPtr inner) : TreeAutomaton(inner->alphabet(), inner->dirs_ptr()), inner_(std::move(inner)) {}
    TaKind kind() const override {
        switch (inner_->kind()) {
            case TaKind::Nondeterministic: return TaKind::Universal;
            case TaKind::Universal: return TaKind::Nondeterministic;
            default: return TaKind::Alternating;
        }
    }
    int initial() override { return inner_->initial(); }
    int priority(int q) override { return inner_->priority(q) + 1; }
    Pbf delta(int q, std::size_t letter, int dir) override { return dual(inner_->delta(q, letter, dir)); }
    std::string describe(int q) override { return "not " + inner_->describe(q); }
    std::size_t num_states() const override { return inner_->num_states(); }
    const TreeAutomatonPtr& inner() const { return inner_; }

private:
    TreeAutomatonPtr inner_;
};

class ProjectView : public TreeAutomaton {
public:
    ProjectView(TreeAutomatonPtr inner, const std::string& p, ProjectionMode mode)
        : TreeAutomaton(inner->alphabet(), inner->dirs_ptr()), inner_(std::move(inner)), mode_(mode) {
        auto it = std::find(alphabet_.atoms.begin(), alphabet_.atoms.end(), p);
        if (it == alphabet_.atoms.end()) throw Error(ErrorCode::AlphabetMismatch, "'" + p + "' is not in the alphabet");
        col_ = static_cast<std::size_t>(it - alphabet_.atoms.begin());
        if (!contains(alphabet_.values[col_], Rat(0)) || !contains(alphabet_.values[col_], Rat(1)))
            throw Error(ErrorCode::AlphabetMismatch, "'" + p + "' cannot take the values 0 and 1");
    }
    TaKind kind() const override { return inner_->kind(); }
    int initial() override { return inner_->initial(); }
    int priority(int q) override { return inner_->priority(q); }
    Pbf delta(int q, std::size_t letter, int dir) override {
        auto vals = alphabet_.decode(letter);
        std::vector<Pbf> parts;
        for (int b : {0, 1}) {
            vals[col_] = Rat(b);
            parts.push_back(inner_->delta(q, alphabet_.encode(vals), dir));
        }
        return mode_ == ProjectionMode::Existential ? Pbf::any(std::move(parts)) : Pbf::all(std::move(parts));
    }
    std::string describe(int q) override { return inner_->describe(q); }
    std::size_t num_states() const override { return inner_->num_states(); }

private:
    TreeAutomatonPtr inner_;
    ProjectionMode mode_;
    std::size_t col_ = 0;
};

}  // namespace

TreeAutomatonPtr dual(TreeAutomatonPtr a) {
    return std::make_shared<DualView>(std::move(a));
}

TreeAutomatonPtr universalize(TreeAutomatonPtr a, std::uint64_t cap) {
    if (a->kind() == TaKind::Universal) return a;
    return dual(nondeterminize(dual(std::move(a)), cap));
}

TreeAutomatonPtr project(TreeAutomatonPtr a, const std::string& p, ProjectionMode mode) {
    if (mode == ProjectionMode::Existential && a->kind() != TaKind::Nondeterministic)
        throw Error(ErrorCode::ModeMismatch, "existential projection needs a nondeterministic automaton");
    if (mode == ProjectionMode::Universal && a->kind() != TaKind::Universal)
        throw Error(ErrorCode::ModeMismatch, "universal projection needs a universal automaton");
    return std::make_shared<ProjectView>(std::move(a), p, mode);
}

std::size_t letter_of(const Alphabet& a, const Wks& k, int state) {
    std::vector<Rat> vals;
    for (const auto& atom : a.atoms) {
        auto it = std::find(k.aps.begin(), k.aps.end(), atom);
        vals.push_back(it == k.aps.end() ? Rat(0) : k.labels[state][static_cast<std::size_t>(it - k.aps.begin())]);
    }
    return a.encode(vals);
}

AcceptanceGame acceptance_game(TreeAutomaton& a, const Wks& k, std::size_t max_vertices) {
    if (max_vertices == 0) max_vertices = cap_from_env(5'000'000);
    if (!(Directions::of(k) == a.dirs()))
        throw Error(ErrorCode::AlphabetMismatch, "structure and automaton disagree on directions");
    AcceptanceGame out;
    ParityGame& g = out.game;
    const int yes = g.add_vertex(kEven, 0, "true");
    g.add_edge(yes, yes);
    const int no = g.add_vertex(kEven, 1, "false");
    g.add_edge(no, no);

    std::vector<std::size_t> letters;
    for (std::size_t s = 0; s < k.states.size(); ++s) letters.push_back(letter_of(a.alphabet(), k, static_cast<int>(s)));

    std::map<std::pair<int, int>, int> pos;
    std::vector<std::pair<int, int>> todo;
    auto check = [&]() {
        if (static_cast<std::size_t>(g.size()) > max_vertices)
            throw Error(ErrorCode::ResourceCap, "acceptance game exceeds " + std::to_string(max_vertices) + " vertices");
    };
    auto position = [&](int s, int q) {
        auto [it, fresh] = pos.emplace(std::make_pair(s, q), g.size());
        if (fresh) {
            g.add_vertex(kEven, a.priority(q), k.states[s] + "/" + std::to_string(q));
            todo.push_back({s, q});
            check();
        }
        return it->second;
    };
    auto build = [&](auto&& self, const Pbf& f, int s) -> int {
        switch (f.kind) {
            case Pbf::Kind::True: return yes;
            case Pbf::Kind::False: return no;
            case Pbf::Kind::Atom: return position(f.move.dir == kStay ? s : f.move.dir, f.move.state);
            default: {
                int v = g.add_vertex(f.kind == Pbf::Kind::Or ? kEven : kOdd, 0);
                check();
                for (const auto& kid : f.kids) {
                    int w = self(self, kid, s);
                    g.add_edge(v, w);
                }
                return v;
            }
        }
    };
    out.initial = position(k.initial, a.initial());
    while (!todo.empty()) {
        auto [s, q] = todo.back();
        todo.pop_back();
        int v = pos.at({s, q});
        Pbf f = a.delta(q, letters[s], s);
        g.add_edge(v, build(build, f, s));
    }
    out.positions = pos.size();
    return out;
}

bool accepts(TreeAutomaton& a, const Wks& k) {
    auto ag = acceptance_game(a, k);
    return solve(ag.game).winner[ag.initial] == kEven;
}

}  // namespace slfmc
