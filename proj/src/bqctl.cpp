#include "slfmc/bqctl.hpp"

#include "slfmc/error.hpp"
#include "slfmc/omega.hpp"
#include "slfmc/oracle.hpp"
#include "slfmc/parity.hpp"
#include "slfmc/value_set.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <optional>
#include <tuple>

namespace slfmc {

namespace {

Formula rebuild(const Formula& f, std::vector<Formula> kids) {
    auto n = std::make_shared<Node>(*f);
    n->kids = std::move(kids);
    return n;
}

Formula rename_rec(const Formula& f, std::map<std::string, std::string>& scope, std::vector<std::string>& used) {
    if (f->op == Op::Atom) {
        auto it = scope.find(f->name);
        return it == scope.end() ? f : fb::atom(it->second);
    }
    if (f->op == Op::ExistsProp) {
        std::string name = f->name;
        if (std::find(used.begin(), used.end(), name) != used.end()) name = fresh_name(name, used);
        used.push_back(name);
        auto saved = scope.find(f->name) == scope.end() ? std::nullopt : std::optional<std::string>(scope[f->name]);
        scope[f->name] = name;
        Formula body = rename_rec(f->kids[0], scope, used);
        if (saved) scope[f->name] = *saved;
        else scope.erase(f->name);
        return fb::exists_prop(name, body);
    }
    std::vector<Formula> kids;
    for (const auto& k : f->kids) kids.push_back(rename_rec(k, scope, used));
    return rebuild(f, std::move(kids));
}

ValueSet restrict(const ValueSet& v, const Predicate& p) {
    ValueSet out;
    for (const auto& x : v)
        if (p.contains(x)) out.push_back(x);
    return out;
}

std::string set_str(const ValueSet& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
    return s + "}";
}

struct KeyLess {
    bool operator()(const std::pair<Formula, ValueSet>& a, const std::pair<Formula, ValueSet>& b) const {
        FormulaLess less;
        if (less(a.first, b.first)) return true;
        if (less(b.first, a.first)) return false;
        return a.second < b.second;
    }
};

struct ExistsLess {
    bool operator()(const std::pair<Formula, Rat>& a, const std::pair<Formula, Rat>& b) const {
        FormulaLess less;
        if (less(a.first, b.first)) return true;
        if (less(b.first, a.first)) return false;
        return a.second < b.second;
    }
};

// Delegates to the owner with another initial state.
class RootedView : public TreeAutomaton {
public:
    RootedView(FormulaApt* owner, int q) : TreeAutomaton(owner->alphabet(), owner->dirs_ptr()), owner_(owner), q_(q) {}
    TaKind kind() const override { return TaKind::Alternating; }
    int initial() override { return q_; }
    int priority(int q) override { return owner_->priority(q); }
    Pbf delta(int q, std::size_t letter, int dir) override { return owner_->delta(q, letter, dir); }
    std::string describe(int q) override { return owner_->describe(q); }
    std::size_t num_states() const override { return owner_->num_states(); }

private:
    FormulaApt* owner_;
    int q_;
};

}  // namespace

Formula rename_bound_props(const Formula& phi, std::vector<std::string> taken) {
    std::map<std::string, std::string> scope;
    return rename_rec(phi, scope, taken);
}

struct FormulaApt::Impl {
    enum class Kind { Check, Branch, All, Foreign };
    struct State {
        Kind kind;
        Formula f;       // Check
        ValueSet allowed;  // Check
        int plan = 0;    // Branch / All: E plan; Foreign: automaton index
        int value = 0;   // Branch / All: index into the plan's values
        int inner = 0;   // Branch / All: word automaton state; Foreign: foreign state
    };

    // Eψ with maximal state subformulas replaced by fresh atoms.
    struct EPlan {
        Formula psi;
        std::vector<Formula> parts;
        Alphabet letters;
        std::vector<int> part_of;  // letters.atoms[i] abstracts parts[part_of[i]]
        std::map<std::string, ValueSet> part_values;
        ValueSet values;
        std::map<int, Nbw> equal;
        std::map<int, Ubw> above;
    };

    struct Level {
        LevelStats info;
        TreeAutomatonPtr nondet_exists;
        TreeAutomatonPtr nondet_forall;
    };

    FormulaApt* self;
    ValueSet base;
    std::uint64_t cap;
    std::map<std::string, ValueSet> atom_values;
    std::map<Formula, ValueSet, FormulaLess> sets;
    std::vector<State> states;
    std::map<std::pair<Formula, ValueSet>, int, KeyLess> checks;
    std::map<std::tuple<int, int, int, int>, int> walkers;  // (kind, plan, value, inner)
    std::map<std::pair<int, int>, int> foreign_states;
    std::vector<TreeAutomatonPtr> foreign;
    std::map<std::pair<Formula, Rat>, std::pair<int, int>, ExistsLess> exists_cache;
    std::vector<EPlan> plans;
    std::map<Formula, int, FormulaLess> plan_ids;
    std::vector<Level> levels;
    std::map<std::tuple<int, std::size_t, int>, Pbf> memo;
    std::vector<std::vector<Rat>> decoded;
    std::map<std::string, std::size_t> column;

    const ValueSet& values_of(const Formula& f) {
        auto it = sets.find(f);
        if (it == sets.end()) it = sets.emplace(f, value_set(f, atom_values)).first;
        return it->second;
    }

    const std::vector<Rat>& letter_values(std::size_t letter) {
        if (decoded.empty()) decoded.resize(self->alphabet().size());
        auto& d = decoded[letter];
        if (d.empty()) d = self->alphabet().decode(letter);
        return d;
    }

    int add(State s) {
        states.push_back(std::move(s));
        if (states.size() > cap)
            throw Error(ErrorCode::ResourceCap, "formula automaton exceeds " + std::to_string(cap) + " states");
        return static_cast<int>(states.size()) - 1;
    }

    int check(const Formula& f, ValueSet allowed) {
        auto key = std::make_pair(f, allowed);
        if (auto it = checks.find(key); it != checks.end()) return it->second;
        int id = add({Kind::Check, f, std::move(allowed)});
        checks.emplace(std::move(key), id);
        return id;
    }

    int walker(Kind k, int plan, int value, int inner) {
        auto key = std::make_tuple(static_cast<int>(k), plan, value, inner);
        if (auto it = walkers.find(key); it != walkers.end()) return it->second;
        int id = add({k, nullptr, {}, plan, value, inner});
        walkers.emplace(key, id);
        return id;
    }

    int foreign_state(int automaton, int q) {
        auto key = std::make_pair(automaton, q);
        if (auto it = foreign_states.find(key); it != foreign_states.end()) return it->second;
        int id = add({Kind::Foreign, nullptr, {}, automaton, 0, q});
        foreign_states.emplace(key, id);
        return id;
    }

    Pbf stay_check(const Formula& f, const Rat& v) { return Pbf::atom(kStay, check(f, {v})); }

    // Splits a path formula into its maximal state subformulas.
    Formula abstract(const Formula& f, EPlan& plan) {
        if (f->op == Op::Next || f->op == Op::Until || (f->op == Op::Func && !is_state_formula(f))) {
            std::vector<Formula> kids;
            for (const auto& k : f->kids) kids.push_back(abstract(k, plan));
            return rebuild(f, std::move(kids));
        }
        for (std::size_t i = 0; i < plan.parts.size(); ++i)
            if (structurally_equal(plan.parts[i], f)) return fb::atom("#" + std::to_string(i));
        plan.parts.push_back(f);
        return fb::atom("#" + std::to_string(plan.parts.size() - 1));
    }

    int plan_of(const Formula& e) {
        if (auto it = plan_ids.find(e); it != plan_ids.end()) return it->second;
        EPlan p;
        p.psi = abstract(e->kids[0], p);
        for (std::size_t i = 0; i < p.parts.size(); ++i) p.part_values["#" + std::to_string(i)] = values_of(p.parts[i]);
        p.letters = Alphabet::from_map(p.part_values);
        for (const auto& a : p.letters.atoms) p.part_of.push_back(std::stoi(a.substr(1)));
        p.values = value_set(p.psi, p.part_values);
        plans.push_back(std::move(p));
        return plan_ids.emplace(e, static_cast<int>(plans.size()) - 1).first->second;
    }

    const Nbw& equal_nbw(int pid, int vi) {
        auto& p = plans[pid];
        auto it = p.equal.find(vi);
        if (it == p.equal.end())
            it = p.equal.emplace(vi, degeneralize(ltlf_to_ngbw(p.psi, p.part_values, Predicate::point(p.values[vi])))).first;
        return it->second;
    }

    const Ubw& above_ubw(int pid, int vi) {
        auto& p = plans[pid];
        auto it = p.above.find(vi);
        if (it == p.above.end())
            it = p.above
                     .emplace(vi, dualize(degeneralize(ltlf_to_ngbw(p.psi, p.part_values, Predicate::greater(p.values[vi])))))
                     .first;
        return it->second;
    }

    // Launches the value checks of a guessed letter of a plan.
    Pbf launches(int pid, std::size_t l) {
        const auto& p = plans[pid];
        auto vals = p.letters.decode(l);
        std::vector<Pbf> parts;
        for (std::size_t i = 0; i < vals.size(); ++i) parts.push_back(stay_check(p.parts[p.part_of[i]], vals[i]));
        return Pbf::all(std::move(parts));
    }

    std::pair<int, int> exists_automata(const Formula& f, const Rat& v, bool top);

    Pbf check_delta(const State& st, std::size_t letter, int dir) {
        const Formula& f = st.f;
        const ValueSet& all = values_of(f);
        if (st.allowed.empty()) return Pbf::no();
        if (st.allowed.size() == all.size()) return Pbf::yes();
        switch (f->op) {
            case Op::Atom: {
                auto it = column.find(f->name);
                if (it == column.end()) throw Error(ErrorCode::AlphabetMismatch, "'" + f->name + "' is not in the alphabet");
                return contains(st.allowed, letter_values(letter)[it->second]) ? Pbf::yes() : Pbf::no();
            }
            case Op::Func: {
                std::vector<const ValueSet*> kid_sets;
                for (const auto& k : f->kids) kid_sets.push_back(&values_of(k));
                std::vector<std::size_t> idx(f->kids.size(), 0);
                std::vector<Rat> args(f->kids.size());
                std::vector<Pbf> options;
                std::uint64_t count = 0;
                while (true) {
                    for (std::size_t i = 0; i < idx.size(); ++i) args[i] = (*kid_sets[i])[idx[i]];
                    if (++count > cap) throw Error(ErrorCode::ResourceCap, "too many argument tuples for " + print(f));
                    if (contains(st.allowed, apply_func(*f->func, args))) {
                        std::vector<Pbf> parts;
                        for (std::size_t i = 0; i < idx.size(); ++i) parts.push_back(stay_check(f->kids[i], args[i]));
                        options.push_back(Pbf::all(std::move(parts)));
                    }
                    std::size_t i = 0;
                    while (i < idx.size() && ++idx[i] == kid_sets[i]->size()) idx[i++] = 0;
                    if (i == idx.size()) break;
                }
                return Pbf::any(std::move(options));
            }
            case Op::PathE: {
                if (is_state_formula(f->kids[0])) {
                    // E of a state formula is the formula itself.
                    ValueSet keep;
                    for (const auto& x : values_of(f->kids[0]))
                        if (contains(st.allowed, x)) keep.push_back(x);
                    return Pbf::atom(kStay, check(f->kids[0], std::move(keep)));
                }
                int pid = plan_of(f);
                std::vector<Pbf> options;
                const ValueSet values = plans[pid].values;
                for (std::size_t vi = 0; vi < values.size(); ++vi) {
                    if (!contains(st.allowed, values[vi])) continue;
                    std::vector<Pbf> some;
                    for (int b : equal_nbw(pid, static_cast<int>(vi)).initial)
                        some.push_back(Pbf::atom(kStay, walker(Kind::Branch, pid, static_cast<int>(vi), b)));
                    std::vector<Pbf> parts{Pbf::any(std::move(some))};
                    if (vi + 1 < values.size())
                        for (int u : above_ubw(pid, static_cast<int>(vi)).initial)
                            parts.push_back(Pbf::atom(kStay, walker(Kind::All, pid, static_cast<int>(vi), u)));
                    options.push_back(Pbf::all(std::move(parts)));
                }
                return Pbf::any(std::move(options));
            }
            case Op::ExistsProp: {
                Formula body = f;
                while (body->op == Op::ExistsProp) body = body->kids[0];
                const ValueSet values = values_of(body);
                std::vector<Pbf> options;
                for (std::size_t vi = 0; vi < values.size(); ++vi) {
                    if (!contains(st.allowed, values[vi])) continue;
                    auto [n, u] = exists_automata(f, values[vi], vi + 1 == values.size());
                    std::vector<Pbf> parts{Pbf::atom(kStay, foreign_state(n, foreign[n]->initial()))};
                    if (u >= 0) parts.push_back(Pbf::atom(kStay, foreign_state(u, foreign[u]->initial())));
                    options.push_back(Pbf::all(std::move(parts)));
                }
                return Pbf::any(std::move(options));
            }
            default: throw Error(ErrorCode::NotInFragment, "not a QCTL state formula: " + print(f));
        }
    }

    Pbf walker_delta(const State& st, int dir) {
        const auto& children = self->dirs().succ.at(dir);
        const std::size_t n = plans[st.plan].letters.size();
        std::vector<Pbf> options;
        if (st.kind == Kind::Branch) {
            const Nbw& a = equal_nbw(st.plan, st.value);
            for (std::size_t l = 0; l < n; ++l) {
                const auto& next = a.delta[st.inner][l];
                if (next.empty()) continue;
                std::vector<Pbf> moves;
                for (int b : next)
                    for (int c : children) moves.push_back(Pbf::atom(c, walker(Kind::Branch, st.plan, st.value, b)));
                options.push_back(Pbf::all({launches(st.plan, l), Pbf::any(std::move(moves))}));
            }
        } else {
            const Ubw& a = above_ubw(st.plan, st.value);
            for (std::size_t l = 0; l < n; ++l) {
                std::vector<Pbf> moves{launches(st.plan, l)};
                for (int u : a.delta[st.inner][l])
                    for (int c : children) moves.push_back(Pbf::atom(c, walker(Kind::All, st.plan, st.value, u)));
                options.push_back(Pbf::all(std::move(moves)));
            }
        }
        return Pbf::any(std::move(options));
    }

    Pbf foreign_delta(const State& st, std::size_t letter, int dir) {
        auto map = [&](auto&& rec, const Pbf& f) -> Pbf {
            switch (f.kind) {
                case Pbf::Kind::True:
                case Pbf::Kind::False: return f;
                case Pbf::Kind::Atom: return Pbf::atom(f.move.dir, foreign_state(st.plan, f.move.state));
                default: {
                    std::vector<Pbf> kids;
                    for (const auto& k : f.kids) kids.push_back(rec(rec, k));
                    return f.kind == Pbf::Kind::And ? Pbf::all(std::move(kids)) : Pbf::any(std::move(kids));
                }
            }
        };
        return map(map, foreign[st.plan]->delta(st.inner, letter, dir));
    }
};

// A block of directly nested quantifiers is projected at once: one
// nondeterminization for the body, one projection per proposition. The upper
// bound is the complement of "some relabeling exceeds v".
std::pair<int, int> FormulaApt::Impl::exists_automata(const Formula& f, const Rat& v, bool top) {
    auto key = std::make_pair(f, v);
    if (auto it = exists_cache.find(key); it != exists_cache.end()) return it->second;
    std::vector<std::string> props;
    Formula body = f;
    while (body->op == Op::ExistsProp) {
        props.push_back(body->name);
        body = body->kids[0];
    }
    Level lvl;
    lvl.info.quantifier = print(f);
    lvl.info.level = block_nesting_depth(f);
    lvl.info.value = v.str();

    auto projected = [&](TreeAutomatonPtr a) {
        for (const auto& p : props) a = project(a, p, ProjectionMode::Existential);
        return a;
    };
    lvl.nondet_exists = nondeterminize(std::make_shared<RootedView>(self, check(body, {v})), cap);
    foreign.push_back(projected(lvl.nondet_exists));
    int n = static_cast<int>(foreign.size()) - 1;
    int u = -1;
    if (!top) {
        auto above = std::make_shared<RootedView>(self, check(body, restrict(values_of(body), Predicate::greater(v))));
        lvl.nondet_forall = nondeterminize(above, cap);
        foreign.push_back(dual(projected(lvl.nondet_forall)));
        u = static_cast<int>(foreign.size()) - 1;
    }
    levels.push_back(std::move(lvl));
    return exists_cache.emplace(key, std::make_pair(n, u)).first->second;
}

namespace {

Alphabet apt_alphabet(const Formula& phi, const ValueSet& base) {
    std::map<std::string, ValueSet> m;
    for (const auto& p : free_props(phi)) m[p] = base;
    for (const auto& p : bound_props(phi)) m[p] = {Rat(0), Rat(1)};
    return Alphabet::from_map(m);
}

}  // namespace

FormulaApt::FormulaApt(const Formula& phi, const ValueSet& base, std::shared_ptr<const Directions> dirs,
                       std::uint64_t cap)
    : TreeAutomaton(apt_alphabet(phi, base), std::move(dirs)), impl_(std::make_unique<Impl>()), phi_(phi) {
    impl_->self = this;
    impl_->base = base;
    impl_->cap = cap == 0 ? cap_from_env(2'000'000) : cap;
    for (std::size_t i = 0; i < alphabet_.atoms.size(); ++i) {
        impl_->atom_values[alphabet_.atoms[i]] = alphabet_.values[i];
        impl_->column[alphabet_.atoms[i]] = i;
    }
}

FormulaApt::~FormulaApt() = default;

int FormulaApt::priority(int q) {
    const auto st = impl_->states.at(q);
    switch (st.kind) {
        case Impl::Kind::Check: return 0;
        case Impl::Kind::Branch: return impl_->equal_nbw(st.plan, st.value).accepting[st.inner] ? 2 : 1;
        case Impl::Kind::All: return impl_->above_ubw(st.plan, st.value).rejecting[st.inner] ? 1 : 0;
        default: return impl_->foreign[st.plan]->priority(st.inner);
    }
}

Pbf FormulaApt::delta(int q, std::size_t letter, int dir) {
    auto key = std::make_tuple(q, letter, dir);
    if (auto it = impl_->memo.find(key); it != impl_->memo.end()) return it->second;
    const auto st = impl_->states.at(q);  // copy: the state table grows below
    Pbf out;
    switch (st.kind) {
        case Impl::Kind::Check: out = impl_->check_delta(st, letter, dir); break;
        case Impl::Kind::Branch:
        case Impl::Kind::All: out = impl_->walker_delta(st, dir); break;
        default: out = impl_->foreign_delta(st, letter, dir); break;
    }
    impl_->memo.emplace(key, out);
    return out;
}

std::string FormulaApt::describe(int q) {
    const auto st = impl_->states.at(q);
    switch (st.kind) {
        case Impl::Kind::Check: return "[" + print(st.f) + " in " + set_str(st.allowed) + "]";
        case Impl::Kind::Branch:
        case Impl::Kind::All:
            return std::string(st.kind == Impl::Kind::Branch ? "branch" : "all") + "#" + std::to_string(st.plan) + "=" +
                   impl_->plans[st.plan].values[st.value].str() + ":" + std::to_string(st.inner);
        default: return "aut" + std::to_string(st.plan) + ":" + impl_->foreign[st.plan]->describe(st.inner);
    }
}

std::size_t FormulaApt::num_states() const { return impl_->states.size(); }

int FormulaApt::check_state(const Formula& f, const Predicate& p) {
    return impl_->check(f, restrict(impl_->values_of(f), p));
}

std::map<std::string, ValueSet> FormulaApt::value_sets() const {
    std::map<std::string, ValueSet> out;
    for (const auto& [f, v] : impl_->sets) out[print(f)] = v;
    return out;
}

std::vector<LevelStats> FormulaApt::level_stats() const {
    std::vector<LevelStats> out;
    for (const auto& l : impl_->levels) {
        LevelStats s = l.info;
        s.existential = nondet_stats(*l.nondet_exists);
        if (l.nondet_forall) s.universal = nondet_stats(*l.nondet_forall);
        out.push_back(s);
    }
    return out;
}

std::size_t FormulaApt::word_automata() const {
    std::size_t n = 0;
    for (const auto& p : impl_->plans) n += p.equal.size() + p.above.size();
    return n;
}

std::shared_ptr<FormulaApt> build_apt(const Formula& phi, const ValueSet& base, std::shared_ptr<const Directions> dirs,
                                      const Predicate& p, std::uint64_t cap) {
    validate(phi, Dialect::QCTL);
    if (!contains(base, Rat(0)) || !contains(base, Rat(1)))
        throw Error(ErrorCode::Schema, "the base value set must contain 0 and 1");
    const auto free = free_props(phi);
    std::vector<std::string> taken(free.begin(), free.end());
    Formula renamed = rename_bound_props(phi, taken);
    auto apt = std::make_shared<FormulaApt>(renamed, base, std::move(dirs), cap);
    apt->set_initial(apt->check_state(renamed, p));
    return apt;
}

namespace {

// Applies log2 `times` times; the result is compared to the formula size.
bool envelope(std::size_t states, int level, std::size_t size, std::size_t base) {
    double x = static_cast<double>(std::max<std::size_t>(states, 2));
    for (int i = 0; i <= level && x > 1; ++i) x = std::log2(x);
    return x <= static_cast<double>(size) * std::log2(static_cast<double>(base) + 1.0) + 1.0;
}

}  // namespace

BqctlResult check_wks_report(const Formula& phi, const Wks& k, const Predicate& p, const ValueSet& base_in,
                             std::uint64_t cap) {
    auto t0 = std::chrono::steady_clock::now();
    for (const auto& a : free_props(phi))
        if (!k.ap_index(a)) throw Error(ErrorCode::Schema, "proposition '" + a + "' does not label the structure");
    ValueSet base = base_in.empty() ? make_value_set(k.weight_values()) : unite(base_in, {Rat(0), Rat(1)});
    auto dirs = std::make_shared<Directions>(Directions::of(k));
    // Quantified propositions must not read the structure's labels.
    std::vector<std::string> taken = k.aps;
    for (const auto& a : free_props(phi)) taken.push_back(a);
    auto apt = build_apt(rename_bound_props(phi, taken), base, dirs, p, cap);
    BqctlResult r;
    try {
        auto ag = acceptance_game(*apt, k, cap);
        r.verdict = solve(ag.game).winner[ag.initial] == kEven;
        r.game_vertices = static_cast<std::size_t>(ag.game.size());
        r.positions = ag.positions;
        r.game = std::move(ag.game);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::ResourceCap) throw;
        std::string msg = e.what();
        for (const auto& l : apt->level_stats())
            msg += "; level " + std::to_string(l.level) + " (" + l.quantifier + " = " + l.value +
                   "): " + std::to_string(l.existential.safra_states) + "/" +
                   std::to_string(l.universal.safra_states) + " states";
        throw Error(ErrorCode::ResourceCap, msg);
    }
    r.apt_states = apt->num_states();
    r.word_automata = apt->word_automata();
    r.levels = apt->level_stats();
    const std::size_t size = formula_size(phi);
    for (const auto& l : r.levels)
        r.envelope_ok = r.envelope_ok && envelope(std::max(l.existential.safra_states, l.universal.safra_states),
                                                  l.level, size, base.size());
    r.envelope_ok = r.envelope_ok && envelope(r.apt_states, 0, size, base.size());
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

bool check_wks(const Formula& phi, const Wks& k, const Predicate& p) { return check_wks_report(phi, k, p).verdict; }

Rat bqctl_value(const Formula& phi, const Wks& k, const ValueSet& base_in) {
    ValueSet base = base_in.empty() ? make_value_set(k.weight_values()) : unite(base_in, {Rat(0), Rat(1)});
    const auto free = free_props(phi);
    std::vector<std::string> taken(free.begin(), free.end());
    std::map<std::string, ValueSet> m;
    for (const auto& a : free_props(phi)) m[a] = base;
    Formula renamed = rename_bound_props(phi, taken);
    for (const auto& a : bound_props(renamed)) m[a] = {Rat(0), Rat(1)};
    ValueSet candidates = value_set(renamed, m);
    for (std::size_t i = 0; i + 1 < candidates.size(); ++i)
        if (check_wks_report(phi, k, Predicate::point(candidates[i]), base).verdict) return candidates[i];
    return candidates.back();
}

std::string BqctlResult::telemetry_json() const {
    nlohmann::json j;
    j["apt_states"] = apt_states;
    j["word_automata"] = word_automata;
    j["game_vertices"] = game_vertices;
    j["positions"] = positions;
    j["envelope_ok"] = envelope_ok;
    j["seconds"] = seconds;
    auto lv = nlohmann::json::array();
    for (const auto& l : levels)
        lv.push_back({{"quantifier", l.quantifier},
                      {"level", l.level},
                      {"value", l.value},
                      {"exists", {{"trace_states", l.existential.trace_states},
                                  {"safra_states", l.existential.safra_states},
                                  {"local_strategies", l.existential.local_strategies}}},
                      {"forall", {{"trace_states", l.universal.trace_states},
                                  {"safra_states", l.universal.safra_states},
                                  {"local_strategies", l.universal.local_strategies}}}});
    j["levels"] = lv;
    return j.dump(2);
}

}  // namespace slfmc
