#include "support/support.hpp"

#include "slfmc/error.hpp"
#include "slfmc/parser.hpp"

#include <functional>

namespace testsupport {

std::string fixture(const std::string& name) { return std::string(SLFMC_FIXTURES) + "/" + name; }
Wcgs load_game(const std::string& name) { return Wcgs::load(fixture(name)); }
Wks load_kripke(const std::string& name) { return Wks::load(fixture(name)); }

LassoWord lasso(const std::vector<std::string>& aps, std::vector<std::vector<Rat>> prefix,
                std::vector<std::vector<Rat>> loop) {
    LassoWord w;
    w.aps = aps;
    w.prefix = std::move(prefix);
    w.loop = std::move(loop);
    return w;
}

LassoWord lasso1(const std::string& ap, std::vector<Rat> prefix, std::vector<Rat> loop) {
    LassoWord w;
    w.aps = {ap};
    for (auto& r : prefix) w.prefix.push_back({r});
    for (auto& r : loop) w.loop.push_back({r});
    return w;
}

namespace {

std::size_t canon(const LassoWord& w, std::size_t i) {
    if (i < w.prefix.size()) return i;
    return w.prefix.size() + (i - w.prefix.size()) % w.loop.size();
}

Rat direct(const Formula& f, const LassoWord& w, std::size_t i) {
    i = canon(w, i);
    switch (f->op) {
        case Op::Atom:
            for (std::size_t k = 0; k < w.aps.size(); ++k)
                if (w.aps[k] == f->name) return w.at(i)[k];
            throw Error(ErrorCode::Schema, "unlabelled atom");
        case Op::Func: {
            std::vector<Rat> args;
            for (const auto& k : f->kids) args.push_back(direct(k, w, i));
            return apply_func(*f->func, args);
        }
        case Op::Next: return direct(f->kids[0], w, i + 1);
        case Op::Until: {
            // Every canonical position reachable from i appears within
            // length() steps, and later repetitions only lower the prefix min.
            Rat best(0), prefix(1);
            for (std::size_t j = i; j < i + w.length(); ++j) {
                best = max(best, min(direct(f->kids[1], w, j), prefix));
                prefix = min(prefix, direct(f->kids[0], w, j));
            }
            return best;
        }
        default: throw Error(ErrorCode::NotInFragment, "not LTL");
    }
}

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

}  // namespace

Rat direct_lasso_value(const Formula& psi, const LassoWord& w, std::size_t i) { return direct(psi, w, i); }

Formula random_ltl(Rng& rng, int size, const LtlGen& gen) {
    if (size <= 1) {
        if (uniform(rng, 0, 5) == 0) return fb::constant(pick(rng, gen.constants));
        return fb::atom(pick(rng, gen.atoms));
    }
    if (size == 2) {
        return uniform(rng, 0, 1) ? fb::neg(random_ltl(rng, 1, gen)) : fb::next(random_ltl(rng, 1, gen));
    }
    int choice = uniform(rng, 0, 7);
    int left = uniform(rng, 1, size - 2);
    int right = size - 1 - left;
    switch (choice) {
        case 0: return fb::neg(random_ltl(rng, size - 1, gen));
        case 1: return fb::next(random_ltl(rng, size - 1, gen));
        case 2: return fb::conj(random_ltl(rng, left, gen), random_ltl(rng, right, gen));
        case 3: return fb::disj(random_ltl(rng, left, gen), random_ltl(rng, right, gen));
        case 4:
            if (gen.allow_wavg)
                return fb::func(FuncSpec::wavg(pick(rng, std::vector<Rat>{Rat(1, 3), Rat(1, 2), Rat(2, 3)})),
                                {random_ltl(rng, left, gen), random_ltl(rng, right, gen)});
            return fb::disj(random_ltl(rng, left, gen), random_ltl(rng, right, gen));
        default:
            if (gen.allow_until) return fb::until(random_ltl(rng, left, gen), random_ltl(rng, right, gen));
            return fb::next(random_ltl(rng, size - 1, gen));
    }
}

LassoWord random_lasso(Rng& rng, const std::vector<std::string>& aps, const ValueSet& values, int max_prefix,
                       int max_loop) {
    LassoWord w;
    w.aps = aps;
    auto row = [&]() {
        std::vector<Rat> r;
        for (std::size_t i = 0; i < aps.size(); ++i) r.push_back(pick(rng, values));
        return r;
    };
    int np = uniform(rng, 0, max_prefix), nl = uniform(rng, 1, max_loop);
    for (int i = 0; i < np; ++i) w.prefix.push_back(row());
    for (int i = 0; i < nl; ++i) w.loop.push_back(row());
    return w;
}

Wcgs random_game(Rng& rng, const GameGen& gen) {
    Wcgs g;
    int n = uniform(rng, 1, gen.max_states);
    for (int i = 0; i < gen.agents; ++i) g.agents.push_back("a" + std::to_string(i + 1));
    for (int i = 0; i < gen.actions; ++i) g.actions.push_back("c" + std::to_string(i));
    for (int i = 0; i < n; ++i) g.states.push_back("v" + std::to_string(i));
    g.aps = gen.aps;
    g.initial = 0;
    for (int i = 0; i < n; ++i) {
        std::vector<Rat> lab;
        for (std::size_t k = 0; k < gen.aps.size(); ++k) lab.push_back(pick(rng, gen.weights));
        g.labels.push_back(lab);
        std::vector<int> row;
        for (int c = 0; c < g.num_joint(); ++c) row.push_back(uniform(rng, 0, n - 1));
        g.delta.push_back(row);
    }
    g.validate();
    return g;
}

Wks random_kripke(Rng& rng, int max_states, const std::vector<std::string>& aps, const ValueSet& weights) {
    Wks k;
    int n = uniform(rng, 1, max_states);
    k.aps = aps;
    for (int i = 0; i < n; ++i) {
        k.states.push_back("s" + std::to_string(i));
        std::vector<Rat> lab;
        for (std::size_t a = 0; a < aps.size(); ++a) lab.push_back(pick(rng, weights));
        k.labels.push_back(lab);
        std::vector<int> succ;
        for (int j = 0; j < n; ++j)
            if (uniform(rng, 0, 1)) succ.push_back(j);
        if (succ.empty()) succ.push_back(uniform(rng, 0, n - 1));
        k.succ.push_back(succ);
    }
    k.validate();
    return k;
}

namespace {

struct SlBuilder {
    Rng& rng;
    const SlGen& gen;
    int fresh = 0;

    Formula fn2(Formula a, Formula b) {
        int c = uniform(rng, 0, gen.boolean_only ? 1 : 3);
        if (c == 0) return fb::conj(a, b);
        if (c == 1) return fb::disj(a, b);
        if (c == 2) return fb::func(FuncSpec::wavg(Rat(1, 3)), {a, b});
        return fb::func(FuncSpec::diff(), {a, b});
    }

    Formula state(int size, std::vector<std::string> vars, int xb, int qb) {
        if (size <= 1) return fb::atom(pick(rng, gen.atoms));
        int c = uniform(rng, 0, 6);
        if (c <= 1 && qb > 0) {
            std::string x = "x" + std::to_string(fresh++);
            vars.push_back(x);
            // Usually bind the fresh variable at once so that it matters.
            Formula body = size > 2 && uniform(rng, 0, 3) > 0
                               ? fb::bind(pick(rng, gen.agents), x, state(size - 2, vars, xb, qb - 1))
                               : state(size - 1, vars, xb, qb - 1);
            return c == 0 ? fb::exists_strat(x, body) : fb::forall_strat(x, body);
        }
        if (c == 2 && !vars.empty()) {
            return fb::bind(pick(rng, gen.agents), pick(rng, vars), state(size - 1, vars, xb, qb));
        }
        if (c == 3) return fb::path_a(path(size - 1, vars, xb, qb));
        if (c == 4) return fb::neg(state(size - 1, vars, xb, qb));
        if (size >= 3) {
            int l = uniform(rng, 1, size - 2);
            return fn2(state(l, vars, xb, qb), state(size - 1 - l, vars, xb, qb));
        }
        return fb::path_a(path(size - 1, vars, xb, qb));
    }

    Formula path(int size, const std::vector<std::string>& vars, int xb, int qb) {
        if (size <= 1) return fb::atom(pick(rng, gen.atoms));
        int c = uniform(rng, 0, 4);
        if (c <= 1 && xb > 0) return fb::next(path(size - 1, vars, xb - 1, qb));
        if (c == 2 && size >= 3) {
            int l = uniform(rng, 1, size - 2);
            return fn2(path(l, vars, xb, qb), path(size - 1 - l, vars, xb, qb));
        }
        if (c == 3) return fb::neg(path(size - 1, vars, xb, qb));
        return state(size, vars, xb, qb);
    }
};

Formula random_goal(Rng& rng, int size, const std::vector<std::string>& atoms, int xb, bool boolean_only) {
    if (size <= 1) return fb::atom(pick(rng, atoms));
    int c = uniform(rng, 0, 4);
    if (c <= 1 && xb > 0) return fb::next(random_goal(rng, size - 1, atoms, xb - 1, boolean_only));
    if (c == 2) return fb::neg(random_goal(rng, size - 1, atoms, xb, boolean_only));
    if (size < 3) return fb::neg(random_goal(rng, size - 1, atoms, xb, boolean_only));
    int l = uniform(rng, 1, size - 2);
    Formula a = random_goal(rng, l, atoms, xb, boolean_only), b = random_goal(rng, size - 1 - l, atoms, xb, boolean_only);
    if (!boolean_only && uniform(rng, 0, 2) == 0) return fb::func(FuncSpec::wavg(Rat(2, 3)), {a, b});
    return uniform(rng, 0, 1) ? fb::conj(a, b) : fb::disj(a, b);
}

}  // namespace

Formula random_sl(Rng& rng, int size, const SlGen& gen) {
    SlBuilder b{rng, gen};
    return b.state(size, {}, gen.max_x, gen.max_quant);
}

Formula random_sl1g(Rng& rng, int goal_size, const SlGen& gen, bool nested) {
    int nq = uniform(rng, 1, static_cast<int>(gen.agents.size()));
    std::vector<std::string> vars;
    static int counter = 0;
    for (int i = 0; i < nq; ++i) vars.push_back("z" + std::to_string(counter++ % 1000));
    Formula goal = random_goal(rng, goal_size, gen.atoms, gen.max_x, gen.boolean_only);
    if (nested) {
        SlGen inner = gen;
        Formula sub = random_sl1g(rng, std::max(1, goal_size - 1), inner, false);
        goal = uniform(rng, 0, 1) ? fb::conj(goal, sub) : fb::disj(fb::next(sub), goal);
    }
    Formula body = fb::path_a(goal);
    for (std::size_t i = gen.agents.size(); i-- > 0;) body = fb::bind(gen.agents[i], pick(rng, vars), body);
    for (int i = nq; i-- > 0;) body = uniform(rng, 0, 1) ? fb::exists_strat(vars[i], body) : fb::forall_strat(vars[i], body);
    return body;
}

Formula random_qctl(Rng& rng, int size, const QctlGen& gen) {
    std::function<Formula(int, std::vector<std::string>, int, int)> state, path;
    int fresh = 0;
    state = [&](int n, std::vector<std::string> atoms, int xb, int eb) -> Formula {
        if (n <= 1) return fb::atom(pick(rng, atoms));
        int c = uniform(rng, 0, 5);
        if (c == 0 && eb > 0) {
            std::string p = "r" + std::to_string(fresh++);
            atoms.push_back(p);
            return fb::exists_prop(p, state(n - 1, atoms, xb, eb - 1));
        }
        if (c <= 2) return fb::path_e(path(n - 1, atoms, xb, eb));
        if (c == 3) return fb::neg(state(n - 1, atoms, xb, eb));
        if (n >= 3) {
            int l = uniform(rng, 1, n - 2);
            auto a = state(l, atoms, xb, eb), b = state(n - 1 - l, atoms, xb, eb);
            return uniform(rng, 0, 1) ? fb::conj(a, b) : fb::disj(a, b);
        }
        return fb::path_e(path(n - 1, atoms, xb, eb));
    };
    path = [&](int n, std::vector<std::string> atoms, int xb, int eb) -> Formula {
        if (n <= 1) return fb::atom(pick(rng, atoms));
        int c = uniform(rng, 0, 5);
        if (c <= 1 && xb > 0) return fb::next(path(n - 1, atoms, xb - 1, eb));
        if (c == 2) return fb::neg(path(n - 1, atoms, xb, eb));
        if (c == 3 && n >= 3) {
            int l = uniform(rng, 1, n - 2);
            auto a = path(l, atoms, xb, eb), b = path(n - 1 - l, atoms, xb, eb);
            if (gen.allow_until && uniform(rng, 0, 1)) return fb::until(a, b);
            return uniform(rng, 0, 1) ? fb::conj(a, b) : fb::disj(a, b);
        }
        return state(n, atoms, xb, eb);
    };
    return state(size, gen.atoms, gen.max_x, gen.max_exists);
}

Nbw random_nbw(Rng& rng, int states, const Alphabet& alphabet, double density, double accepting) {
    std::bernoulli_distribution edge(density), acc(accepting);
    Nbw a;
    a.alphabet = alphabet;
    a.num_states = states;
    a.initial = {0};
    if (states > 1 && edge(rng)) a.initial.push_back(uniform(rng, 1, states - 1));
    a.delta.assign(states, std::vector<std::vector<int>>(alphabet.size()));
    a.accepting.assign(states, 0);
    for (int q = 0; q < states; ++q) {
        a.accepting[q] = acc(rng);
        for (std::size_t l = 0; l < alphabet.size(); ++l)
            for (int t = 0; t < states; ++t)
                if (edge(rng)) a.delta[q][l].push_back(t);
    }
    return a;
}

LetterLasso random_letter_lasso(Rng& rng, std::size_t letters, int max_prefix, int max_loop) {
    LetterLasso w;
    int np = uniform(rng, 0, max_prefix), nl = uniform(rng, 1, max_loop);
    for (int i = 0; i < np; ++i) w.prefix.push_back(uniform(rng, 0, static_cast<int>(letters) - 1));
    for (int i = 0; i < nl; ++i) w.loop.push_back(uniform(rng, 0, static_cast<int>(letters) - 1));
    return w;
}

ParityGame random_parity_game(Rng& rng, int vertices, int max_priority, int max_out) {
    ParityGame g;
    for (int v = 0; v < vertices; ++v) g.add_vertex(uniform(rng, 0, 1), uniform(rng, 0, max_priority));
    for (int v = 0; v < vertices; ++v) {
        int k = uniform(rng, 1, std::min(max_out, vertices));
        std::vector<int> targets(vertices);
        for (int t = 0; t < vertices; ++t) targets[t] = t;
        std::shuffle(targets.begin(), targets.end(), rng);
        for (int j = 0; j < k; ++j) g.add_edge(v, targets[j]);
    }
    return g;
}

const std::vector<std::string>& qctl_corpus() {
    static const std::vector<std::string> c = {
        "E X p",
        "E X X q",
        "neg(E X neg(p))",
        "max(neg(p), E X X p)",
        "E X min(p, E X q)",
        "avg[1/2](p, E X q)",
        "E X avg[1/3](p, q)",
        "exists r . min(E X r, E X neg(r))",
        "exists r . min(r, E X neg(r))",
        "exists r . neg(E X neg(max(r, p)))",
        "exists r . min(leq(p, r), E X min(r, q))",
        "exists r . exists s . min(E X min(r, s), E X min(r, neg(s)))",
        "exists r . neg(exists s . min(s, neg(r)))",
        "neg(exists r . min(E X r, neg(E X X r)))",
    };
    return c;
}

const std::vector<std::string>& kripke_corpus() {
    static const std::vector<std::string> c = {"reach_kripke.json", "unreach_kripke.json", "third_kripke.json",
                                               "branch_kripke.json", "chain_kripke.json"};
    return c;
}

std::vector<std::pair<Formula, std::string>> qctl_pairs() {
    std::vector<std::pair<Formula, std::string>> out;
    for (const auto& text : qctl_corpus()) {
        Formula phi = parse_formula(text, Dialect::QCTL);
        for (const auto& name : kripke_corpus()) {
            Wks k = load_kripke(name);
            bool ok = true;
            for (const auto& a : free_props(phi)) ok = ok && k.ap_index(a).has_value();
            if (ok) out.emplace_back(phi, name);
        }
    }
    return out;
}

}  // namespace testsupport
