#include <doctest.h>

#include "slfmc/error.hpp"
#include "slfmc/tree_automata.hpp"
#include "support/support.hpp"

#include <set>

using namespace slfmc;
using testsupport::Rng;

namespace {

Alphabet bool_alphabet() { return Alphabet::from_map({{"p", {Rat(0), Rat(1)}}}); }

std::shared_ptr<ExplicitApt> make_apt(const Wks& k, TaKind kind = TaKind::Alternating) {
    return std::make_shared<ExplicitApt>(bool_alphabet(), std::make_shared<Directions>(Directions::of(k)), kind);
}

// E G p: some path of p-states.
TreeAutomatonPtr exists_always(const Wks& k) {
    auto a = make_apt(k, TaKind::Nondeterministic);
    a->add_state(0, {Pbf::no(), Pbf::atom(kSome, 0)});
    return a;
}

// A F p.
TreeAutomatonPtr all_eventually(const Wks& k) {
    auto a = make_apt(k, TaKind::Universal);
    a->add_state(1, {Pbf::atom(kAll, 0), Pbf::yes()});
    return a;
}

// A G F p, using stay moves to record the letter in the priority.
TreeAutomatonPtr all_infinitely_often(const Wks& k) {
    auto a = make_apt(k);
    a->add_state(0, {Pbf::atom(kStay, 2), Pbf::atom(kStay, 1)});
    a->add_state(2, {Pbf::atom(kAll, 0), Pbf::atom(kAll, 0)});
    a->add_state(1, {Pbf::atom(kAll, 0), Pbf::atom(kAll, 0)});
    return a;
}

bool is_p(const Wks& k, int s) { return k.weight(s, "p") == Rat(1); }

bool oracle_eg(const Wks& k) {
    std::set<int> good;
    for (std::size_t s = 0; s < k.states.size(); ++s)
        if (is_p(k, static_cast<int>(s))) good.insert(static_cast<int>(s));
    for (bool changed = true; changed;) {
        changed = false;
        for (auto it = good.begin(); it != good.end();) {
            bool keep = false;
            for (int t : k.succ[*it]) keep = keep || good.count(t);
            if (!keep) {
                it = good.erase(it);
                changed = true;
            } else {
                ++it;
            }
        }
    }
    return good.count(k.initial) > 0;
}

bool oracle_af(const Wks& k) {
    std::set<int> win;
    for (std::size_t s = 0; s < k.states.size(); ++s)
        if (is_p(k, static_cast<int>(s))) win.insert(static_cast<int>(s));
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t s = 0; s < k.states.size(); ++s) {
            if (win.count(static_cast<int>(s))) continue;
            bool all = true;
            for (int t : k.succ[s]) all = all && win.count(t);
            if (all) {
                win.insert(static_cast<int>(s));
                changed = true;
            }
        }
    }
    return win.count(k.initial) > 0;
}

// Fails iff a reachable non-p state lies on a non-p cycle.
bool oracle_agf(const Wks& k) {
    std::set<int> reach{k.initial};
    std::vector<int> todo{k.initial};
    while (!todo.empty()) {
        int s = todo.back();
        todo.pop_back();
        for (int t : k.succ[s])
            if (reach.insert(t).second) todo.push_back(t);
    }
    for (int s : reach) {
        if (is_p(k, s)) continue;
        std::set<int> seen;
        std::vector<int> st{s};
        while (!st.empty()) {
            int u = st.back();
            st.pop_back();
            for (int t : k.succ[u]) {
                if (is_p(k, t)) continue;
                if (t == s) return false;
                if (seen.insert(t).second) st.push_back(t);
            }
        }
    }
    return true;
}

Pbf random_pbf(Rng& rng, int states, int depth) {
    std::uniform_int_distribution<int> pick(0, 9);
    int r = pick(rng);
    if (depth == 0 || r < 5) {
        if (r == 0) return Pbf::yes();
        if (r == 1) return Pbf::no();
        int dir = std::vector<int>{kStay, kSome, kAll, kSome, kAll}[std::uniform_int_distribution<int>(0, 4)(rng)];
        return Pbf::atom(dir, std::uniform_int_distribution<int>(0, states - 1)(rng));
    }
    std::vector<Pbf> kids{random_pbf(rng, states, depth - 1), random_pbf(rng, states, depth - 1)};
    return r < 8 ? Pbf::all(std::move(kids)) : Pbf::any(std::move(kids));
}

TreeAutomatonPtr random_apt(Rng& rng, const Wks& k, int states) {
    auto a = make_apt(k);
    for (int q = 0; q < states; ++q)
        a->add_state(std::uniform_int_distribution<int>(0, 3)(rng), {random_pbf(rng, states, 2), random_pbf(rng, states, 2)});
    return a;
}

}  // namespace

TEST_CASE("positive Boolean formulas") {
    auto a = Pbf::atom(0, 1);
    auto b = Pbf::atom(1, 2);
    CHECK(Pbf::all({a, Pbf::yes()}).kind == Pbf::Kind::Atom);
    CHECK(Pbf::all({a, Pbf::no()}).is_false());
    CHECK(Pbf::any({a, Pbf::yes()}).is_true());
    CHECK(dual(Pbf::all({a, b})).kind == Pbf::Kind::Or);
    // (a | b) & a has the single minimal model {a}.
    auto models = to_dnf(Pbf::all({Pbf::any({a, b}), a}), 100);
    REQUIRE(models.size() == 1);
    CHECK(models[0] == std::vector<Move>{a.move});
    CHECK(to_dnf(Pbf::yes(), 10).size() == 1);
    CHECK(to_dnf(Pbf::no(), 10).empty());
    auto e = expand(Pbf::atom(kAll, 0), {3, 4});
    CHECK(to_string(e) == "((3,0) & (4,0))");
    std::vector<Pbf> wide;
    for (int i = 0; i < 8; ++i) wide.push_back(Pbf::any({Pbf::atom(i, 0), Pbf::atom(i, 1)}));
    CHECK_THROWS_AS(to_dnf(Pbf::all(wide), 50), Error);
}

TEST_CASE("hand-written automata against graph algorithms") {
    Rng rng(11);
    for (int round = 0; round < 60; ++round) {
        Wks k = testsupport::random_kripke(rng, 5, {"p"}, {Rat(0), Rat(1)});
        auto eg = exists_always(k);
        auto af = all_eventually(k);
        auto agf = all_infinitely_often(k);
        CHECK(accepts(*eg, k) == oracle_eg(k));
        CHECK(accepts(*af, k) == oracle_af(k));
        CHECK(accepts(*agf, k) == oracle_agf(k));
        CHECK(accepts(*nondeterminize(agf), k) == oracle_agf(k));
        CHECK(accepts(*nondeterminize(af), k) == oracle_af(k));
        CHECK(accepts(*dual(eg), k) == !oracle_eg(k));
    }
}

TEST_CASE("nondeterminization and dualization preserve acceptance") {
    Rng rng(5);
    int accepted = 0;
    for (int round = 0; round < 120; ++round) {
        Wks k = testsupport::random_kripke(rng, 4, {"p"}, {Rat(0), Rat(1)});
        auto a = random_apt(rng, k, 1 + round % 3);
        bool expect = accepts(*a, k);
        accepted += expect;
        auto n = nondeterminize(a);
        CHECK(n->kind() == TaKind::Nondeterministic);
        CHECK(accepts(*n, k) == expect);
        CHECK(accepts(*dual(a), k) == !expect);
        auto u = universalize(a);
        CHECK(u->kind() == TaKind::Universal);
        CHECK(accepts(*u, k) == expect);
        CHECK(nondet_stats(*n).safra_states > 0);
    }
    CHECK(accepted > 10);
    CHECK(accepted < 110);
}

TEST_CASE("projection") {
    // One state with a self loop on p = 0, so projection over p accepts it.
    Wks k;
    k.aps = {"p"};
    k.states = {"s"};
    k.labels = {{Rat(0)}};
    k.succ = {{0}};
    auto a = make_apt(k, TaKind::Nondeterministic);
    // Needs p = 1 everywhere.
    a->add_state(0, {Pbf::no(), Pbf::atom(kSome, 0)});
    CHECK_FALSE(accepts(*a, k));
    auto ex = project(a, "p", ProjectionMode::Existential);
    CHECK(accepts(*ex, k));
    CHECK_THROWS_AS(project(a, "p", ProjectionMode::Universal), Error);
    CHECK_THROWS_AS(project(a, "q", ProjectionMode::Existential), Error);
    auto un = project(universalize(a), "p", ProjectionMode::Universal);
    CHECK_FALSE(accepts(*un, k));
}

TEST_CASE("conjunction of two safety automata") {
    Rng rng(17);
    for (int round = 0; round < 20; ++round) {
        Wks k = testsupport::random_kripke(rng, 4, {"p"}, {Rat(0), Rat(1)});
        auto a = make_apt(k);
        // Root: both conjuncts. q1: always p. q2: some path of p, i.e. E G p.
        a->add_state(0, {Pbf::all({Pbf::atom(kStay, 1), Pbf::atom(kStay, 2)}),
                         Pbf::all({Pbf::atom(kStay, 1), Pbf::atom(kStay, 2)})});
        a->add_state(0, {Pbf::no(), Pbf::atom(kAll, 1)});
        a->add_state(0, {Pbf::no(), Pbf::atom(kSome, 2)});
        bool direct = accepts(*a, k);
        // A G p implies E G p, so the conjunction is A G p.
        bool agp = true;
        std::set<int> seen{k.initial};
        std::vector<int> todo{k.initial};
        while (!todo.empty()) {
            int s = todo.back();
            todo.pop_back();
            agp = agp && is_p(k, s);
            for (int t : k.succ[s])
                if (seen.insert(t).second) todo.push_back(t);
        }
        CHECK(direct == agp);
        CHECK(accepts(*nondeterminize(a), k) == direct);
    }
    auto n = exists_always(testsupport::random_kripke(rng, 2, {"p"}, {Rat(0), Rat(1)}));
    CHECK(nondeterminize(n) == n);
}
