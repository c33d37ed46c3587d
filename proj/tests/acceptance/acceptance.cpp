// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "slfmc/bqctl.hpp"
#include "slfmc/error.hpp"
#include "slfmc/omega.hpp"
#include "slfmc/parity.hpp"
#include "slfmc/parser.hpp"
#include "slfmc/sl1g.hpp"
#include "slfmc/translation.hpp"
#include "slfmc/value_set.hpp"
#include "support/support.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace slfmc;
using testsupport::Rng;

namespace {

struct Tally {
    long checks = 0;
    long failures = 0;
    std::string first;

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (ok) return;
        if (failures++ == 0) first = what;
    }
};

Formula sl(const std::string& s) { return parse_formula(s, Dialect::SL); }
Formula ltl(const std::string& s) { return parse_formula(s, Dialect::LTLF); }

Rat exact(const Formula& phi, const Wcgs& g) {
    OracleOptions o;
    o.mode = OracleMode::XBoundedExact;
    return eval_sl(phi, g, o).value;
}

bool boolean_value(const Rat& v) { return v == Rat(0) || v == Rat(1); }

// 1. Boolean weights keep values Boolean and the one-goal checker exact.
void boolean_weights(Tally& t) {
    Rng rng(101);
    testsupport::GameGen gg;
    gg.max_states = 4;
    testsupport::SlGen sg;
    for (int i = 0; i < 200; ++i) {
        Wcgs g = testsupport::random_game(rng, gg);
        g.agents = sg.agents;
        Formula f = testsupport::random_sl(rng, 3 + static_cast<int>(rng() % 8), sg);
        Rat v = exact(f, g);
        t.expect(boolean_value(v), "non-Boolean oracle value for " + print(f));
        try {
            Rat c = check_sl1g(f, g);
            t.expect(c == v, "checker/oracle mismatch on " + print(f));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NotInFragment && e.code() != ErrorCode::OpenCombination) throw;
        }
        Formula s = testsupport::random_sl1g(rng, 1 + static_cast<int>(rng() % 4), sg, i % 3 == 0);
        Rat sv = exact(s, g), sc = check_sl1g(s, g);
        t.expect(boolean_value(sv) && boolean_value(sc), "non-Boolean value for " + print(s));
        t.expect(sv == sc, "checker/oracle mismatch on " + print(s));
    }
}

// 2. Request/grant lassos.
void grant(Tally& t) {
    auto g = ltl("G (req -> avg[2/3](grant, X grant))");
    std::vector<std::string> aps{"req", "grant"};
    auto always = testsupport::lasso(aps, {}, {{Rat(1), Rat(1)}});
    auto single = testsupport::lasso(aps, {}, {{Rat(1), Rat(1)}, {Rat(0), Rat(0)}});
    auto delayed = testsupport::lasso(aps, {}, {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}});
    t.expect(eval_ltlf_lasso(g, always) == Rat(1), "always granted");
    t.expect(eval_ltlf_lasso(g, single) == Rat(2, 3), "single grant");
    t.expect(eval_ltlf_lasso(g, delayed) == Rat(1, 3), "delayed grant");
}

// 3. Value sets bound their size and contain every observed value.
void value_sets(Tally& t) {
    Rng rng(303);
    testsupport::LtlGen gen;
    const std::vector<Rat> pool{Rat(1, 4), Rat(1, 3), Rat(1, 2), Rat(2, 3), Rat(3, 4)};
    for (int i = 0; i < 500; ++i) {
        ValueSet base{Rat(0), Rat(1)};
        for (const auto& r : pool)
            if (rng() % 3 == 0) base.push_back(r);
        base = make_value_set(base);
        Formula f = testsupport::random_ltl(rng, 1 + static_cast<int>(rng() % 7), gen);
        ValueSet vs = value_set(f, base);
        t.expect(size_bound_check(f, base).ok, "size bound for " + print(f));
        for (int k = 0; k < 20; ++k) {
            auto w = testsupport::random_lasso(rng, gen.atoms, base, 2, 3);
            Rat v = eval_ltlf_lasso(f, w);
            t.expect(std::binary_search(vs.begin(), vs.end(), v), "value " + v.str() + " missing for " + print(f));
        }
    }
}

// 4. Below/at/above automata partition lassos and agree with evaluation.
void threshold_partition(Tally& t) {
    Rng rng(404);
    testsupport::LtlGen gen;
    ValueSet base{Rat(0), Rat(1, 2), Rat(1)};
    std::map<std::string, ValueSet> av{{"p", base}, {"q", base}};
    for (int i = 0; i < 50; ++i) {
        Formula f = testsupport::random_ltl(rng, 1 + static_cast<int>(rng() % 6), gen);
        std::vector<LassoWord> words;
        std::vector<Rat> vals;
        for (int k = 0; k < 100; ++k) {
            words.push_back(testsupport::random_lasso(rng, gen.atoms, base, 2, 3));
            vals.push_back(eval_ltlf_lasso(f, words.back()));
        }
        for (const Rat& v : value_set(f, av)) {
            auto th = threshold_automata(f, av, v);
            for (std::size_t k = 0; k < words.size(); ++k) {
                bool b = ngbw_lasso_member(th.below, words[k]);
                bool a = ngbw_lasso_member(th.at, words[k]);
                bool g = ngbw_lasso_member(th.above, words[k]);
                std::string at = print(f) + " at " + v.str() + " on " + words[k].str();
                t.expect(int(b) + int(a) + int(g) == 1, "not a partition: " + at);
                t.expect(b == (vals[k] < v) && a == (vals[k] == v) && g == (vals[k] > v), "membership: " + at);
            }
        }
    }
}

// 5. Determinization preserves the language.
void determinization(Tally& t) {
    Rng rng(505);
    for (int i = 0; i < 50; ++i) {
        Alphabet alpha = i % 2 ? Alphabet::from_map({{"a", {Rat(0), Rat(1)}}})
                               : Alphabet::from_map({{"a", {Rat(0), Rat(1)}}, {"b", {Rat(0), Rat(1)}}});
        auto n = testsupport::random_nbw(rng, 1 + static_cast<int>(rng() % 5), alpha);
        auto d = determinize(n);
        for (int k = 0; k < 1000; ++k) {
            auto w = testsupport::random_letter_lasso(rng, alpha.size(), 4, 4);
            t.expect(dpw_lasso_member(d, w) == nbw_lasso_member(n, w), "DPW/NBW disagree on automaton " +
                                                                             std::to_string(i));
        }
    }
}

// 6. Translation to branching time keeps values.
void translation(Tally& t) {
    Rng rng(606);
    testsupport::GameGen gg;
    gg.weights = {Rat(0), Rat(1, 2), Rat(1)};
    testsupport::SlGen sg;
    for (int i = 0; i < 100; ++i) {
        Wcgs g = testsupport::random_game(rng, gg);
        g.agents = sg.agents;
        Formula f = i % 2 ? testsupport::random_sl1g(rng, 1 + static_cast<int>(rng() % 4), sg)
                          : testsupport::random_sl(rng, 4 + static_cast<int>(rng() % 7), sg);
        auto rep = check_redux(f, g, 0);
        t.expect(!rep.rows.empty() && rep.all_equal, "values differ for " + print(f));
    }
}

std::vector<Formula> goals_over(const std::vector<std::string>& aps) {
    std::vector<Formula> out;
    for (const auto& a : aps) {
        Formula p = fb::atom(a);
        out.push_back(p);
        out.push_back(fb::neg(p));
        out.push_back(fb::next(p));
        out.push_back(fb::next(fb::neg(p)));
        out.push_back(fb::next(fb::next(p)));
        out.push_back(fb::min({p, fb::next(p)}));
        out.push_back(fb::max({p, fb::next(fb::next(p))}));
        out.push_back(fb::min({fb::next(p), fb::neg(fb::next(fb::next(p)))}));
    }
    if (aps.size() >= 2) {
        Formula p = fb::atom(aps[0]), q = fb::atom(aps[1]);
        out.push_back(fb::max({fb::next(p), fb::next(q)}));
        out.push_back(fb::min({fb::next(p), fb::neg(q)}));
    }
    return out;
}

// Every ordering and polarity of one variable per agent, plus all agents on one variable.
std::vector<Formula> sentences_over(const Wcgs& g, const Formula& goal) {
    std::vector<Formula> out;
    std::size_t n = g.agents.size();
    std::vector<int> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<int>(i);
    do {
        for (unsigned pol = 0; pol < (1u << n); ++pol) {
            Formula body = fb::path_a(goal);
            for (std::size_t i = n; i-- > 0;) body = fb::bind(g.agents[i], "x" + std::to_string(i), body);
            for (std::size_t k = n; k-- > 0;) {
                std::string x = "x" + std::to_string(order[k]);
                body = (pol >> k) & 1u ? fb::exists_strat(x, body) : fb::forall_strat(x, body);
            }
            out.push_back(body);
        }
    } while (std::next_permutation(order.begin(), order.end()));
    for (bool e : {true, false}) {
        Formula body = fb::path_a(goal);
        for (std::size_t i = n; i-- > 0;) body = fb::bind(g.agents[i], "z", body);
        out.push_back(e ? fb::exists_strat("z", body) : fb::forall_strat("z", body));
    }
    return out;
}

// 7. One-goal checker against the oracle on fixtures, and single plays against lasso evaluation.
void one_goal(Tally& t) {
    Wcgs mp = testsupport::load_game("matching_pennies.json");
    t.expect(check_sl1g(sl("<<x>> [[y]] (c,x) (e,y) A X win"), mp) == Rat(0), "pennies exists-forall");
    t.expect(check_sl1g(sl("[[y]] <<x>> (c,x) (e,y) A X win"), mp) == Rat(1), "pennies forall-exists");

    for (const char* name : {"choice.json", "matching_pennies.json", "ne_game.json", "weights_cycle.json",
                             "limit_cycle.json", "one_state.json", "drones.json"}) {
        Wcgs g = testsupport::load_game(name);
        auto goals = goals_over(g.aps);
        if (g.agents.size() > 2) goals.resize(std::min<std::size_t>(goals.size(), 6));
        for (const auto& goal : goals)
            for (const auto& s : sentences_over(g, goal))
                t.expect(check_sl1g(s, g) == exact(s, g), std::string(name) + ": " + print(s));
    }

    // Single-play structures: one agent with one action.
    Rng rng(707);
    testsupport::GameGen gg;
    gg.agents = 1;
    gg.actions = 1;
    gg.max_states = 5;
    gg.aps = {"w"};
    gg.weights = {Rat(0), Rat(1, 5), Rat(3, 10), Rat(1, 2), Rat(7, 10), Rat(1)};
    std::vector<Wcgs> plays{testsupport::load_game("weights_cycle.json"), testsupport::load_game("limit_cycle.json")};
    for (int i = 0; i < 60; ++i) plays.push_back(testsupport::random_game(rng, gg));
    Formula w = fb::atom("w");
    for (const auto& g : plays) {
        Strategy only = Strategy::make_memoryless(std::vector<int>(g.states.size(), 0));
        LassoWord word = play_lasso(g, {&only});
        for (const Formula& goal : {fb::always(w), fb::eventually(fb::always(w)), fb::always(fb::eventually(w)),
                                    fb::eventually(w)}) {
            Formula s = fb::exists_strat("x", fb::bind(g.agents[0], "x", fb::path_a(goal)));
            t.expect(check_sl1g(s, g) == eval_ltlf_lasso(goal, word), "single play: " + print(goal));
        }
    }
}

Rat tree_oracle(const Formula& phi, const Wks& k) {
    TreeOptions o;
    o.mode = TreeMode::XBoundedExact;
    return eval_bqctl(phi, unfold_wks(k, temporal_depth(phi).value()), 0, o).value;
}

// 8. Branching-time checker against the tree oracle, with the threshold partition.
void branching(Tally& t) {
    auto pairs = testsupport::qctl_pairs();
    t.expect(pairs.size() >= 50, "corpus has " + std::to_string(pairs.size()) + " pairs");
    for (const auto& [phi, name] : pairs) {
        Wks k = testsupport::load_kripke(name);
        std::string at = name + ": " + print(phi);
        Rat expect = tree_oracle(phi, k);
        t.expect(bqctl_value(phi, k) == expect, "value " + at);
        t.expect(nesting_depth(phi) <= 2, "nesting " + at);
        ValueSet base = make_value_set(k.weight_values());
        std::map<std::string, ValueSet> m;
        for (const auto& a : k.aps) m[a] = base;
        for (const auto& b : bound_props(phi)) m[b] = {Rat(0), Rat(1)};
        for (const Rat& v : value_set(phi, m)) {
            bool below = check_wks(phi, k, Predicate::less(v));
            bool eq = check_wks(phi, k, Predicate::point(v));
            bool above = check_wks(phi, k, Predicate::greater(v));
            t.expect(int(below) + int(eq) + int(above) == 1, "partition " + at + " at " + v.str());
            t.expect(below == (expect < v) && eq == (expect == v) && above == (expect > v),
                     "threshold " + at + " at " + v.str());
        }
    }
}

std::vector<Strategy> all_memoryless(const Wcgs& g) {
    std::vector<Strategy> out;
    std::size_t n = g.states.size();
    std::vector<int> choice(n, 0);
    while (true) {
        out.push_back(Strategy::make_memoryless(choice));
        std::size_t i = 0;
        while (i < n && ++choice[i] == static_cast<int>(g.actions.size())) choice[i++] = 0;
        if (i == n) break;
    }
    return out;
}

// Value of an X-bounded goal when agent `dev` plays `seq` for the first steps.
Rat deviation_value(const Wcgs& g, const Formula& goal, int depth, const std::vector<Strategy>& prof, int dev,
                    const std::vector<int>& seq) {
    std::vector<std::vector<Rat>> rows;
    int v = g.initial;
    History h{v};
    auto row = [&](int s) {
        std::vector<Rat> r;
        for (const auto& a : g.aps) r.push_back(g.weight(s, a));
        return r;
    };
    for (int step = 0; step < depth; ++step) {
        rows.push_back(row(v));
        std::vector<int> acts;
        for (std::size_t i = 0; i < prof.size(); ++i)
            acts.push_back(static_cast<int>(i) == dev ? seq[step] : prof[i].act(h));
        v = g.step(v, acts);
        h.push_back(v);
    }
    return eval_ltlf_lasso(goal, LassoWord{g.aps, rows, {row(v)}});
}

// 9. Equilibrium checks against brute-force deviations.
void equilibria(Tally& t) {
    std::vector<Wcgs> games{testsupport::load_game("matching_pennies.json"), testsupport::load_game("ne_game.json")};
    Rng rng(909);
    testsupport::GameGen gg;
    gg.max_states = 3;
    gg.weights = {Rat(0), Rat(1, 2), Rat(1)};
    for (int i = 0; i < 10; ++i) {
        games.push_back(testsupport::random_game(rng, gg));
        games.back().agents = {"a1", "a2"};
    }
    for (const auto& g : games) {
        const std::string p0 = g.aps[0], p1 = g.aps.size() > 1 ? g.aps[1] : g.aps[0];
        std::vector<std::pair<Formula, Formula>> goal_pairs{
            {fb::next(fb::atom(p0)), fb::next(fb::neg(fb::atom(p0)))},
            {fb::next(fb::next(fb::atom(p0))), fb::max({fb::atom(p1), fb::next(fb::atom(p1))})},
            {fb::min({fb::next(fb::atom(p0)), fb::next(fb::next(fb::atom(p1)))}), fb::next(fb::atom(p1))}};
        auto strategies = all_memoryless(g);
        for (const auto& [ga, gb] : goal_pairs) {
            concepts::Profile p{g.agents, {"x1", "x2"}, {ga, gb}};
            for (const auto& s1 : strategies)
                for (const auto& s2 : strategies) {
                    std::vector<Strategy> prof{s1, s2};
                    Rat gain(0);
                    for (int i = 0; i < 2; ++i) {
                        int d = temporal_depth(p.goals[i]).value();
                        Rat cur = deviation_value(g, p.goals[i], d, prof, -1, {});
                        std::vector<int> seq(d, 0);
                        while (true) {
                            Rat v = deviation_value(g, p.goals[i], d, prof, i, seq);
                            if (v > cur && v - cur > gain) gain = v - cur;
                            int k = 0;
                            while (k < d && ++seq[k] == static_cast<int>(g.actions.size())) seq[k++] = 0;
                            if (k == d) break;
                        }
                    }
                    auto rep = check_ne_profile(g, p, prof);
                    std::string at = print(ga) + " / " + print(gb);
                    t.expect(rep.verdict == (gain == Rat(0)), "verdict " + at);
                    t.expect(rep.gap == gain, "gap " + at);
                }
        }
    }
}

// 10. Parity solutions carry valid certificates and match brute force.
void parity(Tally& t) {
    Rng rng(1010);
    for (int i = 0; i < 200; ++i) {
        auto g = testsupport::random_parity_game(rng, 1 + static_cast<int>(rng() % 8), 6, 3);
        auto s = solve(g);
        for (int side : {kEven, kOdd})
            t.expect(check_certificate(g, s.strategy_of(side, g), side, s.region(side)),
                     "certificate on game " + std::to_string(i));
        t.expect(s.winner == brute_force_winners(g), "winners on game " + std::to_string(i));
    }
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Tally&)>>> criteria{
        {"Boolean weights", boolean_weights},
        {"grant lassos", grant},
        {"value sets", value_sets},
        {"threshold automata", threshold_partition},
        {"determinization", determinization},
        {"translation", translation},
        {"one-goal checker", one_goal},
        {"branching-time checker", branching},
        {"equilibria", equilibria},
        {"parity certificates", parity},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Tally t;
        auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(t);
        } catch (const std::exception& e) {
            t.expect(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool ok = t.failures == 0 && t.checks > 0;
        failed += !ok;
        std::ostringstream line;
        line << (ok ? "PASS" : "FAIL") << "  " << i + 1 << " " << criteria[i].first << "  (" << t.checks
             << " checks, " << t.failures << " failures, ";
        line.precision(2);
        line << std::fixed << secs << " s)";
        if (!ok) line << "  first: " << t.first;
        std::cout << line.str() << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
