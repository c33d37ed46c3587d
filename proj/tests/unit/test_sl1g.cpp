#include <doctest.h>

#include "slfmc/error.hpp"
#include "slfmc/parser.hpp"
#include "slfmc/sl1g.hpp"
#include "support/support.hpp"

#include <functional>
#include <set>

using namespace slfmc;
using testsupport::Rng;

namespace {

Formula sl(const std::string& s) { return parse_formula(s, Dialect::SL); }

Rat oracle(const Formula& phi, const Wcgs& g) {
    OracleOptions o;
    o.mode = OracleMode::XBoundedExact;
    return eval_sl(phi, g, o).value;
}

Dpw goal_dpw(const Formula& goal, const Wcgs& g, const Rat& v) {
    std::set<std::string> atoms;
    std::function<void(const Formula&)> walk = [&](const Formula& f) {
        if (f->op == Op::Atom) atoms.insert(f->name);
        for (const auto& k : f->kids) walk(k);
    };
    walk(goal);
    std::map<std::string, ValueSet> m;
    for (const auto& a : atoms) {
        std::vector<Rat> vs;
        for (std::size_t s = 0; s < g.states.size(); ++s) vs.push_back(g.weight(static_cast<int>(s), a));
        m[a] = make_value_set(vs);
    }
    return determinize(degeneralize(ltlf_to_ngbw(goal, m, Predicate::at_least(v))));
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

}  // namespace

TEST_CASE("prefix normalization") {
    auto one = normalize_prefix({{"x", true}});
    REQUIRE(one.size() == 1);
    CHECK(one[0].var == "x");
    auto two = normalize_prefix({{"x", true}, {"y", true}});
    REQUIRE(two.size() == 3);
    CHECK(two[1].dummy);
    CHECK_FALSE(two[1].existential);
    CHECK(two[2].var == "y");
    auto multi = normalize_prefix({{"x1", true}, {"y1", false}, {"x2", true}, {"y2", false}});
    CHECK(multi.size() == 4);
    for (const auto& e : multi) CHECK_FALSE(e.dummy);
    auto lead = normalize_prefix({{"y", false}});
    REQUIRE(lead.size() == 2);
    CHECK(lead[0].dummy);
    CHECK(lead[0].existential);
    CHECK_THROWS_AS(normalize_prefix({{"x", true}}, {{"a", "z"}}), Error);
    // Unbound variables are dropped.
    CHECK(normalize_prefix({{"x", true}, {"u", false}}, {{"a", "x"}}).size() == 1);
}

TEST_CASE("product game") {
    Wcgs g = testsupport::load_game("matching_pennies.json");
    Dpw d = goal_dpw(fb::eventually(fb::atom("win")), g, Rat(1));
    auto prefix = normalize_prefix({{"x", true}, {"y", false}});
    Cmpg c = build_cmpg(g, prefix, {{"c", "x"}, {"e", "y"}}, d);
    CHECK(c.size() == 3 * d.num_states);
    for (int s = 0; s < c.size(); ++s) CHECK(c.priority[s] == d.priority[c.dpw_state(s)]);
    CHECK(c.num_joint() == 4);
    CHECK_THROWS_AS(build_cmpg(g, prefix, {{"c", "x"}}, d), Error);

    Wcgs w = testsupport::load_game("weights_cycle.json");
    Wcgs single = w;
    single.states = {"s"};
    single.labels = {{Rat(1)}};
    single.delta = {{0}};
    single.initial = 0;
    Dpw one = goal_dpw(fb::atom("w"), single, Rat(1));
    if (one.num_states == 1) CHECK(build_cmpg(single, normalize_prefix({{"x", true}}), {{"a", "x"}}, one).size() == 1);
}

TEST_CASE("matching pennies") {
    Wcgs g = testsupport::load_game("matching_pennies.json");
    auto ea = sl("<<x>> [[y]] (c,x) (e,y) A X win");
    auto ae = sl("[[y]] <<x>> (c,x) (e,y) A X win");
    CHECK(check_sl1g(ea, g) == Rat(0));
    CHECK(check_sl1g(ae, g) == Rat(1));
    CHECK(oracle(ea, g) == Rat(0));
    CHECK(oracle(ae, g) == Rat(1));
    auto r = check_sl1g_report(ae, g);
    CHECK(r.runs.front().win);
    CHECK_FALSE(r.has_witness);  // the leading player is a placeholder
}

TEST_CASE("reachability and infimum") {
    Wcgs choice = testsupport::load_game("choice.json");
    auto reach = sl("<<x>> (a,x) A F p");
    auto r = check_sl1g_report(reach, choice);
    CHECK(r.value == Rat(1));
    REQUIRE(r.has_witness);
    LassoWord w = play_lasso(choice, {&r.witness.strategy});
    CHECK(eval_ltlf_lasso(fb::eventually(fb::atom("p")), w) == Rat(1));
    CHECK(check_sl1g(sl("[[x]] (a,x) A F p"), choice) == Rat(0));

    Wcgs cyc = testsupport::load_game("weights_cycle.json");
    auto always = sl("<<x>> (a,x) A G w");
    CHECK(check_sl1g(always, cyc) == Rat(3, 10));
    Strategy go = Strategy::make_memoryless({0, 0});
    CHECK(eval_ltlf_lasso(fb::always(fb::atom("w")), play_lasso(cyc, {&go})) == Rat(3, 10));
    CHECK(check_sl1g(sl("<<x>> (a,x) A F w"), cyc) == Rat(7, 10));
}

TEST_CASE("state formulas around sentences") {
    Wcgs choice = testsupport::load_game("choice.json");
    auto f = sl("min(neg(p), <<x>> (a,x) A X p)");
    CHECK(check_sl1g(f, choice) == Rat(1));
    CHECK(check_sl1g(f, choice) == oracle(f, choice));
    // A sentence nested in a goal is replaced by its per-state values.
    auto nested = sl("<<x>> (a,x) A X (<<y>> (a,y) A q)");
    auto r = check_sl1g_report(nested, choice);
    CHECK(r.value == Rat(1));
    REQUIRE(r.inner.size() == 1);
    CHECK(r.depth == 2);
    CHECK_THROWS_AS(check_sl1g(sl("<<x>> (a,x) A X p"), testsupport::load_game("matching_pennies.json")), Error);
}

TEST_CASE("agreement with the strategy oracle") {
    Rng rng(99);
    testsupport::GameGen gg;
    gg.weights = {Rat(0), Rat(1, 2), Rat(1)};
    testsupport::SlGen sg;
    sg.agents = {"a1", "a2"};
    sg.max_x = 1;
    int checked = 0, fractional = 0;
    for (int round = 0; round < 60; ++round) {
        Wcgs g = testsupport::random_game(rng, gg);
        g.agents = sg.agents;
        Formula phi = testsupport::random_sl1g(rng, 2 + round % 4, sg, round % 3 == 0);
        CAPTURE(print(phi));
        Rat expect = oracle(phi, g);
        auto r = check_sl1g_report(phi, g, Sl1gOptions{true, 0});
        CHECK(r.value == expect);
        fractional += expect != Rat(0) && expect != Rat(1);
        ++checked;
        // Wins form a down-closed set of thresholds.
        bool lost = false;
        for (const auto& run : r.runs) {
            if (!run.win) lost = true;
            CHECK_FALSE((run.win && lost && run.threshold > r.value));
        }
        for (const auto& run : r.runs) CHECK(run.win == (run.threshold <= r.value));
        // Inner sentences agree with the oracle at every state.
        for (const auto& in : r.inner) {
            Formula s = sl(in.sentence);
            for (std::size_t v = 0; v < g.states.size(); ++v) {
                Wcgs h = g;
                h.initial = static_cast<int>(v);
                CHECK(in.per_state[v] == oracle(s, h));
            }
        }
    }
    CHECK(checked == 60);
    CHECK(fractional > 0);
}

TEST_CASE("witness replay") {
    Rng rng(7);
    testsupport::GameGen gg;
    gg.max_states = 3;
    for (int round = 0; round < 25; ++round) {
        Wcgs g = testsupport::random_game(rng, gg);
        g.agents = {"a1", "a2"};
        Formula goal = round % 2 ? fb::eventually(fb::atom("p"))
                                 : fb::always(fb::max({fb::atom("p"), fb::next(fb::atom("q"))}));
        auto phi = fb::exists_strat("x", fb::forall_strat("y", fb::bind("a1", "x", fb::bind("a2", "y", fb::path_a(goal)))));
        auto r = check_sl1g_report(phi, g);
        REQUIRE(r.has_witness);
        for (const auto& opp : all_memoryless(g)) {
            LassoWord w = play_lasso(g, {&r.witness.strategy, &opp});
            CHECK(eval_ltlf_lasso(goal, w) >= r.value);
        }
    }
}

TEST_CASE("Nash profiles") {
    // Agent b gains by switching its action at the start.
    Wcgs g = Wcgs::from_json(nlohmann::json::parse(R"({
      "agents": ["a", "b"], "actions": ["l", "r"],
      "states": [{"id": "s", "label": {"ga": 0, "gb": 0}},
                 {"id": "u", "label": {"ga": 1, "gb": 0}},
                 {"id": "t", "label": {"ga": 1, "gb": 1}}],
      "initial": "s",
      "transitions": {"s": {"*,l": "u", "*,r": "t"}, "u": {"*,*": "u"}, "t": {"*,*": "t"}}})"));
    concepts::Profile p{{"a", "b"}, {"x", "y"}, {fb::eventually(fb::atom("ga")), fb::eventually(fb::atom("gb"))}};
    auto bad = check_ne_profile(g, p, {Strategy::make_memoryless({0, 0, 0}), Strategy::make_memoryless({0, 0, 0})});
    CHECK_FALSE(bad.verdict);
    CHECK(bad.gap == Rat(1));
    auto good = check_ne_profile(g, p, {Strategy::make_memoryless({0, 0, 0}), Strategy::make_memoryless({1, 0, 0})});
    CHECK(good.verdict);
    CHECK(good.gap == Rat(0));
    CHECK(good.current == std::vector<Rat>{Rat(1), Rat(1)});
}

TEST_CASE("deviation gain matches enumeration") {
    Rng rng(31);
    testsupport::GameGen gg;
    gg.weights = {Rat(0), Rat(1, 4), Rat(1, 2), Rat(1)};
    for (int round = 0; round < 20; ++round) {
        Wcgs g = testsupport::random_game(rng, gg);
        g.agents = {"a1", "a2"};
        concepts::Profile p{{"a1", "a2"}, {"x1", "x2"}, {fb::eventually(fb::atom("p")), fb::always(fb::atom("q"))}};
        auto strategies = all_memoryless(g);
        std::vector<Strategy> prof{strategies[round % strategies.size()], strategies[(round * 7) % strategies.size()]};
        auto rep = check_ne_profile(g, p, prof);
        Rat gain(0);
        for (int i = 0; i < 2; ++i) {
            LassoWord base = play_lasso(g, {&prof[0], &prof[1]});
            Rat cur = eval_ltlf_lasso(p.goals[i], base);
            CHECK(rep.current[i] == cur);
            for (const auto& dev : strategies) {
                std::vector<const Strategy*> ps{&prof[0], &prof[1]};
                ps[i] = &dev;
                Rat v = eval_ltlf_lasso(p.goals[i], play_lasso(g, ps));
                if (v > cur && v - cur > gain) gain = v - cur;
            }
        }
        // Reachability and safety are won without memory in one-player games.
        CHECK(rep.gap == gain);
    }
}

TEST_CASE("alternating prefixes against the strategy oracle") {
    Rng rng(5);
    testsupport::LtlGen lg;
    lg.allow_until = false;
    int fractional = 0;
    for (int agents : {2, 3}) {
        testsupport::GameGen gg;
        gg.weights = {Rat(0), Rat(1, 2), Rat(1)};
        gg.agents = agents;
        for (int round = 0; round < 60; ++round) {
            Wcgs g = testsupport::random_game(rng, gg);
            Formula goal = testsupport::random_ltl(rng, 3 + round % 5, lg);
            if (temporal_depth(goal).value_or(9) > 2) {
                --round;
                continue;
            }
            std::vector<std::string> vars{"x", "y", "z"};
            Formula body = fb::path_a(goal);
            for (int i = agents; i-- > 0;) body = fb::bind(g.agents[i], vars[i], body);
            // Rotate which variable leads and alternate the polarity.
            for (int i = agents; i-- > 0;) {
                const std::string& v = vars[(i + round) % agents];
                body = (i + round / agents) % 2 ? fb::forall_strat(v, body) : fb::exists_strat(v, body);
            }
            CAPTURE(print(body));
            Rat expect = oracle(body, g);
            fractional += expect != Rat(0) && expect != Rat(1);
            CHECK(check_sl1g(body, g) == expect);
        }
    }
    CHECK(fractional > 10);
}
