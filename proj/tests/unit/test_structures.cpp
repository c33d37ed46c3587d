#include <doctest.h>

#include "slfmc/error.hpp"
#include "support/support.hpp"

using namespace slfmc;
using testsupport::load_game;

TEST_CASE("loading games") {
    auto one = load_game("one_state.json");
    CHECK(one.states.size() == 1);
    CHECK(one.weight(0, "p") == Rat(1));
    auto mp = load_game("matching_pennies.json");
    CHECK(mp.states.size() == 3);
    CHECK(mp.step(0, {0, 0}) == mp.state_index("win"));
    CHECK(mp.step(0, {0, 1}) == mp.state_index("lose"));
    try {
        load_game("missing_joint.json");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonTotalTransition);
    }
    auto cyc = load_game("limit_cycle.json");
    CHECK(cyc.weight(0, "w") == Rat(3, 10));
    CHECK(cyc.weight(2, "w") == Rat(1, 5));
}

TEST_CASE("schema violations") {
    using nlohmann::json;
    json bad = json::parse(R"({"agents":["a"],"actions":["x"],"states":[{"id":"v","label":{"p":"3/2"}}],
                               "initial":"v","transitions":{"v":{"x":"v"}}})");
    try {
        Wcgs::from_json(bad);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::OutOfRange);
    }
    json dangling = json::parse(R"({"agents":["a"],"actions":["x"],"states":["v"],
                                    "initial":"v","transitions":{"v":{"x":"w"}}})");
    try {
        Wcgs::from_json(dangling);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DanglingReference);
    }
    CHECK_THROWS_AS(Wcgs::from_json(json::parse(R"({"agents":["a"]})")), Error);
}

TEST_CASE("json and dot export") {
    auto mp = load_game("matching_pennies.json");
    auto again = Wcgs::from_json(mp.to_json());
    CHECK(again.delta == mp.delta);
    CHECK(again.labels == mp.labels);
    CHECK(mp.dot().find("digraph") == 0);
    auto k = testsupport::load_kripke("reach_kripke.json");
    CHECK(Wks::from_json(k.to_json()).succ == k.succ);
}

TEST_CASE("outcomes") {
    auto mp = load_game("matching_pennies.json");
    Assignment none;
    auto out = outcomes(none, {0}, mp, 1);
    CHECK(out.size() == 2);  // win and lose
    auto heads = std::make_shared<Strategy>(Strategy::make_memoryless({0, 0, 0}));
    auto tails = std::make_shared<Strategy>(Strategy::make_memoryless({1, 1, 1}));
    Assignment full = none.set("c", heads).set("e", tails);
    auto one = outcomes(full, {0}, mp, 3);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == History{0, 2, 2, 2});
    CHECK(outcomes(none, {0, 1}, mp, 0) == std::vector<History>{{0, 1}});
    auto partial = std::make_shared<Strategy>(Strategy::make_tree({{{0}, 0}}, 1));
    CHECK_THROWS_AS(outcomes(none.set("c", partial).set("e", tails), {0}, mp, 2), Error);
}

TEST_CASE("mealy strategies follow their memory") {
    // Alternate actions: memory flips on every step.
    auto s = Strategy::make_mealy(0, {{1, 1, 1}, {0, 0, 0}}, {{0, 0, 0}, {1, 1, 1}});
    CHECK(s.act({0}) == 0);
    CHECK(s.act({0, 1}) == 1);
    CHECK(s.act({0, 1, 1}) == 0);
}

TEST_CASE("tree unfolding") {
    Wks loop;
    loop.aps = {"p"};
    loop.states = {"s"};
    loop.labels = {{Rat(1, 2)}};
    loop.succ = {{0}};
    auto t = unfold_wks(loop, 2);
    CHECK(t.size() == 3);
    for (std::size_t n = 0; n < t.size(); ++n) CHECK(t.labels[n][0] == Rat(1, 2));

    Wks clique;
    clique.aps = {"p"};
    clique.states = {"a", "b"};
    clique.labels = {{Rat(0)}, {Rat(1)}};
    clique.succ = {{0, 1}, {0, 1}};
    auto t2 = unfold_wks(clique, 1);
    CHECK(t2.size() == 3);
    CHECK(t2.children[0].size() == 2);

    // Labels agree with the last state of every history.
    auto mp = load_game("matching_pennies.json");
    auto kg = game_to_kripke(mp);
    auto t3 = unfold_wks(kg.kripke, 2);
    std::size_t histories = 0;
    std::vector<History> layer{{kg.kripke.initial}};
    for (int d = 0; d <= 2; ++d) {
        histories += layer.size();
        std::vector<History> next;
        for (const auto& h : layer)
            for (int s : kg.kripke.succ[h.back()]) {
                auto e = h;
                e.push_back(s);
                next.push_back(e);
            }
        if (d < 2) layer = next;
    }
    CHECK(t3.size() == histories);
    for (std::size_t n = 0; n < t3.size(); ++n) {
        auto h = t3.path(static_cast<int>(n));
        CHECK(t3.labels[n] == kg.kripke.labels[h.back()]);
        CHECK(t3.find(kg.to_kripke(h)) == static_cast<int>(n));
        CHECK(kg.to_game(kg.to_kripke(h)) == h);
    }
}

TEST_CASE("game to Kripke") {
    auto one = game_to_kripke(load_game("one_state.json"));
    CHECK(one.kripke.states.size() == 1);
    CHECK(one.kripke.weight(0, one.state_props[0]) == Rat(1));
    auto mp = load_game("matching_pennies.json");
    auto kg = game_to_kripke(mp);
    CHECK(kg.kripke.succ[0] == std::vector<int>{1, 2});
    CHECK(kg.kripke.succ[1] == std::vector<int>{1});
    for (std::size_t v = 0; v < mp.states.size(); ++v)
        for (const auto& p : kg.state_props) CHECK(kg.kripke.weight(static_cast<int>(v), p).is_boolean());
    // Fresh names avoid clashes with existing propositions.
    auto clash = mp.with_prop("pv_s0", {Rat(0), Rat(0), Rat(0)});
    auto kc = game_to_kripke(clash);
    CHECK(kc.state_props[0] != "pv_s0");
}
