#include <doctest.h>

#include "slfmc/error.hpp"
#include "slfmc/parser.hpp"
#include "support/support.hpp"

using namespace slfmc;
using testsupport::lasso;
using testsupport::lasso1;
using testsupport::load_game;

namespace {
Formula ltl(const std::string& s) { return parse_formula(s, Dialect::LTLF); }
Formula sl(const std::string& s) { return parse_formula(s, Dialect::SL); }
Formula qctl(const std::string& s) { return parse_formula(s, Dialect::QCTL); }
}  // namespace

TEST_CASE("lasso evaluation: infimum and limit infimum") {
    auto w = lasso1("w", {Rat(3, 10)}, {Rat(7, 10), Rat(1, 5)});
    CHECK(eval_ltlf_lasso(ltl("G w"), w) == Rat(1, 5));
    CHECK(eval_ltlf_lasso(ltl("F G w"), w) == Rat(1, 5));
    auto w2 = lasso1("w", {Rat(1, 10)}, {Rat(7, 10), Rat(1, 2)});
    CHECK(eval_ltlf_lasso(ltl("G w"), w2) == Rat(1, 10));
    CHECK(eval_ltlf_lasso(ltl("F G w"), w2) == Rat(1, 2));
    CHECK(eval_ltlf_lasso(ltl("G F w"), w2) == Rat(7, 10));
}

TEST_CASE("grant example") {
    auto g = ltl("G (req -> avg[2/3](grant, X grant))");
    std::vector<std::string> aps{"req", "grant"};
    auto always = lasso(aps, {}, {{Rat(1), Rat(1)}});
    auto single = lasso(aps, {}, {{Rat(1), Rat(1)}, {Rat(0), Rat(0)}});
    auto delayed = lasso(aps, {}, {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}});
    CHECK(eval_ltlf_lasso(g, always) == Rat(1));
    CHECK(eval_ltlf_lasso(g, single) == Rat(2, 3));
    CHECK(eval_ltlf_lasso(g, delayed) == Rat(1, 3));
}

TEST_CASE("lasso evaluation agrees with the unrolled definition") {
    testsupport::Rng rng(5);
    testsupport::LtlGen gen;
    ValueSet vals{Rat(0), Rat(1, 3), Rat(1, 2), Rat(1)};
    for (int i = 0; i < 500; ++i) {
        auto f = testsupport::random_ltl(rng, 1 + static_cast<int>(rng() % 9), gen);
        auto w = testsupport::random_lasso(rng, gen.atoms, vals, 3, 3);
        auto all = eval_ltlf_lasso_all(f, w);
        for (std::size_t k = 0; k < w.length(); ++k) CHECK(all[k] == testsupport::direct_lasso_value(f, w, k));
        // Negation and F/G dualities, and the until expansion law.
        CHECK(eval_ltlf_lasso(fb::neg(f), w) == Rat(1) - all[0]);
        CHECK(eval_ltlf_lasso(fb::always(f), w) == Rat(1) - eval_ltlf_lasso(fb::eventually(fb::neg(f)), w));
        auto u = fb::until(f, fb::atom("p"));
        auto uv = eval_ltlf_lasso_all(u, w);
        auto pv = eval_ltlf_lasso_all(fb::atom("p"), w);
        for (std::size_t k = 0; k < w.length(); ++k) CHECK(uv[k] == max(pv[k], min(all[k], uv[w.next(k)])));
    }
}

TEST_CASE("SL oracle on small games") {
    auto choice = load_game("choice.json");
    CHECK(eval_sl(sl("<<x>> (a,x) A X p"), choice).value == Rat(1));
    CHECK(eval_sl(sl("[[x]] (a,x) A X p"), choice).value == Rat(0));
    auto mp = load_game("matching_pennies.json");
    CHECK(eval_sl(sl("<<x>> [[y]] (c,x) (e,y) A X win"), mp).value == Rat(0));
    CHECK(eval_sl(sl("[[y]] <<x>> (c,x) (e,y) A X win"), mp).value == Rat(1));
    CHECK(eval_sl(sl("A X win"), mp).value == Rat(0));
    CHECK(eval_sl(sl("neg(A X neg(win))"), mp).value == Rat(1));
    CHECK_THROWS_AS(eval_sl(sl("<<x>> (c,x) A F win"), mp), Error);
    auto approx = eval_sl(sl("<<x>> <<y>> (c,x) (e,y) A F win"), mp, OracleOptions{OracleMode::MemorylessApprox});
    CHECK(approx.value == Rat(1));
    CHECK_FALSE(approx.exact);
    OracleOptions h;
    h.mode = OracleMode::HorizonTree;
    h.horizon = 2;
    CHECK(eval_sl(sl("<<x>> [[y]] (c,x) (e,y) A X win"), mp, h).value == Rat(0));
    h.horizon = 0;
    CHECK_THROWS_AS(eval_sl(sl("<<x>> [[y]] (c,x) (e,y) A X win"), mp, h), Error);
}

TEST_CASE("serial and parallel enumeration agree") {
    testsupport::Rng rng(21);
    testsupport::GameGen gg;
    testsupport::SlGen sg;
    for (int i = 0; i < 40; ++i) {
        auto g = testsupport::random_game(rng, gg);
        auto f = testsupport::random_sl(rng, 2 + static_cast<int>(rng() % 7), sg);
        OracleOptions ser, par;
        ser.parallel = false;
        par.parallel = true;
        try {
            CHECK(eval_sl(f, g, ser).value == eval_sl(f, g, par).value);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::UnboundVariable);
        }
    }
}

TEST_CASE("QCTL oracle on trees") {
    Wks path;
    path.aps = {"q"};
    path.states = {"s"};
    path.labels = {{Rat(0)}};
    path.succ = {{0}};
    auto t = unfold_wks(path, 2);
    CHECK(eval_bqctl(qctl("exists p . E X p"), t).value == Rat(1));
    CHECK(eval_bqctl(qctl("exists p . min(E X p, E X neg(p))"), t).value == Rat(0));

    Wks fork;
    fork.aps = {"q"};
    fork.states = {"r", "a", "b"};
    fork.labels = {{Rat(0)}, {Rat(1, 3)}, {Rat(2, 3)}};
    fork.succ = {{1, 2}, {1}, {2}};
    auto t2 = unfold_wks(fork, 1);
    CHECK(eval_bqctl(qctl("E X q"), t2).value == Rat(2, 3));
    CHECK(eval_bqctl(qctl("A X q"), t2).value == Rat(1, 3));
    CHECK_THROWS_AS(eval_bqctl(qctl("E X X q"), t2), Error);
    TreeOptions win;
    win.mode = TreeMode::Window;
    CHECK(eval_bqctl(qctl("E F q"), t2, 0, win).value == Rat(2, 3));
    CHECK(eval_bqctl(qctl("exists p . min(E X p, E X neg(p))"), t2).value == Rat(1));
}
