#include "commands.hpp"

#include "slfmc/error.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <functional>
#include <iostream>

#ifndef SLFMC_FIXTURES
#define SLFMC_FIXTURES "fixtures"
#endif

using namespace slfmc;
using namespace slfmc::cli;

namespace {

void add_common(CLI::App* sub, Common& c, bool with_pred = true) {
    if (with_pred) sub->add_option("--pred", c.pred, "predicate such as '>=1/2' or '[0,1/3]|=1'");
    sub->add_option("--dot", c.dot_dir, "directory for DOT artifacts");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Model checker for quantitative strategy logic over weighted game structures"};
    app.require_subcommand(1);
    Common c;
    bool pretty = false;
    std::uint64_t cap = 0;
    std::string fixtures = SLFMC_FIXTURES;
    app.add_flag("--json", pretty, "indent the JSON report");
    app.add_option("--cap-states", cap, "resource cap for automata, games and enumeration (overrides SLF_MC_CAP)");

    std::string a1, a2;
    std::function<Outcome()> job;

    auto* parse = app.add_subcommand("parse", "parse a formula and report its shape");
    parse->add_option("formula", a1, "formula text or file")->required();
    parse->add_option("--dialect", c.dialect, "sl, qctl or ltl");
    parse->callback([&] { job = [&] { return cmd_parse(a1, c); }; });

    auto* values = app.add_subcommand("values", "value set of a formula over a base");
    values->add_option("formula", a1)->required();
    values->add_option("--base", c.base, "comma-separated base values; 0 and 1 are always added");
    values->add_option("--dialect", c.dialect);
    values->callback([&] { job = [&] { return cmd_values(a1, c); }; });

    auto* translate = app.add_subcommand("translate", "translate a strategy formula to a branching-time formula");
    translate->add_option("game", a1)->required();
    translate->add_option("formula", a2)->required();
    add_common(translate, c, false);
    translate->callback([&] { job = [&] { return cmd_translate(a1, a2, c); }; });

    auto* oracle = app.add_subcommand("oracle", "brute-force reference value");
    oracle->add_option("model", a1, "game or Kripke structure")->required();
    oracle->add_option("formula", a2)->required();
    oracle->add_option("--mode", c.mode, "games: exact, memoryless, horizon; Kripke: exact, window");
    oracle->add_option("--horizon", c.horizon, "strategy window or tree depth");
    add_common(oracle, c);
    oracle->callback([&] { job = [&] { return cmd_oracle(a1, a2, c); }; });

    auto* sl1g = app.add_subcommand("mc-sl1g", "exact checker for one-goal sentences");
    sl1g->add_option("game", a1)->required();
    sl1g->add_option("formula", a2)->required();
    add_common(sl1g, c);
    sl1g->callback([&] { job = [&] { return cmd_mc_sl1g(a1, a2, c); }; });

    auto* bq = app.add_subcommand("mc-bqctl", "tree-automata checker for quantified branching-time formulas");
    bq->add_option("kripke", a1)->required();
    bq->add_option("formula", a2)->required();
    bq->add_option("--base", c.base);
    add_common(bq, c);
    bq->callback([&] { job = [&] { return cmd_mc_bqctl(a1, a2, c); }; });

    auto* sl = app.add_subcommand("mc-sl", "translate, then run the tree-automata checker");
    sl->add_option("game", a1)->required();
    sl->add_option("formula", a2)->required();
    sl->add_option("--base", c.base);
    add_common(sl, c);
    sl->callback([&] { job = [&] { return cmd_mc_sl(a1, a2, c); }; });

    auto* aut = app.add_subcommand("automaton", "word automaton for a temporal formula and predicate");
    aut->add_option("formula", a1)->required();
    aut->add_option("--base", c.base);
    aut->add_option("--kind", c.kind, "ngbw, nbw or dpw");
    add_common(aut, c);
    aut->callback([&] { job = [&] { return cmd_automaton(a1, c); }; });

    auto* pg = app.add_subcommand("solve-pg", "solve a parity game in PGSolver format");
    pg->add_option("file", a1)->required();
    add_common(pg, c, false);
    pg->callback([&] { job = [&] { return cmd_solve_pg(a1, c); }; });

    auto* ex = app.add_subcommand("examples", "value table for the bundled solution-concept examples");
    ex->add_option("--concept", c.concept_name, "NE, SE, wRS, sRS, core, drones or all");
    ex->add_option("--fixtures", fixtures, "directory holding the example games");
    add_common(ex, c, false);
    ex->callback([&] { job = [&] { return cmd_examples(fixtures, c); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }
    if (cap > 0) setenv("SLF_MC_CAP", std::to_string(cap).c_str(), 1);

    try {
        Outcome out = job();
        std::cout << out.report.dump(pretty ? 2 : -1) << "\n";
        return out.status;
    } catch (const Error& e) {
        nlohmann::json err{{"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}};
        std::cout << err.dump(pretty ? 2 : -1) << "\n";
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        nlohmann::json err{{"error", {{"code", "Internal"}, {"message", e.what()}}}};
        std::cout << err.dump(pretty ? 2 : -1) << "\n";
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
