#pragma once

#include <json.hpp>

#include <optional>
#include <string>

namespace slfmc::cli {

struct Common {
    std::optional<std::string> pred;
    std::string mode;
    int horizon = -1;
    std::string dot_dir;
    std::string dialect = "sl";
    std::string base;
    std::string kind = "dpw";
    std::string concept_name = "all";
};

/// Result of one subcommand: the report and the exit status it implies.
struct Outcome {
    nlohmann::json report;
    int status = 0;
};

Outcome cmd_parse(const std::string& formula, const Common& c);
Outcome cmd_values(const std::string& formula, const Common& c);
Outcome cmd_translate(const std::string& game, const std::string& formula, const Common& c);
Outcome cmd_oracle(const std::string& model, const std::string& formula, const Common& c);
Outcome cmd_mc_sl1g(const std::string& game, const std::string& formula, const Common& c);
Outcome cmd_mc_bqctl(const std::string& kripke, const std::string& formula, const Common& c);
Outcome cmd_mc_sl(const std::string& game, const std::string& formula, const Common& c);
Outcome cmd_automaton(const std::string& formula, const Common& c);
Outcome cmd_solve_pg(const std::string& file, const Common& c);
Outcome cmd_examples(const std::string& fixtures_dir, const Common& c);

}  // namespace slfmc::cli
