#pragma once

#include "slfmc/concepts.hpp"
#include "slfmc/formula.hpp"
#include "slfmc/omega.hpp"
#include "slfmc/parity.hpp"
#include "slfmc/sentence.hpp"
#include "slfmc/structures.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace slfmc {

struct PrefixEntry {
    std::string var;
    bool existential = true;
    bool dummy = false;  // inserted by normalization; a single action
};

/// Strictly alternating prefix starting with an existential entry. Throws
/// OpenCombination when a binding names a variable missing from `quants`.
std::vector<PrefixEntry> normalize_prefix(const std::vector<QuantEntry>& quants,
                                          const std::vector<std::pair<std::string, std::string>>& bindings = {});

/// Concurrent multi-player parity game. Players follow the normalized prefix;
/// even indices form the existential team.
struct Cmpg {
    std::vector<PrefixEntry> players;
    std::vector<int> num_actions;           // per player
    std::vector<std::vector<int>> agents;   // structure agents bound to each player
    int num_game_states = 0;                // |V|
    int num_dpw_states = 0;                 // |Q|
    int initial = 0;
    std::vector<int> priority;              // per product state
    std::vector<std::vector<int>> delta;    // [state][joint player action] -> state

    int size() const { return static_cast<int>(priority.size()); }
    int state(int v, int q) const { return v * num_dpw_states + q; }
    int game_state(int s) const { return s / num_dpw_states; }
    int dpw_state(int s) const { return s % num_dpw_states; }
    int num_joint() const;
    std::vector<int> decode(int joint) const;
};

/// Letter of the automaton alphabet read at each state of `g`. Propositions
/// missing from `g` read 0. Throws AlphabetMismatch for values outside the alphabet.
std::vector<std::size_t> state_letters(const Wcgs& g, const Alphabet& a);

/// Product of `g` and `d` with the players of `prefix`. Every agent of `g`
/// must be bound exactly once.
Cmpg build_cmpg(const Wcgs& g, const std::vector<PrefixEntry>& prefix,
                const std::vector<std::pair<std::string, std::string>>& bindings, const Dpw& d);

/// Mealy strategy of player 0 whose memory is the automaton state.
struct Witness {
    std::string var;
    Strategy strategy;
};

struct CmpgSolution {
    bool existential_wins = false;
    Witness witness;                 // meaningful when existential_wins
    ParityGame game;                 // sequentialized game, for export
    int game_vertices = 0;
};

/// Each round the players pick in prefix order, every player seeing the
/// picks made earlier in the round; the turn-based game is then solved.
CmpgSolution solve_cmpg(const Cmpg& c, const Wcgs& g, const Dpw& d);

struct ThresholdRun {
    Rat threshold;
    bool win = false;
    int dpw_states = 0;
    int cmpg_states = 0;
    int game_vertices = 0;
};

struct InnerValues {
    std::string prop;               // fresh proposition replacing the sentence
    std::string sentence;           // printed form
    std::vector<Rat> per_state;
};

struct Sl1gResult {
    Rat value;
    bool has_witness = false;
    Witness witness;                // for the outermost sentence at the best threshold
    std::vector<ThresholdRun> runs;  // outermost sentence, in the order tried
    std::vector<InnerValues> inner;
    int depth = 0;
    double seconds = 0;

    nlohmann::json telemetry_json() const;
};

struct Sl1gOptions {
    bool all_thresholds = false;    // keep going after the first win
    std::size_t dpw_cap = 0;        // 0: SLF_MC_CAP or one million
};

/// Exact value of a closed one-goal formula at the initial state of `g`.
Sl1gResult check_sl1g_report(const Formula& phi, const Wcgs& g, const Sl1gOptions& opts = {});
Rat check_sl1g(const Formula& phi, const Wcgs& g);

/// Deterministic play of `g` under one strategy per agent, as a lasso over
/// the structure's propositions.
LassoWord play_lasso(const Wcgs& g, const std::vector<const Strategy*>& per_agent);

struct NeReport {
    bool verdict = false;           // true iff no profitable unilateral deviation
    Rat gap;                        // largest deviation gain
    std::vector<Rat> current;       // per agent
    std::vector<Rat> best;          // best response value per agent
};

/// Checks a memoryless profile (one strategy per entry of p.agents) against
/// unilateral deviations of arbitrary memory. Goals must be path formulas
/// without strategy quantifiers.
NeReport check_ne_profile(const Wcgs& g, const concepts::Profile& p, const std::vector<Strategy>& profile);

/// `g` with every agent outside `free_agent` fixed to its memoryless strategy.
/// With `free_agent` < 0 a single placeholder agent with one action remains.
Wcgs fix_agents(const Wcgs& g, const std::vector<int>& agents, const std::vector<Strategy>& profile, int free_agent);

}  // namespace slfmc
