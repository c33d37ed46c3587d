#pragma once

#include "slfmc/formula.hpp"
#include "slfmc/omega.hpp"
#include "slfmc/parity.hpp"
#include "slfmc/oracle.hpp"
#include "slfmc/structures.hpp"
#include "slfmc/value_set.hpp"

#include <random>
#include <string>
#include <vector>

namespace testsupport {

using namespace slfmc;
using Rng = std::mt19937_64;

std::string fixture(const std::string& name);
Wcgs load_game(const std::string& name);
Wks load_kripke(const std::string& name);

/// Lasso over one proposition (or several, row-major).
LassoWord lasso(const std::vector<std::string>& aps, std::vector<std::vector<Rat>> prefix,
                std::vector<std::vector<Rat>> loop);
LassoWord lasso1(const std::string& ap, std::vector<Rat> prefix, std::vector<Rat> loop);

/// Lasso evaluation straight from the sup/min definition, by unrolling.
Rat direct_lasso_value(const Formula& psi, const LassoWord& w, std::size_t i = 0);

struct LtlGen {
    std::vector<std::string> atoms{"p", "q"};
    bool allow_until = true;
    bool allow_wavg = true;
    std::vector<Rat> constants{Rat(0), Rat(1, 2), Rat(1)};
};
/// Random LTL formula with exactly `size` nodes (approximately for n-ary nodes).
Formula random_ltl(Rng& rng, int size, const LtlGen& gen = {});
LassoWord random_lasso(Rng& rng, const std::vector<std::string>& aps, const ValueSet& values, int max_prefix,
                       int max_loop);

struct GameGen {
    int max_states = 3;
    int agents = 2;
    int actions = 2;
    std::vector<std::string> aps{"p", "q"};
    ValueSet weights{Rat(0), Rat(1)};
};
Wcgs random_game(Rng& rng, const GameGen& gen);
Wks random_kripke(Rng& rng, int max_states, const std::vector<std::string>& aps, const ValueSet& weights);

struct SlGen {
    std::vector<std::string> agents{"a1", "a2"};
    std::vector<std::string> atoms{"p", "q"};
    int max_x = 1;            // X nesting budget
    int max_quant = 2;        // strategy quantifiers
    bool boolean_only = true; // only min/max/neg
    bool closed = true;
};
/// Random closed X-bounded SL state formula.
Formula random_sl(Rng& rng, int size, const SlGen& gen);

/// Random one-goal sentence (prefix + bindings over all agents + A goal).
Formula random_sl1g(Rng& rng, int goal_size, const SlGen& gen, bool nested = false);

struct QctlGen {
    std::vector<std::string> atoms{"p"};
    int max_x = 1;
    int max_exists = 2;
    bool allow_until = false;
};
Formula random_qctl(Rng& rng, int size, const QctlGen& gen);

/// Random NBW over `alphabet`; each (state, letter, target) edge is present
/// with probability `density`.
Nbw random_nbw(Rng& rng, int states, const Alphabet& alphabet, double density = 0.35, double accepting = 0.3);
LetterLasso random_letter_lasso(Rng& rng, std::size_t letters, int max_prefix, int max_loop);

/// Random game without dead ends; out-degrees in [1, max_out].
ParityGame random_parity_game(Rng& rng, int vertices, int max_priority, int max_out);

/// Closed X-bounded QCTL formulas of quantifier nesting at most 2.
const std::vector<std::string>& qctl_corpus();
const std::vector<std::string>& kripke_corpus();
/// Corpus pairs whose formula only uses propositions of the structure.
std::vector<std::pair<Formula, std::string>> qctl_pairs();

}  // namespace testsupport
