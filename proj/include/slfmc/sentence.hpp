#pragma once

#include "slfmc/formula.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace slfmc {

struct QuantEntry {
    std::string var;
    bool existential = true;
};

/// A one-goal sentence: quantifier prefix, binding prefix, and the goal path
/// formula under the final A. Negations interleaved with the prefix are
/// pushed into quantifier polarities and `goal_negated`.
struct Sentence {
    std::vector<QuantEntry> quants;
    std::vector<std::pair<std::string, std::string>> bindings;  // (agent, var)
    Formula goal;
    bool goal_negated = false;
};

/// Recognises `node` as the root of a one-goal sentence. Returns nullopt when
/// the node does not start a quantifier prefix. Throws NotInFragment when a
/// prefix starts but the shape is wrong, and OpenCombination when a binding
/// uses an unquantified variable or (if `agents` is non-empty) the bindings
/// do not cover every agent exactly once.
std::optional<Sentence> match_sentence(const Formula& node, const std::vector<std::string>& agents = {});

/// Rebuilds the formula denoted by a sentence (prefix, bindings, A goal).
Formula sentence_formula(const Sentence& s);

/// Sentence nesting depth. Throws NotInFragment outside the one-goal grammar.
int sentence_depth(const Formula& f, const std::vector<std::string>& agents = {});

/// True when `f` belongs to the one-goal fragment.
bool is_sl1g(const Formula& f, const std::vector<std::string>& agents = {});

}  // namespace slfmc
