#pragma once

#include "slfmc/rat.hpp"

#include <json.hpp>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace slfmc {

using History = std::vector<int>;

/// Weighted concurrent game structure. All agents share the action set;
/// joint actions are indexed in mixed radix with agent 0 most significant.
struct Wcgs {
    std::vector<std::string> aps;
    std::vector<std::string> agents;
    std::vector<std::string> actions;
    std::vector<std::string> states;
    int initial = 0;
    std::vector<std::vector<Rat>> labels;  // [state][ap]
    std::vector<std::vector<int>> delta;   // [state][joint] -> state

    int num_joint() const;
    std::vector<int> decode_joint(int joint) const;
    int encode_joint(const std::vector<int>& acts) const;
    int step(int v, const std::vector<int>& acts) const { return delta[v][encode_joint(acts)]; }
    /// Sorted, duplicate-free successor list.
    std::vector<int> successors(int v) const;

    int state_index(const std::string& name) const;
    int agent_index(const std::string& name) const;
    int action_index(const std::string& name) const;
    std::optional<int> ap_index(const std::string& name) const;
    /// Weight of `ap` at `v`; propositions absent from the structure weigh 0.
    Rat weight(int v, const std::string& ap) const;

    /// Throws Schema/NonTotalTransition/OutOfRange/DanglingReference.
    void validate() const;
    bool valid_history(const History& h) const;

    static Wcgs from_json(const nlohmann::json& j);
    static Wcgs load(const std::string& path);
    nlohmann::json to_json() const;
    std::string dot() const;

    /// Returns a copy with an extra proposition (weights per state).
    Wcgs with_prop(const std::string& name, const std::vector<Rat>& weights) const;
};

/// Weighted Kripke structure with a left-total relation.
struct Wks {
    std::vector<std::string> aps;
    std::vector<std::string> states;
    int initial = 0;
    std::vector<std::vector<Rat>> labels;  // [state][ap]
    std::vector<std::vector<int>> succ;    // sorted, nonempty

    int state_index(const std::string& name) const;
    std::optional<int> ap_index(const std::string& name) const;
    Rat weight(int s, const std::string& ap) const;
    /// Distinct weights over all states and propositions, plus 0 and 1.
    std::vector<Rat> weight_values() const;

    void validate() const;
    bool valid_history(const History& h) const;

    static Wks from_json(const nlohmann::json& j);
    static Wks load(const std::string& path);
    nlohmann::json to_json() const;
    std::string dot() const;

    /// The same graph with the initial state moved to `s`.
    Wks rooted_at(int s) const;
    /// Adds (or overwrites) a proposition.
    Wks with_prop(const std::string& name, const std::vector<Rat>& weights) const;
};

/// Finite strategy representations.
struct Strategy {
    enum class Kind { Memoryless, HorizonTree, Mealy };
    Kind kind = Kind::Memoryless;

    std::vector<int> memoryless;       // state -> action
    std::map<History, int> tree;       // history -> action
    int horizon = 0;                   // longest history length covered by `tree`
    int memory_init = 0;               // Mealy: m0
    std::vector<std::vector<int>> update;  // Mealy: [m][v] -> m'
    std::vector<std::vector<int>> output;  // Mealy: [m][v] -> action

    static Strategy make_memoryless(std::vector<int> choice);
    static Strategy make_tree(std::map<History, int> choices, int horizon);
    static Strategy make_mealy(int m0, std::vector<std::vector<int>> update, std::vector<std::vector<int>> output);

    /// Action after history h. Throws StrategyDomain when h is not covered.
    int act(const History& h) const;
    nlohmann::json to_json(const Wcgs& g) const;
};

using StrategyPtr = std::shared_ptr<const Strategy>;

/// Partial map from variables and agents to strategies. Updates copy.
class Assignment {
public:
    Assignment set(const std::string& key, StrategyPtr s) const;
    StrategyPtr get(const std::string& key) const;
    bool has(const std::string& key) const { return map_.count(key) > 0; }
    const std::map<std::string, StrategyPtr>& entries() const { return map_; }

private:
    std::map<std::string, StrategyPtr> map_;
};

/// Length-(|rho|+h) prefixes of the outcomes of chi from rho. Agents outside
/// dom(chi) range over all actions. Sorted and duplicate-free.
std::vector<History> outcomes(const Assignment& chi, const History& rho, const Wcgs& g, int h);

/// Explicit finite tree. Node 0 is the root; `origin` records the structure
/// state a node was unfolded from, so the subtree below a leaf continues as
/// the unfolding from that state.
struct FiniteTree {
    std::vector<std::string> aps;
    std::vector<int> parent;
    std::vector<std::vector<int>> children;
    std::vector<int> depth;
    std::vector<int> origin;
    std::vector<std::vector<Rat>> labels;  // [node][ap]
    int max_depth = 0;

    std::size_t size() const { return parent.size(); }
    std::optional<int> ap_index(const std::string& name) const;
    /// Node reached by following the given origins from the root.
    std::optional<int> find(const History& h) const;
    History path(int node) const;
    /// Every label of `ap` in {0,1}.
    bool boolean_in(const std::string& ap) const;
};

/// Nodes are the histories of K of length <= d+1 starting at the initial state.
FiniteTree unfold_wks(const Wks& k, int d);

struct KripkeOfGame {
    Wks kripke;
    std::vector<std::string> state_props;  // p_v per game state
    /// Histories of the game and paths of the Kripke structure use the same
    /// state indices, so the bijection is the identity on index sequences.
    History to_kripke(const History& rho) const { return rho; }
    History to_game(const History& path) const { return path; }
};

/// Kripke structure of G with one Boolean proposition per game state.
KripkeOfGame game_to_kripke(const Wcgs& g);

/// A name not already in `taken`, derived from `base`.
std::string fresh_name(const std::string& base, const std::vector<std::string>& taken);

/// Rational from a JSON string ("n/d", decimal) or number.
Rat rat_from_json(const nlohmann::json& v);

}  // namespace slfmc
