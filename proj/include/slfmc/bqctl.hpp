#pragma once

#include "slfmc/formula.hpp"
#include "slfmc/predicate.hpp"
#include "slfmc/structures.hpp"
#include "slfmc/tree_automata.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace slfmc {

class FormulaApt;

/// Alternating parity tree automaton accepting the trees on which a closed
/// QCTL state formula takes a value in `p`. Free propositions range over
/// `base`; quantified ones are renamed apart and range over {0,1}.
std::shared_ptr<FormulaApt> build_apt(const Formula& phi, const ValueSet& base, std::shared_ptr<const Directions> dirs,
                                      const Predicate& p, std::uint64_t cap = 0);

/// Sizes of the automata built for one propositional quantifier.
struct LevelStats {
    std::string quantifier;  // printed subformula
    int level = 0;           // quantifier nesting depth of the subformula
    std::string value;
    NondetStats existential;
    NondetStats universal;
};

class FormulaApt : public TreeAutomaton {
public:
    FormulaApt(const Formula& phi, const ValueSet& base, std::shared_ptr<const Directions> dirs, std::uint64_t cap);
    ~FormulaApt() override;

    TaKind kind() const override { return TaKind::Alternating; }
    int initial() override { return initial_; }
    int priority(int q) override;
    Pbf delta(int q, std::size_t letter, int dir) override;
    std::string describe(int q) override;
    std::size_t num_states() const override;

    /// State accepting iff the value of `f` (a subformula of the renamed
    /// formula) lies in `p`.
    int check_state(const Formula& f, const Predicate& p);
    void set_initial(int q) { initial_ = q; }

    const Formula& formula() const { return phi_; }
    /// Value set of every subformula, keyed by printed form.
    std::map<std::string, ValueSet> value_sets() const;
    std::vector<LevelStats> level_stats() const;
    std::size_t word_automata() const;

    struct Impl;

private:
    std::unique_ptr<Impl> impl_;
    Formula phi_;
    int initial_ = 0;
};

struct BqctlResult {
    bool verdict = false;
    std::size_t apt_states = 0;
    std::size_t game_vertices = 0;
    std::size_t positions = 0;
    std::size_t word_automata = 0;
    std::vector<LevelStats> levels;
    bool envelope_ok = true;
    double seconds = 0;
    ParityGame game;  // kept for DOT export

    std::string telemetry_json() const;
};

/// Decides whether the value of the closed formula on the unfolding of `k`
/// lies in `p`. `base` defaults to the weights of `k` with 0 and 1.
BqctlResult check_wks_report(const Formula& phi, const Wks& k, const Predicate& p, const ValueSet& base = {},
                             std::uint64_t cap = 0);
bool check_wks(const Formula& phi, const Wks& k, const Predicate& p);

/// The value itself, found by testing each candidate of the value set.
Rat bqctl_value(const Formula& phi, const Wks& k, const ValueSet& base = {});

/// Renames quantified propositions apart from each other and from `taken`.
Formula rename_bound_props(const Formula& phi, std::vector<std::string> taken);

}  // namespace slfmc
