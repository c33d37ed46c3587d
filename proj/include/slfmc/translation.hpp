#pragma once

#include "slfmc/formula.hpp"
#include "slfmc/oracle.hpp"
#include "slfmc/structures.hpp"

#include <map>
#include <string>
#include <vector>

namespace slfmc {

/// Agent -> strategy variable.
using BindingContext = std::map<std::string, std::string>;

/// Propositions coding strategy variables: one per (variable, action).
class StrategyAtoms {
public:
    StrategyAtoms(const Wcgs& g, const std::vector<std::string>& taken);
    const std::string& prop(const std::string& var, const std::string& action);
    /// Every proposition generated so far: (variable, action) -> name.
    const std::map<std::pair<std::string, std::string>, std::string>& all() const { return names_; }

private:
    std::vector<std::string> taken_;
    std::map<std::pair<std::string, std::string>, std::string> names_;
};

struct Translation {
    Formula formula;        // QCTL over AP, the state propositions and strategy atoms
    KripkeOfGame model;     // the Kripke structure the formula is read on
    std::map<std::pair<std::string, std::string>, std::string> strategy_atoms;

    /// `{"state_props":{state:prop}, "strategy_atoms":[{"var","action","prop"}], "formula": text}`
    std::string manifest_json(const Wcgs& g) const;
};

/// tr_g of an SL state formula. With `require_closed`, binding a variable
/// that is neither quantified nor in `ctx` throws UnboundVariable.
Translation translate(const Formula& phi, const Wcgs& g, const BindingContext& ctx = {}, bool require_closed = true);

/// AG of "exactly one action proposition of x holds".
Formula phi_str(const std::vector<std::string>& action_props);

/// G of "from every state, some joint action agrees with the coded
/// strategies of the bound agents and the next state is its successor".
Formula psi_out(const Wcgs& g, const KripkeOfGame& k, const BindingContext& ctx, StrategyAtoms& atoms);

struct ReduxRow {
    History rho;
    Rat sl_value;
    Rat qctl_value;
    bool equal = false;
};

struct ReduxReport {
    Formula translated;
    int tree_depth = 0;
    std::vector<ReduxRow> rows;
    bool all_equal = true;
};

/// Compares the SL oracle at every history of at most `d` steps with the
/// tree oracle on the translated formula at the matching unfolding node.
/// `phi` must be closed and X-bounded.
ReduxReport check_redux(const Formula& phi, const Wcgs& g, int d, std::uint64_t cap = 0);

}  // namespace slfmc
