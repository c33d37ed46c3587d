#pragma once

#include "slfmc/func.hpp"

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace slfmc {

enum class Dialect { SL, QCTL, LTLF };

enum class Op {
    Atom,         // p
    Func,         // f(...)
    ExistsStrat,  // <<x>> phi             (SL)
    Bind,         // (a,x) phi             (SL)
    PathA,        // A psi                 (SL)
    PathE,        // E psi                 (QCTL)
    ExistsProp,   // exists p . phi        (QCTL)
    Next,         // X psi
    Until,        // psi U psi
};

struct Node;
using Formula = std::shared_ptr<const Node>;

/// One AST node shared by the three dialects. Which operators may appear is
/// checked by `validate`. Nodes are immutable and freely shared.
struct Node {
    Op op = Op::Atom;
    std::string name;   // Atom: proposition; ExistsStrat: variable; Bind: agent; ExistsProp: proposition
    std::string var;    // Bind: variable
    std::optional<FuncSpec> func;
    std::vector<Formula> kids;
};

bool structurally_equal(const Formula& a, const Formula& b);
struct FormulaLess {
    bool operator()(const Formula& a, const Formula& b) const;
};

// Builders. Abbreviations are expanded into the core grammar here.
namespace fb {
Formula atom(std::string p);
Formula func(FuncSpec f, std::vector<Formula> args);
Formula constant(const Rat& v);
Formula top();
Formula bottom();
Formula neg(Formula a);
Formula min(std::vector<Formula> args);  // empty list -> top
Formula max(std::vector<Formula> args);  // empty list -> bottom
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula implies(Formula a, Formula b);
Formula exists_strat(std::string x, Formula body);
Formula forall_strat(std::string x, Formula body);
Formula bind(std::string agent, std::string x, Formula body);
Formula path_a(Formula psi);
Formula path_e(Formula psi);
Formula exists_prop(std::string p, Formula body);
Formula forall_prop(std::string p, Formula body);
Formula next(Formula psi);
Formula until(Formula a, Formula b);
Formula eventually(Formula psi);
Formula always(Formula psi);
/// A psi inside a QCTL formula (no native universal path quantifier there).
Formula qctl_all(Formula psi);
/// E psi inside an SL formula.
Formula sl_exists_path(Formula psi);
}  // namespace fb

std::size_t formula_size(const Formula& f);

/// Maximal number of nested strategy quantifiers (SL) or propositional
/// quantifiers (QCTL) along a root-to-leaf path.
int nesting_depth(const Formula& f);
/// As `nesting_depth`, but a run of directly nested propositional quantifiers
/// counts as a single level.
int block_nesting_depth(const Formula& f);

/// Maximal nesting of X; nullopt when U occurs anywhere.
std::optional<int> temporal_depth(const Formula& f);
inline bool is_x_bounded(const Formula& f) { return temporal_depth(f).has_value(); }

/// True when no X/U occurs outside the scope of a path quantifier.
bool is_state_formula(const Formula& f);

std::set<std::string> atoms_of(const Formula& f);
/// QCTL: propositions not bound by an enclosing `exists`.
std::set<std::string> free_props(const Formula& f);
/// SL: variables used in bindings but not quantified above them.
std::set<std::string> free_vars(const Formula& f);
std::set<std::string> bound_props(const Formula& f);

/// Throws NotInFragment when an operator is foreign to the dialect, or when a
/// path formula appears where a state formula is required.
void validate(const Formula& f, Dialect d);

std::string print(const Formula& f);

/// Substitutes every occurrence of `target` (structurally) by `replacement`.
Formula replace_subformula(const Formula& f, const Formula& target, const Formula& replacement);

/// Applies f to each subformula bottom-up (children before parents), visiting
/// structurally equal subtrees once.
std::vector<Formula> subformulas_postorder(const Formula& f);

}  // namespace slfmc
