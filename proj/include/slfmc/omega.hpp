#pragma once

#include "slfmc/formula.hpp"
#include "slfmc/oracle.hpp"
#include "slfmc/predicate.hpp"
#include "slfmc/value_set.hpp"

#include <map>
#include <string>
#include <vector>

namespace slfmc {

/// Letters are value vectors over `atoms`, atom i ranging over `values[i]`.
/// Letter indices are mixed radix with atom 0 most significant.
struct Alphabet {
    std::vector<std::string> atoms;
    std::vector<ValueSet> values;

    static Alphabet from_map(const std::map<std::string, ValueSet>& m);

    std::size_t size() const;
    std::vector<Rat> decode(std::size_t letter) const;
    /// Throws AlphabetMismatch when a value is outside its atom's set.
    std::size_t encode(const std::vector<Rat>& vals) const;
    std::string letter_str(std::size_t letter) const;

    friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

/// Lasso over letter indices.
struct LetterLasso {
    std::vector<int> prefix;
    std::vector<int> loop;
    std::size_t length() const { return prefix.size() + loop.size(); }
    std::size_t next(std::size_t i) const { return i + 1 < length() ? i + 1 : prefix.size(); }
    int at(std::size_t i) const { return i < prefix.size() ? prefix[i] : loop[i - prefix.size()]; }
};

/// Maps the lasso's propositions onto the alphabet (extra propositions are
/// ignored). Throws AlphabetMismatch.
LetterLasso to_letters(const Alphabet& a, const LassoWord& w);

/// Shared shape of the nondeterministic and universal automata:
/// delta[state][letter] lists successor states.
struct TransitionSystem {
    Alphabet alphabet;
    int num_states = 0;
    std::vector<int> initial;
    std::vector<std::vector<std::vector<int>>> delta;
    std::vector<std::string> names;  // optional, for export

    std::size_t num_transitions() const;
};

struct Ngbw : TransitionSystem {
    std::vector<std::vector<char>> acc_sets;  // each a state-indexed flag vector
};

struct Nbw : TransitionSystem {
    std::vector<char> accepting;
};

/// Universal co-Buchi automaton: accepts when every run visits `rejecting`
/// only finitely often.
struct Ubw : TransitionSystem {
    std::vector<char> rejecting;
};

/// Deterministic, total; state-based max-even parity.
struct Dpw {
    Alphabet alphabet;
    int num_states = 0;
    int initial = 0;
    std::vector<std::vector<int>> delta;
    std::vector<int> priority;
    std::vector<std::string> names;
};

/// Value-annotated tableau: accepts exactly the words whose value of `psi`
/// at position 0 lies in `p`. Every atom of `psi` needs a non-empty value set.
Ngbw ltlf_to_ngbw(const Formula& psi, const std::map<std::string, ValueSet>& atoms_values, const Predicate& p);

/// The automata for [0,v), {v} and (v,1].
struct ThresholdAutomata {
    Ngbw below;
    Ngbw at;
    Ngbw above;
};
ThresholdAutomata threshold_automata(const Formula& psi, const std::map<std::string, ValueSet>& atoms_values,
                                     const Rat& v);

/// Value sets of every atom of `psi`, each being `base`.
std::map<std::string, ValueSet> uniform_atom_values(const Formula& psi, const ValueSet& base);

/// Counter construction. With no acceptance sets every state is accepting.
Nbw degeneralize(const Ngbw& a);

/// Same transition structure read universally with the co-Buchi condition;
/// recognizes the complement.
Ubw dualize(const Nbw& a);
Nbw dualize(const Ubw& a);

/// Safra trees with compact names; throws ResourceCap beyond `max_states`
/// (0 means SLF_MC_CAP or one million).
Dpw determinize(const Nbw& a, std::size_t max_states = 0);

/// Same transitions, parity shifted by one.
Dpw complement(const Dpw& a);

bool ngbw_lasso_member(const Ngbw& a, const LetterLasso& w);
bool nbw_lasso_member(const Nbw& a, const LetterLasso& w);
bool ubw_lasso_member(const Ubw& a, const LetterLasso& w);
bool dpw_lasso_member(const Dpw& a, const LetterLasso& w);

bool ngbw_lasso_member(const Ngbw& a, const LassoWord& w);
bool nbw_lasso_member(const Nbw& a, const LassoWord& w);
bool ubw_lasso_member(const Ubw& a, const LassoWord& w);
bool dpw_lasso_member(const Dpw& a, const LassoWord& w);

/// Soft size check: log2|states| <= |psi|^2 * log2(max value-set size).
bool within_size_envelope(const Ngbw& a, const Formula& psi);

std::string to_hoa_json(const Ngbw& a);
std::string to_hoa_json(const Nbw& a);
std::string to_hoa_json(const Ubw& a);
std::string to_hoa_json(const Dpw& a);
std::string to_dot(const Ngbw& a);
std::string to_dot(const Nbw& a);
std::string to_dot(const Ubw& a);
std::string to_dot(const Dpw& a);

}  // namespace slfmc
