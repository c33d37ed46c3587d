#pragma once

#include "slfmc/omega.hpp"
#include "slfmc/parity.hpp"
#include "slfmc/structures.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace slfmc {

/// Move of a tree automaton copy: stay at the node, go to some child, go to
/// every child, or go to the child in a given direction (>= 0).
constexpr int kStay = -1;
constexpr int kSome = -2;
constexpr int kAll = -3;

struct Move {
    int dir = kStay;
    int state = 0;
    friend auto operator<=>(const Move&, const Move&) = default;
};

/// Positive Boolean formula over moves.
struct Pbf {
    enum class Kind : std::uint8_t { True, False, And, Or, Atom };
    Kind kind = Kind::True;
    Move move;
    std::vector<Pbf> kids;

    static Pbf yes() { return {}; }
    static Pbf no() { return {Kind::False, {}, {}}; }
    static Pbf atom(int dir, int state) { return {Kind::Atom, {dir, state}, {}}; }
    /// Both simplify constants away.
    static Pbf all(std::vector<Pbf> parts);
    static Pbf any(std::vector<Pbf> parts);

    bool is_true() const { return kind == Kind::True; }
    bool is_false() const { return kind == Kind::False; }
};

Pbf dual(const Pbf& f);
/// Replaces kSome/kAll by explicit directions.
Pbf expand(const Pbf& f, const std::vector<int>& children);
/// Minimal models; throws ResourceCap beyond `cap` conjuncts.
std::vector<std::vector<Move>> to_dnf(const Pbf& f, std::size_t cap);
std::string to_string(const Pbf& f);

/// Tree shape: the children of a node in direction d are succ[d].
struct Directions {
    std::vector<std::vector<int>> succ;
    static Directions of(const Wks& k);
    friend bool operator==(const Directions&, const Directions&) = default;
};

enum class TaKind { Alternating, Nondeterministic, Universal };
enum class ProjectionMode { Existential, Universal };

/// Parity tree automaton (max-even) over Directions-shaped trees whose nodes
/// carry letters of `alphabet()`. States are created on demand.
class TreeAutomaton {
public:
    TreeAutomaton(Alphabet a, std::shared_ptr<const Directions> d) : alphabet_(std::move(a)), dirs_(std::move(d)) {}
    virtual ~TreeAutomaton() = default;

    virtual TaKind kind() const = 0;
    virtual int initial() = 0;
    virtual int priority(int q) = 0;
    /// Transition at a node in direction `dir` reading `letter`; moves use
    /// explicit directions among dirs().succ[dir], or kStay.
    virtual Pbf delta(int q, std::size_t letter, int dir) = 0;
    virtual std::string describe(int q) = 0;
    /// States materialized so far.
    virtual std::size_t num_states() const = 0;

    const Alphabet& alphabet() const { return alphabet_; }
    const Directions& dirs() const { return *dirs_; }
    std::shared_ptr<const Directions> dirs_ptr() const { return dirs_; }

protected:
    Alphabet alphabet_;
    std::shared_ptr<const Directions> dirs_;
};

using TreeAutomatonPtr = std::shared_ptr<TreeAutomaton>;

/// Hand-written automaton: per state a priority and a per-letter formula
/// over kStay/kSome/kAll moves.
class ExplicitApt : public TreeAutomaton {
public:
    ExplicitApt(Alphabet a, std::shared_ptr<const Directions> d, TaKind kind = TaKind::Alternating)
        : TreeAutomaton(std::move(a), std::move(d)), kind_(kind) {}
    int add_state(int priority, std::vector<Pbf> per_letter, std::string name = {});
    void set_initial(int q) { initial_ = q; }

    TaKind kind() const override { return kind_; }
    int initial() override { return initial_; }
    int priority(int q) override { return priority_.at(q); }
    Pbf delta(int q, std::size_t letter, int dir) override;
    std::string describe(int q) override { return names_.at(q); }
    std::size_t num_states() const override { return priority_.size(); }

private:
    TaKind kind_;
    int initial_ = 0;
    std::vector<int> priority_;
    std::vector<std::vector<Pbf>> table_;
    std::vector<std::string> names_;
};

/// Complement: formulas dualized, priorities shifted by one.
TreeAutomatonPtr dual(TreeAutomatonPtr a);

struct NondetStats {
    std::size_t trace_states = 0;    // states of the bad-trace word automaton
    std::size_t safra_states = 0;    // states of its determinization
    std::uint64_t local_strategies = 0;
};

/// Alternation removal: states are Safra trees over the word automaton that
/// recognizes losing traces of a positional run. Nondeterministic input is
/// returned as is.
TreeAutomatonPtr nondeterminize(TreeAutomatonPtr a, std::uint64_t cap = 0);
/// dual(nondeterminize(dual(a))).
TreeAutomatonPtr universalize(TreeAutomatonPtr a, std::uint64_t cap = 0);
/// Statistics of a nondeterminized automaton (zeros for other automata).
NondetStats nondet_stats(const TreeAutomaton& a);

/// Existential projection needs a nondeterministic automaton, universal
/// projection a universal one. `p` must be an alphabet atom with values 0, 1.
TreeAutomatonPtr project(TreeAutomatonPtr a, const std::string& p, ProjectionMode mode);

/// Letter of a Kripke state; atoms missing from the structure read 0.
std::size_t letter_of(const Alphabet& a, const Wks& k, int state);

struct AcceptanceGame {
    ParityGame game;
    int initial = 0;
    std::size_t positions = 0;  // (structure state, automaton state) pairs
};

/// Membership game of the unfolding of `k` (its directions must be the
/// automaton's). Even owns disjunctions, Odd conjunctions.
AcceptanceGame acceptance_game(TreeAutomaton& a, const Wks& k, std::size_t max_vertices = 0);
bool accepts(TreeAutomaton& a, const Wks& k);

}  // namespace slfmc
