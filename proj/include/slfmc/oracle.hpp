#pragma once

#include "slfmc/formula.hpp"
#include "slfmc/structures.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace slfmc {

/// prefix . loop^omega over a fixed proposition list.
struct LassoWord {
    std::vector<std::string> aps;
    std::vector<std::vector<Rat>> prefix;
    std::vector<std::vector<Rat>> loop;

    std::size_t length() const { return prefix.size() + loop.size(); }
    std::size_t next(std::size_t i) const { return i + 1 < length() ? i + 1 : prefix.size(); }
    const std::vector<Rat>& at(std::size_t i) const { return i < prefix.size() ? prefix[i] : loop[i - prefix.size()]; }
    std::string str() const;
};

/// Value of an LTL path formula at position i of the lasso (0 <= i < length()).
Rat eval_ltlf_lasso(const Formula& psi, const LassoWord& w, std::size_t i = 0);
/// Values at every lasso position.
std::vector<Rat> eval_ltlf_lasso_all(const Formula& psi, const LassoWord& w);

enum class OracleMode { XBoundedExact, MemorylessApprox, HorizonTree };

struct OracleOptions {
    OracleMode mode = OracleMode::XBoundedExact;
    int horizon = -1;                    // HorizonTree: strategy window, must cover the formula
    std::uint64_t cap = 10'000'000;      // enumerated strategies / relabelings
    int lasso_bound = -1;                // MemorylessApprox: longest lasso, default |V|+1
    bool parallel = true;                // enumerate the outermost quantifier in parallel
};

struct OracleResult {
    Rat value;
    bool exact = true;
    std::uint64_t enumerated = 0;
};

/// Reference value of an SL state formula at history rho.
OracleResult eval_sl(const Formula& phi, const Wcgs& g, const Assignment& chi, const History& rho,
                     const OracleOptions& opts = {});
/// Convenience: empty assignment, history = initial state.
OracleResult eval_sl(const Formula& phi, const Wcgs& g, const OracleOptions& opts = {});

enum class TreeMode {
    XBoundedExact,  // X-only formulas; the tree must be deep enough
    Window,         // U evaluated on the finite branches of the tree, X past a leaf counts as 1
};

struct TreeOptions {
    TreeMode mode = TreeMode::XBoundedExact;
    std::uint64_t cap = 10'000'000;
};

/// Reference value of a QCTL state formula at a node of a finite tree.
/// Propositional quantifiers relabel the relevant window below `node` with
/// Boolean values.
OracleResult eval_bqctl(const Formula& phi, const FiniteTree& t, int node = 0, const TreeOptions& opts = {});

/// Global cap from SLF_MC_CAP, or `fallback`.
std::uint64_t cap_from_env(std::uint64_t fallback);

}  // namespace slfmc
