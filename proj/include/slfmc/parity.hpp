#pragma once

#include <string>
#include <vector>

namespace slfmc {

constexpr int kEven = 0;
constexpr int kOdd = 1;

/// Turn-based parity game, max-even convention: a play is won by Even when
/// the largest priority seen infinitely often is even.
struct ParityGame {
    std::vector<int> owner;  // kEven or kOdd
    std::vector<int> priority;
    std::vector<std::vector<int>> succ;
    std::vector<std::string> names;

    int size() const { return static_cast<int>(owner.size()); }
    int add_vertex(int who, int prio, std::string name = {});
    void add_edge(int from, int to);
    /// Schema error on dead ends, bad owners, negative priorities or dangling edges.
    void validate() const;

    /// PGSolver text: `parity N;` then `id prio owner s1,s2,... "name";`.
    static ParityGame from_pgsolver(const std::string& text);
    std::string to_pgsolver() const;
};

struct ParitySolution {
    std::vector<int> winner;    // per vertex
    std::vector<int> strategy;  // successor chosen at vertices owned by their winner, else -1

    std::vector<char> region(int player) const;
    /// Strategy restricted to `player`'s region.
    std::vector<int> strategy_of(int player, const ParityGame& g) const;
};

/// Zielonka's recursive algorithm.
ParitySolution solve(const ParityGame& g);

/// True iff `sigma` (indexed by vertex) keeps every play from `region` inside
/// it and every cycle there has a maximal priority of `side`'s parity.
/// Throws CertificateRegion when sigma leaves the region or is undefined on it.
bool check_certificate(const ParityGame& g, const std::vector<int>& sigma, int side, const std::vector<char>& region);

/// Winner per vertex by enumerating positional strategy pairs; small games only.
std::vector<int> brute_force_winners(const ParityGame& g);

}  // namespace slfmc
