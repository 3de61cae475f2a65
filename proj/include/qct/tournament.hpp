#ifndef QCT_TOURNAMENT_HPP
#define QCT_TOURNAMENT_HPP

#include <cstdint>
#include <vector>

#include "qct/digraph.hpp"

namespace qct {

// A digraph validated as a reflexive tournament: every vertex has a loop and
// every pair of distinct vertices carries exactly one arc.
class Tournament {
public:
    static Tournament check(Digraph d);

    const Digraph& graph() const { return g_; }
    int size() const { return g_.size(); }
    bool edge(int u, int v) const { return g_.edge(u, v); }

    bool operator==(const Tournament& other) const { return g_ == other.g_; }

private:
    explicit Tournament(Digraph d) : g_(std::move(d)) {}
    Digraph g_;
};

// Vertices 0..k-1 with edge (i, j) iff i <= j.
Tournament transitive_tournament(int k);

// Ordered strongly connected components H_1 => ... => H_n: all edges between
// components go from the earlier one to the later one.
struct SccChain {
    std::vector<std::vector<int>> components; // each sorted ascending
    std::vector<int> component_of;

    int initial_size() const { return static_cast<int>(components.front().size()); }
    int final_size() const { return static_cast<int>(components.back().size()); }
};

SccChain scc_chain(const Tournament& t);

// A directed Hamilton cycle of a strongly connected tournament, found by
// cycle extension rather than exhaustive search. Returns the vertices in
// cyclic order starting from the lowest-id vertex of the cycle.
std::vector<int> hamilton_cycle(const Tournament& t);

// Stacks strongly connected tournaments into a chain: all edges between
// blocks point from the earlier block to the later one. Vertex ids are
// assigned block by block.
Tournament chain_tournament(std::span<const Digraph> blocks);

// Canonical 64-bit code: minimum over all vertex permutations of the
// orientation bits for pairs (i, j), i < j, packed first pair highest.
// Only defined for n <= 8.
std::uint64_t tournament_canonical_code(const Tournament& t);

// One representative per isomorphism class, ordered by canonical code.
std::vector<Tournament> enumerate_tournaments(int n);

} // namespace qct

#endif
