#ifndef QCT_TESTS_ORACLES_HPP
#define QCT_TESTS_ORACLES_HPP

// Brute-force oracles used to freeze expected values. These stay independent
// of the implementation paths they check: plain loops over raw tables and
// permutations, no use of the search engines.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "qct/digraph.hpp"
#include "qct/tournament.hpp"

namespace qct_tests {

// Every map V(a) -> V(b) as a table, checked directly against the edge rule.
inline std::vector<std::vector<int>> brute_force_homs(const qct::Digraph& a,
                                                      const qct::Digraph& b) {
    std::vector<std::vector<int>> result;
    std::vector<int> table(static_cast<std::size_t>(a.size()), 0);
    while (true) {
        bool ok = true;
        for (int u = 0; u < a.size() && ok; ++u)
            for (int v = 0; v < a.size() && ok; ++v)
                if (a.edge(u, v) && !b.edge(table[static_cast<std::size_t>(u)],
                                            table[static_cast<std::size_t>(v)]))
                    ok = false;
        if (ok) result.push_back(table);
        int pos = a.size() - 1;
        while (pos >= 0 && ++table[static_cast<std::size_t>(pos)] == b.size())
            table[static_cast<std::size_t>(pos--)] = 0;
        if (pos < 0) break;
    }
    return result;
}

// Count of componentwise-edge pairs in the k-fold product, by direct loops.
inline long brute_force_power_edge_count(const qct::Digraph& g, int k, bool loops_only = false) {
    long n = 1;
    for (int i = 0; i < k; ++i) n *= g.size();
    auto coord = [&](long id, int i) {
        long div = 1;
        for (int j = i + 1; j < k; ++j) div *= g.size();
        return static_cast<int>((id / div) % g.size());
    };
    long count = 0;
    for (long u = 0; u < n; ++u)
        for (long v = 0; v < n; ++v) {
            if (loops_only && u != v) continue;
            bool edge = true;
            for (int i = 0; i < k && edge; ++i)
                if (!g.edge(coord(u, i), coord(v, i))) edge = false;
            if (edge) ++count;
        }
    return count;
}

// All rooted orders of a strongly connected tournament that form a directed
// Hamilton cycle; first vertex fixed to 0.
inline std::vector<std::vector<int>> brute_force_hamilton_cycles(const qct::Tournament& t) {
    std::vector<std::vector<int>> result;
    std::vector<int> rest(static_cast<std::size_t>(t.size()) - 1);
    std::iota(rest.begin(), rest.end(), 1);
    do {
        std::vector<int> cycle = {0};
        cycle.insert(cycle.end(), rest.begin(), rest.end());
        bool ok = true;
        for (std::size_t i = 0; i < cycle.size() && ok; ++i)
            if (!t.edge(cycle[i], cycle[(i + 1) % cycle.size()])) ok = false;
        if (ok) result.push_back(cycle);
    } while (std::next_permutation(rest.begin(), rest.end()));
    return result;
}

// Isomorphism-class count over all orientations, canonicalized by explicit
// permutation minimum; n <= 5 stays fast.
inline long brute_force_tournament_classes(int n) {
    int pairs = n * (n - 1) / 2;
    std::vector<std::uint64_t> codes;
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (std::uint64_t mask = 0; mask < (1ull << pairs); ++mask) {
        auto edge_bit = [&](int i, int j) { // orientation of pair (i<j)
            int p = 0;
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b) {
                    if (a == std::min(i, j) && b == std::max(i, j))
                        return i < j ? ((mask >> p) & 1ull) : 1ull - ((mask >> p) & 1ull);
                    ++p;
                }
            return 0ull;
        };
        std::uint64_t best = ~0ull;
        std::iota(perm.begin(), perm.end(), 0);
        do {
            std::uint64_t code = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    code = (code << 1) |
                           edge_bit(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
            best = std::min(best, code);
        } while (std::next_permutation(perm.begin(), perm.end()));
        codes.push_back(best);
    }
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
    return static_cast<long>(codes.size());
}

} // namespace qct_tests

#endif
