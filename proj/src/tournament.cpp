#include "qct/tournament.hpp"

#include <algorithm>
#include <numeric>

#include "qct/errors.hpp"

namespace qct {

Tournament Tournament::check(Digraph d) {
    for (int v = 0; v < d.size(); ++v)
        if (!d.edge(v, v))
            throw ValidationError("missing loop at vertex " + std::to_string(v));
    for (int u = 0; u < d.size(); ++u)
        for (int v = u + 1; v < d.size(); ++v) {
            bool uv = d.edge(u, v), vu = d.edge(v, u);
            if (!uv && !vu)
                throw ValidationError("pair (" + std::to_string(u) + ", " + std::to_string(v) +
                                      ") is unrelated");
            if (uv && vu)
                throw ValidationError("pair (" + std::to_string(u) + ", " + std::to_string(v) +
                                      ") has a double edge");
        }
    return Tournament(std::move(d));
}

Tournament transitive_tournament(int k) {
    if (k < 1) throw ValidationError("transitive tournament needs at least one vertex");
    Digraph d(k, "TT_" + std::to_string(k));
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j) d.add_edge(i, j);
    return Tournament::check(std::move(d));
}

SccChain scc_chain(const Tournament& t) {
    const Digraph& g = t.graph();
    SccChain chain;
    chain.components = strongly_connected_components(g);
    // Between two components of a tournament all arcs point one way, so a
    // single representative pair decides the order.
    std::sort(chain.components.begin(), chain.components.end(),
              [&g](const std::vector<int>& a, const std::vector<int>& b) {
                  return g.edge(a.front(), b.front()) && !g.edge(b.front(), a.front());
              });
    chain.component_of.assign(g.size(), -1);
    for (std::size_t i = 0; i < chain.components.size(); ++i)
        for (int v : chain.components[i]) chain.component_of[v] = static_cast<int>(i);

    // Self-diagnostic: the chain order must be total on cross edges.
    for (std::size_t i = 0; i < chain.components.size(); ++i)
        for (std::size_t j = i + 1; j < chain.components.size(); ++j)
            for (int u : chain.components[i])
                for (int v : chain.components[j])
                    if (!g.edge(u, v) || g.edge(v, u))
                        throw InternalCheckFailure(
                            "component chain order violated between vertices " +
                            std::to_string(u) + " and " + std::to_string(v));
    return chain;
}

namespace {

// Find a directed triangle through some vertex of a strongly connected
// tournament with at least three vertices.
std::vector<int> initial_triangle(const Digraph& g) {
    for (int v = 0; v < g.size(); ++v) {
        for (int w = 0; w < g.size(); ++w) {
            if (w == v || !g.edge(v, w)) continue;
            for (int l = 0; l < g.size(); ++l) {
                if (l == v || l == w) continue;
                if (g.edge(l, v) && g.edge(w, l)) return {v, w, l};
            }
        }
    }
    throw InternalCheckFailure("no directed triangle in a strong tournament");
}

} // namespace

std::vector<int> hamilton_cycle(const Tournament& t) {
    const Digraph& g = t.graph();
    if (!is_strongly_connected(g))
        throw NotStronglyConnected("tournament is not strongly connected");
    if (g.size() == 1) return {0};

    std::vector<int> cycle = initial_triangle(g);
    std::vector<bool> in_cycle(g.size(), false);
    for (int v : cycle) in_cycle[v] = true;

    while (static_cast<int>(cycle.size()) < g.size()) {
        int k = static_cast<int>(cycle.size());
        bool extended = false;

        // Absorb an outside vertex between two consecutive cycle vertices.
        for (int u = 0; u < g.size() && !extended; ++u) {
            if (in_cycle[u]) continue;
            for (int i = 0; i < k; ++i) {
                if (g.edge(cycle[i], u) && g.edge(u, cycle[(i + 1) % k])) {
                    cycle.insert(cycle.begin() + i + 1, u);
                    in_cycle[u] = true;
                    extended = true;
                    break;
                }
            }
        }
        if (extended) continue;

        // Every remaining vertex now either beats the whole cycle or is
        // beaten by it; strong connectivity forces an arc from the beaten
        // side back to the beating side, absorbing two vertices at once.
        std::vector<int> beats_cycle, beaten_by_cycle;
        for (int u = 0; u < g.size(); ++u) {
            if (in_cycle[u]) continue;
            if (g.edge(u, cycle[0]))
                beats_cycle.push_back(u);
            else
                beaten_by_cycle.push_back(u);
        }
        for (int b : beaten_by_cycle) {
            for (int a : beats_cycle) {
                if (g.edge(b, a)) {
                    cycle.insert(cycle.begin() + 1, a);
                    cycle.insert(cycle.begin() + 1, b);
                    in_cycle[a] = in_cycle[b] = true;
                    extended = true;
                    break;
                }
            }
            if (extended) break;
        }
        if (!extended)
            throw InternalCheckFailure("cycle extension stalled in a strong tournament");
    }

    // Validate and normalise to start at the smallest vertex.
    int n = static_cast<int>(cycle.size());
    for (int i = 0; i < n; ++i)
        if (!g.edge(cycle[i], cycle[(i + 1) % n]))
            throw InternalCheckFailure("constructed Hamilton cycle has a missing arc");
    int start = static_cast<int>(std::min_element(cycle.begin(), cycle.end()) - cycle.begin());
    std::rotate(cycle.begin(), cycle.begin() + start, cycle.end());
    return cycle;
}

Tournament chain_tournament(std::span<const Digraph> blocks) {
    int total = 0;
    for (const Digraph& b : blocks) total += b.size();
    Digraph d(total);
    int offset = 0;
    for (const Digraph& b : blocks) {
        for (const auto& [u, v] : b.edges()) d.add_edge(offset + u, offset + v);
        for (int u = 0; u < offset; ++u)
            for (int v = 0; v < b.size(); ++v) d.add_edge(u, offset + v);
        offset += b.size();
    }
    return Tournament::check(std::move(d));
}

namespace {

constexpr int kMaxCanonical = 8;

int pair_count(int n) { return n * (n - 1) / 2; }

std::uint64_t orientation_code(const Digraph& g, const int* perm) {
    std::uint64_t code = 0;
    for (int i = 0; i < g.size(); ++i)
        for (int j = i + 1; j < g.size(); ++j)
            code = (code << 1) | (g.edge(perm[i], perm[j]) ? 1u : 0u);
    return code;
}

std::uint64_t min_code_over_permutations(const Digraph& g) {
    int n = g.size();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t best = orientation_code(g, perm.data());
    int pairs = pair_count(n);
    while (std::next_permutation(perm.begin(), perm.end())) {
        // Compare bit by bit against the current best, bailing out as soon
        // as this permutation's prefix is strictly larger.
        std::uint64_t acc = 0;
        int p = 0;
        bool worse = false;
        for (int i = 0; i < n && !worse; ++i) {
            for (int j = i + 1; j < n; ++j) {
                acc = (acc << 1) | (g.edge(perm[i], perm[j]) ? 1u : 0u);
                ++p;
                if (acc > (best >> (pairs - p))) {
                    worse = true;
                    break;
                }
            }
        }
        if (!worse && acc < best) best = acc;
    }
    return best;
}

Tournament tournament_from_code(int n, std::uint64_t code) {
    Digraph d(n);
    int pairs = pair_count(n);
    int p = 0;
    for (int i = 0; i < n; ++i) {
        d.add_edge(i, i);
        for (int j = i + 1; j < n; ++j) {
            bool forward = (code >> (pairs - 1 - p)) & 1u;
            if (forward)
                d.add_edge(i, j);
            else
                d.add_edge(j, i);
            ++p;
        }
    }
    return Tournament::check(std::move(d));
}

} // namespace

std::uint64_t tournament_canonical_code(const Tournament& t) {
    if (t.size() > kMaxCanonical)
        throw ValidationError("canonical codes are only computed for up to " +
                              std::to_string(kMaxCanonical) + " vertices");
    return min_code_over_permutations(t.graph());
}

std::vector<Tournament> enumerate_tournaments(int n) {
    if (n < 1 || n > 7)
        throw ValidationError("tournament enumeration supports 1 <= n <= 7");

    std::vector<std::uint64_t> codes = {0}; // the single 1-vertex tournament
    for (int size = 2; size <= n; ++size) {
        std::vector<std::uint64_t> next;
        for (std::uint64_t code : codes) {
            Tournament base = tournament_from_code(size - 1, code);
            for (unsigned mask = 0; mask < (1u << (size - 1)); ++mask) {
                Digraph d(size);
                for (int i = 0; i < size - 1; ++i) {
                    d.add_edge(i, i);
                    for (int j = i + 1; j < size - 1; ++j) {
                        if (base.edge(i, j))
                            d.add_edge(i, j);
                        else
                            d.add_edge(j, i);
                    }
                    if ((mask >> i) & 1u)
                        d.add_edge(i, size - 1);
                    else
                        d.add_edge(size - 1, i);
                }
                d.add_edge(size - 1, size - 1);
                next.push_back(min_code_over_permutations(d));
            }
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        codes = std::move(next);
    }

    std::vector<Tournament> out;
    out.reserve(codes.size());
    for (std::uint64_t code : codes) out.push_back(tournament_from_code(n, code));
    return out;
}

} // namespace qct
