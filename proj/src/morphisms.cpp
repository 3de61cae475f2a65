#include "qct/morphisms.hpp"

#include <algorithm>
#include <numeric>

#include "qct/errors.hpp"

namespace qct {

namespace {

enum class Order { ById, ByDegree };

struct SearchOptions {
    Order order = Order::ById;
    bool injective = false;
    bool reflect_edges = false; // image must induce a copy: non-edges preserved too
};

// Backtracking search for constrained maps A -> B. Assignment order and
// candidate order are fixed, so streams and witnesses are deterministic.
class Searcher {
public:
    Searcher(const Digraph& a, const Digraph& b, const HomConstraints& c, SearchOptions opt,
             SearchLimits limits)
        : a_(a), b_(b), c_(c), opt_(opt), limits_(limits) {
        int n = a.size();
        candidates_.resize(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) {
            std::vector<int>& cand = candidates_[static_cast<std::size_t>(v)];
            if (!c.allowed.empty()) {
                if (static_cast<int>(c.allowed.size()) != n)
                    throw ValidationError("allowed sets must cover every source vertex");
                cand = c.allowed[static_cast<std::size_t>(v)];
                std::sort(cand.begin(), cand.end());
            } else {
                cand.resize(static_cast<std::size_t>(b.size()));
                std::iota(cand.begin(), cand.end(), 0);
            }
            for (int t : cand)
                if (t < 0 || t >= b.size())
                    throw ValidationError("allowed target " + std::to_string(t) + " out of range");
        }
        for (const auto& [v, t] : c.pinned) {
            if (v < 0 || v >= n) throw ValidationError("pinned vertex out of range");
            if (t < 0 || t >= b.size()) throw ValidationError("pinned target out of range");
            auto& cand = candidates_[static_cast<std::size_t>(v)];
            if (!std::binary_search(cand.begin(), cand.end(), t))
                cand.clear(); // pin outside the allowed set: unsatisfiable
            else
                cand = {t};
        }

        order_.resize(static_cast<std::size_t>(n));
        std::iota(order_.begin(), order_.end(), 0);
        if (opt.order == Order::ByDegree) {
            std::stable_sort(order_.begin(), order_.end(), [&a](int x, int y) {
                return a.degree(x) > a.degree(y);
            });
        }
        assignment_.assign(static_cast<std::size_t>(n), -1);
        target_use_.assign(static_cast<std::size_t>(b.size()), 0);
    }

    EnumStats run(const std::function<bool(const Mapping&)>& visit) {
        visit_ = &visit;
        dfs(0);
        EnumStats stats;
        stats.nodes = nodes_;
        stats.complete = !out_of_budget_;
        return stats;
    }

private:
    bool consistent(int u, int t) const {
        for (int v = 0; v < a_.size(); ++v) {
            int tv = assignment_[static_cast<std::size_t>(v)];
            if (tv < 0) continue;
            if (opt_.reflect_edges) {
                if (a_.edge(u, v) != b_.edge(t, tv)) return false;
                if (a_.edge(v, u) != b_.edge(tv, t)) return false;
            } else {
                if (a_.edge(u, v) && !b_.edge(t, tv)) return false;
                if (a_.edge(v, u) && !b_.edge(tv, t)) return false;
            }
        }
        return true;
    }

    // Returns false to unwind the whole search.
    bool dfs(std::size_t idx) {
        if (idx == order_.size()) return emit();
        int u = order_[idx];
        for (int t : candidates_[static_cast<std::size_t>(u)]) {
            if (++nodes_ > limits_.node_budget) {
                out_of_budget_ = true;
                return false;
            }
            if (opt_.injective && target_use_[static_cast<std::size_t>(t)] > 0) continue;
            if (!consistent(u, t)) continue;
            if (c_.surjective) {
                int used = used_targets_ + (target_use_[static_cast<std::size_t>(t)] == 0 ? 1 : 0);
                long remaining = static_cast<long>(order_.size() - idx - 1);
                if (b_.size() - used > remaining) continue;
            }
            assign(u, t);
            bool keep_going = dfs(idx + 1);
            unassign(u, t);
            if (!keep_going) return false;
        }
        return true;
    }

    void assign(int u, int t) {
        assignment_[static_cast<std::size_t>(u)] = t;
        if (target_use_[static_cast<std::size_t>(t)]++ == 0) ++used_targets_;
    }

    void unassign(int u, int t) {
        assignment_[static_cast<std::size_t>(u)] = -1;
        if (--target_use_[static_cast<std::size_t>(t)] == 0) --used_targets_;
    }

    bool emit() {
        Mapping m(a_.size(), b_.size(), assignment_);
        if (c_.surjective && !m.is_surjective()) return true;
        if (c_.edge_surjective && !m.is_edge_surjective(a_, b_)) return true;
        return (*visit_)(m);
    }

    const Digraph& a_;
    const Digraph& b_;
    HomConstraints c_;
    SearchOptions opt_;
    SearchLimits limits_;
    std::vector<std::vector<int>> candidates_;
    std::vector<int> order_;
    std::vector<int> assignment_;
    std::vector<int> target_use_;
    int used_targets_ = 0;
    std::uint64_t nodes_ = 0;
    bool out_of_budget_ = false;
    const std::function<bool(const Mapping&)>* visit_ = nullptr;
};

} // namespace

std::optional<Mapping> find_hom(const Digraph& a, const Digraph& b, const HomConstraints& c,
                                const SearchLimits& limits) {
    std::optional<Mapping> found;
    Searcher searcher(a, b, c, SearchOptions{Order::ByDegree}, limits);
    EnumStats stats = searcher.run([&found](const Mapping& m) {
        found = m;
        return false;
    });
    if (!found && !stats.complete)
        throw BudgetExceeded("homomorphism search exceeded " +
                             std::to_string(limits.node_budget) + " nodes");
    return found;
}

EnumStats enumerate_homs(const Digraph& a, const Digraph& b, const HomConstraints& c,
                         const std::function<bool(const Mapping&)>& visit,
                         const SearchLimits& limits) {
    Searcher searcher(a, b, c, SearchOptions{Order::ById}, limits);
    return searcher.run(visit);
}

std::vector<Mapping> all_homs(const Digraph& a, const Digraph& b, const HomConstraints& c,
                              const SearchLimits& limits) {
    std::vector<Mapping> out;
    EnumStats stats = enumerate_homs(a, b, c, [&out](const Mapping& m) {
        out.push_back(m);
        return true;
    }, limits);
    if (!stats.complete)
        throw BudgetExceeded("homomorphism enumeration exceeded " +
                             std::to_string(limits.node_budget) + " nodes");
    return out;
}

long count_homs(const Digraph& a, const Digraph& b, const HomConstraints& c,
                const SearchLimits& limits) {
    long count = 0;
    EnumStats stats = enumerate_homs(a, b, c, [&count](const Mapping&) {
        ++count;
        return true;
    }, limits);
    if (!stats.complete)
        throw BudgetExceeded("homomorphism count exceeded " +
                             std::to_string(limits.node_budget) + " nodes");
    return count;
}

std::optional<Mapping> retraction_to(const Digraph& d, std::span<const int> sub,
                                     const SearchLimits& limits) {
    HomConstraints c;
    std::vector<int> targets(sub.begin(), sub.end());
    std::sort(targets.begin(), targets.end());
    c.allowed.assign(static_cast<std::size_t>(d.size()), targets);
    for (int v : targets) c.pinned[v] = v;
    return find_hom(d, d, c, limits);
}

bool is_automorphism(const Mapping& f, const Digraph& d) {
    if (f.source_size != d.size() || f.target_size != d.size()) return false;
    if (!f.is_injective()) return false;
    for (int u = 0; u < d.size(); ++u)
        for (int v = 0; v < d.size(); ++v)
            if (d.edge(u, v) != d.edge(f(u), f(v))) return false;
    return true;
}

namespace {

bool is_constant_map(const Mapping& f) {
    return std::all_of(f.table.begin(), f.table.end(),
                       [&f](int v) { return v == f.table.front(); });
}

bool is_retraction(const Mapping& f) {
    // Identity on its image, i.e. f(f(v)) = f(v) for all v.
    return std::all_of(f.table.begin(), f.table.end(),
                       [&f](int v) { return f.table[static_cast<std::size_t>(v)] == v; });
}

} // namespace

EndomorphismReport endomorphism_class(const Tournament& t, int bound) {
    if (t.size() > bound)
        throw ValidationError("endomorphism classification bound " + std::to_string(bound) +
                              " exceeded");
    EndomorphismReport report;
    report.endo_trivial = true;
    report.retract_trivial = true;
    const Digraph& g = t.graph();
    enumerate_homs(g, g, {}, [&](const Mapping& f) {
        bool trivial = is_constant_map(f) || is_automorphism(f, g);
        if (!trivial) {
            if (report.endo_trivial) {
                report.endo_trivial = false;
                report.nontrivial_witness = f;
            }
            if (is_retraction(f) && report.retract_trivial) {
                report.retract_trivial = false;
                report.nontrivial_retraction = f;
            }
        }
        return true;
    });
    return report;
}

std::vector<Mapping> automorphisms(const Digraph& d, int bound) {
    if (d.size() > bound)
        throw ValidationError("automorphism bound " + std::to_string(bound) + " exceeded");
    return all_iso_embeddings(d, d);
}

EnumStats polymorphisms(const Digraph& d, int k, const std::function<bool(const Mapping&)>& visit,
                        const SearchLimits& limits) {
    if (k < 1) throw ValidationError("polymorphism arity must be positive");
    double carrier = 1;
    for (int i = 0; i < k; ++i) carrier *= d.size();
    if (carrier > 4096)
        throw ValidationError("polymorphism carrier of " + std::to_string(d.size()) + "^" +
                              std::to_string(k) + " vertices exceeds the search bound");
    Digraph dk = power(d, k);
    return enumerate_homs(dk, d, {}, visit, limits);
}

namespace {

int tuple_coordinate(long id, int coordinate, int base, int arity) {
    long div = 1;
    for (int i = coordinate + 1; i < arity; ++i) div *= base;
    return static_cast<int>((id / div) % base);
}

} // namespace

PolymorphismReport classify_polymorphism(const Mapping& f, const Digraph& d, int k,
                                         const SccChain& chain) {
    Digraph dk = power(d, k);
    if (!f.is_homomorphism(dk, d))
        throw ValidationError("mapping is not a polymorphism of the given graph");

    PolymorphismReport report;

    if (is_constant_map(f)) report.uniformly_constant = f.table.front();

    // Definition-level scan: f = g o proj_i for some endomorphism g.
    std::vector<Mapping> endos = all_homs(d, d, {});
    for (int i = 0; i < k && !report.essentially_unary; ++i) {
        for (const Mapping& g : endos) {
            bool matches = true;
            for (long id = 0; id < dk.size() && matches; ++id)
                matches = f.table[static_cast<std::size_t>(id)] ==
                          g(tuple_coordinate(id, i, d.size(), k));
            if (matches) {
                report.essentially_unary = true;
                report.witness_coordinate = i;
                report.witness_unary = g;
                break;
            }
        }
    }

    report.component_preserving = true;
    for (std::size_t ci = 0; ci < chain.components.size() && report.component_preserving; ++ci) {
        const std::vector<int>& comp = chain.components[ci];
        std::vector<std::size_t> pick(static_cast<std::size_t>(k), 0);
        while (true) {
            long id = 0;
            for (int i = 0; i < k; ++i) id = id * d.size() + comp[pick[static_cast<std::size_t>(i)]];
            if (chain.component_of[static_cast<std::size_t>(
                    f.table[static_cast<std::size_t>(id)])] != static_cast<int>(ci)) {
                report.component_preserving = false;
                break;
            }
            int pos = k - 1;
            while (pos >= 0 && ++pick[static_cast<std::size_t>(pos)] == comp.size())
                pick[static_cast<std::size_t>(pos--)] = 0;
            if (pos < 0) break;
        }
    }
    return report;
}

bool has_median_polymorphism(const Tournament& t) {
    SccChain chain = scc_chain(t);
    for (const auto& comp : chain.components)
        if (comp.size() > 1)
            throw NotTransitive("tournament has a strongly connected component of size " +
                                std::to_string(comp.size()));

    // Positions along the transitive order; all components are singletons.
    const std::vector<int>& pos = chain.component_of;
    std::vector<int> vertex_at(static_cast<std::size_t>(t.size()));
    for (int v = 0; v < t.size(); ++v) vertex_at[static_cast<std::size_t>(pos[v])] = v;

    auto median = [&](int a, int b, int c) {
        int pa = pos[a], pb = pos[b], pc = pos[c];
        int lo = std::min({pa, pb, pc});
        int hi = std::max({pa, pb, pc});
        return vertex_at[static_cast<std::size_t>(pa + pb + pc - lo - hi)];
    };

    auto edges = t.graph().edges();
    for (const auto& [u1, v1] : edges)
        for (const auto& [u2, v2] : edges)
            for (const auto& [u3, v3] : edges)
                if (!t.edge(median(u1, u2, u3), median(v1, v2, v3))) return false;
    return true;
}

EnumStats iso_embeddings(const Digraph& h0, const Digraph& h,
                         const std::function<bool(const Mapping&)>& visit,
                         const SearchLimits& limits) {
    if (h0.size() > h.size()) return EnumStats{};
    if (h.size() > 8)
        throw ValidationError("embedding enumeration supports hosts of at most 8 vertices");
    Searcher searcher(h0, h, {}, SearchOptions{Order::ById, true, true}, limits);
    return searcher.run(visit);
}

std::vector<Mapping> all_iso_embeddings(const Digraph& h0, const Digraph& h,
                                        const SearchLimits& limits) {
    std::vector<Mapping> out;
    EnumStats stats = iso_embeddings(h0, h, [&out](const Mapping& m) {
        out.push_back(m);
        return true;
    }, limits);
    if (!stats.complete)
        throw BudgetExceeded("embedding enumeration exceeded " +
                             std::to_string(limits.node_budget) + " nodes");
    return out;
}

std::vector<HomomorphicImage> edge_surjective_images(const Tournament& h, int size) {
    if (h.size() > 6)
        throw ValidationError("image enumeration supports at most 6 vertices");
    if (size < 1 || size >= h.size())
        throw ValidationError("image size must satisfy 1 <= size < |V(H)|");

    std::vector<HomomorphicImage> out;
    std::vector<std::uint64_t> seen;
    std::vector<int> table(static_cast<std::size_t>(h.size()), 0);
    auto edges = h.graph().edges();
    while (true) {
        Mapping m(h.size(), size, table);
        if (m.is_surjective()) {
            // The image graph of a surjective map witnesses itself: the map
            // is automatically edge-surjective onto it.
            Digraph img(size);
            for (const auto& [u, v] : edges) img.add_edge(table[u], table[v]);
            std::uint64_t key = 0;
            for (int u = 0; u < size; ++u)
                for (int v = 0; v < size; ++v) key = (key << 1) | (img.edge(u, v) ? 1u : 0u);
            if (std::find(seen.begin(), seen.end(), key) == seen.end()) {
                seen.push_back(key);
                out.push_back({img, m, img.has_double_edge()});
            }
        }
        int pos = h.size() - 1;
        while (pos >= 0 && ++table[static_cast<std::size_t>(pos)] == size)
            table[static_cast<std::size_t>(pos--)] = 0;
        if (pos < 0) break;
    }
    return out;
}

bool pair_endo_trivial(const Digraph& d, std::span<const int> fixed, const SearchLimits& limits) {
    HomConstraints c;
    for (int v : fixed) c.pinned[v] = v;
    bool trivial = true;
    EnumStats stats = enumerate_homs(d, d, c, [&](const Mapping& f) {
        if (!is_automorphism(f, d)) {
            trivial = false;
            return false;
        }
        return true;
    }, limits);
    if (trivial && !stats.complete)
        throw BudgetExceeded("pair endo-triviality check exceeded the node budget");
    return trivial;
}

Mapping idempotent_power(const Mapping& f) {
    if (f.source_size != f.target_size)
        throw ValidationError("idempotent power needs an endomorphism");
    Mapping g = f;
    for (int step = 0; step < 10000; ++step) {
        Mapping gg = g.compose(g);
        if (gg == g) return g;
        g = g.compose(f);
    }
    throw InternalCheckFailure("no idempotent power found");
}

} // namespace qct
