#include "qct/gadget.hpp"

#include <algorithm>

#include "qct/errors.hpp"

namespace qct {

Gadget build_cyl(int m, bool plus) {
    if (m < 2) throw ValidationError("cylinder gadget needs m >= 2");
    Gadget g;
    g.m = m;
    int cylinder = m * m;
    g.graph = Digraph(cylinder + (plus ? 1 : 0),
                      (plus ? "Cyl+_" : "Cyl_") + std::to_string(m));
    auto id = [m](int pos, int copy) { return copy * m + pos; };

    for (int copy = 0; copy < m; ++copy)
        for (int pos = 0; pos < m; ++pos) {
            g.graph.add_edge(id(pos, copy), id(pos, copy));
            g.graph.add_edge(id(pos, copy), id((pos + 1) % m, copy));
            if (copy + 1 < m) {
                g.graph.add_edge(id(pos, copy), id(pos, copy + 1));
                g.graph.add_edge(id(pos, copy + 1), id((pos + 1) % m, copy));
            }
        }

    for (int pos = 0; pos < m; ++pos) {
        g.bottom_cycle.push_back(id(pos, 0));
        g.top_cycle.push_back(id(pos, m - 1));
    }
    if (plus) {
        int x = cylinder;
        g.graph.add_edge(x, x);
        g.graph.add_edge(id(0, m - 1), x); // which top vertex feeds it does not matter
        g.pendant = x;
    }
    return g;
}

SpillInstance attach_spill_instance(const Tournament& h, std::span<const int> hc, bool plus) {
    int m = static_cast<int>(hc.size());
    if (m < 2) throw ValidationError("core Hamilton cycle needs at least 2 vertices");
    std::vector<int> core(hc.begin(), hc.end());
    std::vector<int> sorted_core(core);
    std::sort(sorted_core.begin(), sorted_core.end());
    if (std::adjacent_find(sorted_core.begin(), sorted_core.end()) != sorted_core.end())
        throw ValidationError("Hamilton cycle repeats a vertex");
    for (int v : core)
        if (v < 0 || v >= h.size())
            throw ValidationError("cycle vertex " + std::to_string(v) + " outside H");
    for (int i = 0; i < m; ++i)
        if (!h.edge(core[static_cast<std::size_t>(i)], core[static_cast<std::size_t>((i + 1) % m)]))
            throw ValidationError("given order is not a Hamilton cycle of the core: missing arc " +
                                  std::to_string(core[static_cast<std::size_t>(i)]) + " -> " +
                                  std::to_string(core[static_cast<std::size_t>((i + 1) % m)]));

    Gadget gadget = build_cyl(m, plus);

    SpillInstance f;
    f.m = m;
    f.h_size = h.size();
    f.core = core;
    f.bottom_cycle = core;
    // Gadget position (i, 0) lands on hc[i]; other gadget vertices are fresh.
    std::vector<int> remap(static_cast<std::size_t>(gadget.graph.size()), -1);
    int next = h.size();
    for (int v = 0; v < gadget.graph.size(); ++v) {
        if (v < m)
            remap[static_cast<std::size_t>(v)] = core[static_cast<std::size_t>(v)];
        else
            remap[static_cast<std::size_t>(v)] = next++;
    }
    f.graph = Digraph(next, h.graph().name().empty() ? "spill-instance"
                                                     : h.graph().name() + "+cyl");
    for (const auto& [u, v] : h.graph().edges()) f.graph.add_edge(u, v);
    for (const auto& [u, v] : gadget.graph.edges())
        f.graph.add_edge(remap[static_cast<std::size_t>(u)], remap[static_cast<std::size_t>(v)]);
    for (int v : gadget.top_cycle) f.top_cycle.push_back(remap[static_cast<std::size_t>(v)]);
    if (gadget.pendant) f.pendant = remap[static_cast<std::size_t>(*gadget.pendant)];
    return f;
}

nlohmann::json SpillReport::to_json() const {
    nlohmann::json j;
    auto& jp = j["per_vertex"] = nlohmann::json::object();
    for (std::size_t i = 0; i < designated.size(); ++i)
        jp[std::to_string(designated[i])] = per_vertex[i];
    j["designated"] = designated;
    j["union"] = union_set;
    j["full"] = full;
    return j;
}

SpillReport spill(const Tournament& h, std::span<const int> hc, bool plus,
                  const SearchLimits& limits) {
    SpillInstance f = attach_spill_instance(h, hc, plus);

    SpillReport report;
    if (plus)
        report.designated = {*f.pendant};
    else
        report.designated = f.top_cycle;

    // A retraction of F to H is exactly a homomorphism F -> H that is the
    // identity on H's vertices.
    for (int x : report.designated) {
        std::vector<int> reachable;
        for (int y = 0; y < h.size(); ++y) {
            HomConstraints c;
            for (int v = 0; v < h.size(); ++v) c.pinned[v] = v;
            c.pinned[x] = y;
            if (find_hom(f.graph, h.graph(), c, limits)) reachable.push_back(y);
        }
        report.per_vertex.push_back(std::move(reachable));
    }

    for (const auto& per : report.per_vertex)
        report.union_set.insert(report.union_set.end(), per.begin(), per.end());
    std::sort(report.union_set.begin(), report.union_set.end());
    report.union_set.erase(std::unique(report.union_set.begin(), report.union_set.end()),
                           report.union_set.end());
    report.full = static_cast<int>(report.union_set.size()) == h.size();
    return report;
}

DaggerReport verify_dagger(int m, const SearchLimits& limits) {
    if (m < 2 || m > 4) throw ValidationError("dagger verification supports 2 <= m <= 4");
    Gadget g = build_cyl(m, false);

    HomConstraints c;
    c.allowed.assign(static_cast<std::size_t>(g.graph.size()), g.bottom_cycle);
    for (int v : g.bottom_cycle) c.pinned[v] = v;

    DaggerReport report;
    EnumStats stats = enumerate_homs(g.graph, g.graph, c, [&](const Mapping& r) {
        std::vector<int> top_map;
        for (int v : g.top_cycle) {
            auto it = std::find(g.bottom_cycle.begin(), g.bottom_cycle.end(), r(v));
            top_map.push_back(static_cast<int>(it - g.bottom_cycle.begin()));
        }
        report.top_maps.insert(std::move(top_map));
        return true;
    }, limits);
    if (!stats.complete) throw BudgetExceeded("dagger retraction enumeration ran out of budget");

    std::set<std::vector<int>> rotations;
    for (int t = 0; t < m; ++t) {
        std::vector<int> rot;
        for (int i = 0; i < m; ++i) rot.push_back((i + t) % m);
        rotations.insert(std::move(rot));
    }
    report.holds = report.top_maps == rotations;
    report.all_isomorphisms = std::all_of(
        report.top_maps.begin(), report.top_maps.end(), [m](const std::vector<int>& tm) {
            std::vector<int> sorted(tm);
            std::sort(sorted.begin(), sorted.end());
            for (int i = 0; i < m; ++i)
                if (sorted[static_cast<std::size_t>(i)] != i) return false;
            // Bijective and cycle-compatible: successive positions map to
            // successive positions.
            for (int i = 0; i < m; ++i)
                if (tm[static_cast<std::size_t>((i + 1) % m)] !=
                    (tm[static_cast<std::size_t>(i)] + 1) % m)
                    return false;
            return true;
        });
    return report;
}

Tournament six_vertex_extension(unsigned mask) {
    if (mask >= (1u << 12)) throw ValidationError("extension mask must use 12 bits");
    static constexpr std::pair<int, int> kPairs[12] = {
        {0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5},
        {2, 3}, {2, 4}, {2, 5}, {3, 4}, {3, 5}, {4, 5}};
    Digraph d(6);
    for (int v = 0; v < 6; ++v) d.add_edge(v, v);
    d.add_edge(0, 1);
    d.add_edge(1, 2);
    d.add_edge(2, 0);
    for (int p = 0; p < 12; ++p) {
        auto [u, v] = kPairs[p];
        if ((mask >> p) & 1u)
            d.add_edge(u, v);
        else
            d.add_edge(v, u);
    }
    return Tournament::check(std::move(d));
}

SpillWitnessScan scan_spill_witnesses(const SearchLimits& limits) {
    SpillWitnessScan result;
    const std::vector<int> core = {0, 1, 2};
    const std::vector<int> cycle = {0, 1, 2};
    for (unsigned mask = 0; mask < (1u << 12); ++mask) {
        ++result.scanned;
        Tournament h = six_vertex_extension(mask);
        if (retraction_to(h.graph(), core, limits)) continue;
        if (!spill(h, cycle, false, limits).full) continue;
        result.witness_masks.push_back(mask);
        if (!result.least_witness) result.least_witness = h;
    }
    return result;
}

bool collapse_check(int m, std::span<const Tournament> targets, bool plus,
                    const SearchLimits& limits) {
    Gadget g = build_cyl(m, plus);
    for (const Tournament& target : targets) {
        for (int z = 0; z < target.size(); ++z) {
            HomConstraints c;
            for (int v : g.bottom_cycle) c.pinned[v] = z;
            bool collapses = true;
            EnumStats stats = enumerate_homs(g.graph, target.graph(), c, [&](const Mapping& hmap) {
                for (int v : hmap.table)
                    if (v != z) {
                        collapses = false;
                        return false;
                    }
                return true;
            }, limits);
            if (!stats.complete)
                throw BudgetExceeded("collapse check ran out of search budget");
            if (!collapses) return false;
        }
    }
    return true;
}

} // namespace qct
