#include "qct/reduction.hpp"

#include <algorithm>
#include <map>

#include "qct/errors.hpp"
#include "qct/gadget.hpp"

namespace qct {

const char* to_string(ReductionKind k) {
    switch (k) {
        case ReductionKind::BaseI: return "BaseI";
        case ReductionKind::BaseII: return "BaseII";
        case ReductionKind::GeneralI: return "GeneralI";
        case ReductionKind::GeneralII: return "GeneralII";
        case ReductionKind::AI: return "A-I";
        default: return "A-II";
    }
}

ReductionKind reduction_kind_from_string(const std::string& name) {
    if (name == "BaseI") return ReductionKind::BaseI;
    if (name == "BaseII") return ReductionKind::BaseII;
    if (name == "GeneralI") return ReductionKind::GeneralI;
    if (name == "GeneralII") return ReductionKind::GeneralII;
    if (name == "A-I" || name == "AI") return ReductionKind::AI;
    if (name == "A-II" || name == "AII") return ReductionKind::AII;
    throw ValidationError("unknown reduction kind '" + name + "'");
}

nlohmann::json BuildStats::to_json() const {
    return {{"kind", kind},
            {"plus", plus},
            {"k", k},
            {"n", n},
            {"factors", factors},
            {"glued_vertices", glued_vertices},
            {"product_vertices", product_vertices},
            {"gadgets_stage2", gadgets_stage2},
            {"gadgets_chain", gadgets_chain},
            {"gadgets_stage3", gadgets_stage3},
            {"d_vertices", d_vertices},
            {"dummy_universals", dummy_universals},
            {"instance_vertices", instance_vertices},
            {"instance_edges", instance_edges},
            {"universal_vars", universal_vars},
            {"existential_vars", existential_vars},
            {"atoms", atoms},
            {"restricted_vars", restricted_vars}};
}

namespace {

bool kind_is_plus(ReductionKind k) { return k == ReductionKind::AI || k == ReductionKind::AII; }
bool kind_is_glue(ReductionKind k) {
    return k == ReductionKind::BaseI || k == ReductionKind::GeneralI || k == ReductionKind::AI;
}

// Grows the instance under construction by one cylinder. The bottom cycle
// lands on `bottom` positionally; the attachment vertex is either a chosen
// top-cycle vertex or the pendant in plus mode. Returns fresh-vertex count.
struct GrowingGraph {
    std::vector<std::pair<int, int>> edges;
    int size = 0;

    void add_edge(int u, int v) { edges.emplace_back(u, v); }
    int add_vertex() { return size++; }

    Digraph build() const {
        Digraph g(size);
        for (const auto& [u, v] : edges) g.add_edge(u, v);
        return g;
    }
};

int attach_cylinder(GrowingGraph& g, const std::vector<int>& bottom, int attach_vertex, bool plus,
                    nlohmann::json& gadget_meta) {
    int m = static_cast<int>(bottom.size());
    Gadget cyl = build_cyl(m, plus);
    std::vector<int> remap(static_cast<std::size_t>(cyl.graph.size()), -1);
    for (int i = 0; i < m; ++i)
        remap[static_cast<std::size_t>(cyl.bottom_cycle[static_cast<std::size_t>(i)])] =
            bottom[static_cast<std::size_t>(i)];
    if (plus)
        remap[static_cast<std::size_t>(*cyl.pendant)] = attach_vertex;
    else
        remap[static_cast<std::size_t>(cyl.top_cycle.front())] = attach_vertex;
    int fresh = 0;
    for (int v = 0; v < cyl.graph.size(); ++v)
        if (remap[static_cast<std::size_t>(v)] < 0) {
            remap[static_cast<std::size_t>(v)] = g.add_vertex();
            ++fresh;
        }
    for (const auto& [u, v] : cyl.graph.edges())
        g.add_edge(remap[static_cast<std::size_t>(u)], remap[static_cast<std::size_t>(v)]);
    gadget_meta.push_back({{"m", m},
                           {"plus", plus},
                           {"bottom", bottom},
                           {"attach", attach_vertex}});
    return fresh;
}

} // namespace

ReductionConfig reduction_config_from_json(const nlohmann::json& j) {
    ReductionConfig cfg;
    cfg.kind = reduction_kind_from_string(j.at("kind").get<std::string>());
    cfg.template_graph = Digraph::from_json(j.at("template"));
    cfg.chain = j.at("chain").get<std::vector<std::vector<int>>>();
    if (j.contains("cycles")) cfg.cycles = j.at("cycles").get<std::vector<std::vector<int>>>();
    cfg.instance = Digraph::from_json(j.at("instance"));
    cfg.instance_core = j.at("instance_core").get<std::vector<int>>();
    if (j.contains("lambdas") && !j.at("lambdas").is_string())
        cfg.lambdas = j.at("lambdas").get<std::vector<std::vector<int>>>();
    if (j.contains("cap")) cfg.cap = j.at("cap").get<std::size_t>();
    return cfg;
}

ReductionOutput build_reduction(const ReductionConfig& cfg) {
    Tournament templ = Tournament::check(cfg.template_graph);
    bool plus = kind_is_plus(cfg.kind);
    bool glue = kind_is_glue(cfg.kind);

    // The carrier of the construction: the whole template, or its initial
    // strongly connected component for the A-kinds.
    std::vector<int> comp_vertices;
    if (plus) {
        SccChain chain = scc_chain(templ);
        comp_vertices = chain.components.front();
    } else {
        comp_vertices.resize(static_cast<std::size_t>(templ.size()));
        for (int v = 0; v < templ.size(); ++v) comp_vertices[static_cast<std::size_t>(v)] = v;
    }
    InducedSubgraph comp = induced(templ.graph(), comp_vertices);
    int h = comp.graph.size();
    int n = h; // universal variable count

    // Validate and localize the chain.
    if (cfg.chain.empty()) throw ValidationError("chain must contain at least H_0");
    int k = static_cast<int>(cfg.chain.size()) - 1;
    std::vector<std::vector<int>> levels; // local ids, per level, ascending
    for (const auto& level : cfg.chain) {
        std::vector<int> local;
        for (int v : level) local.push_back(comp.index_of(v));
        std::sort(local.begin(), local.end());
        if (std::adjacent_find(local.begin(), local.end()) != local.end())
            throw ValidationError("chain level repeats a vertex");
        levels.push_back(std::move(local));
    }
    for (std::size_t i = 0; i + 1 < levels.size(); ++i)
        if (!std::includes(levels[i + 1].begin(), levels[i + 1].end(), levels[i].begin(),
                           levels[i].end()))
            throw ValidationError("chain level " + std::to_string(i + 1) +
                                  " does not contain level " + std::to_string(i));
    std::vector<int> all_local(static_cast<std::size_t>(h));
    for (int v = 0; v < h; ++v) all_local[static_cast<std::size_t>(v)] = v;
    levels.push_back(all_local); // H_{k+1}

    // Hamilton cycles for levels 0..k (local ids).
    std::vector<std::vector<int>> cycles;
    for (int i = 0; i <= k; ++i) {
        std::vector<int> cycle;
        if (static_cast<std::size_t>(i) < cfg.cycles.size() && !cfg.cycles[static_cast<std::size_t>(i)].empty()) {
            for (int v : cfg.cycles[static_cast<std::size_t>(i)]) cycle.push_back(comp.index_of(v));
            std::vector<int> sorted(cycle);
            std::sort(sorted.begin(), sorted.end());
            if (sorted != levels[static_cast<std::size_t>(i)])
                throw ValidationError("cycle " + std::to_string(i) + " does not cover its level");
            for (std::size_t p = 0; p < cycle.size(); ++p)
                if (!comp.graph.edge(cycle[p], cycle[(p + 1) % cycle.size()]))
                    throw ValidationError("cycle " + std::to_string(i) + " is not a Hamilton cycle");
        } else {
            InducedSubgraph level = induced(comp.graph, levels[static_cast<std::size_t>(i)]);
            for (int v : hamilton_cycle(Tournament::check(level.graph)))
                cycle.push_back(level.vertices[static_cast<std::size_t>(v)]);
        }
        cycles.push_back(std::move(cycle));
    }

    // Glued graph G': carrier keeps the component's local ids, the instance's
    // non-core vertices are appended in ascending order.
    const std::vector<int>& core_level =
        glue ? levels[static_cast<std::size_t>(k)] : all_local;
    if (cfg.instance_core.size() != core_level.size())
        throw ValidationError("instance_core size does not match the shared level");
    std::vector<int> g_to_glued(static_cast<std::size_t>(cfg.instance.size()), -1);
    for (std::size_t i = 0; i < cfg.instance_core.size(); ++i) {
        int gv = cfg.instance_core[i];
        if (gv < 0 || gv >= cfg.instance.size())
            throw ValidationError("instance_core names a vertex outside the instance");
        if (g_to_glued[static_cast<std::size_t>(gv)] >= 0)
            throw ValidationError("instance_core repeats a vertex");
        g_to_glued[static_cast<std::size_t>(gv)] = core_level[i];
    }
    // The shared copy must be a genuine induced embedding.
    for (std::size_t i = 0; i < core_level.size(); ++i)
        for (std::size_t j = 0; j < core_level.size(); ++j) {
            bool in_instance = cfg.instance.edge(cfg.instance_core[i], cfg.instance_core[j]);
            bool in_template = comp.graph.edge(core_level[i], core_level[j]);
            if (in_instance != in_template)
                throw ValidationError("instance core is not an induced copy of the shared level");
        }
    int glued_size = h;
    for (int gv = 0; gv < cfg.instance.size(); ++gv)
        if (g_to_glued[static_cast<std::size_t>(gv)] < 0)
            g_to_glued[static_cast<std::size_t>(gv)] = glued_size++;
    Digraph glued(glued_size);
    for (const auto& [u, v] : comp.graph.edges()) glued.add_edge(u, v);
    for (const auto& [u, v] : cfg.instance.edges())
        glued.add_edge(g_to_glued[static_cast<std::size_t>(u)], g_to_glued[static_cast<std::size_t>(v)]);

    // Lambda list.
    std::vector<std::vector<int>> lambdas;
    if (cfg.lambdas) {
        for (const auto& lam : *cfg.lambdas) {
            if (static_cast<int>(lam.size()) != n)
                throw ValidationError("each lambda must assign all " + std::to_string(n) +
                                      " constants");
            std::vector<int> local;
            for (int v : lam) local.push_back(comp.index_of(v));
            lambdas.push_back(std::move(local));
        }
        if (lambdas.empty()) throw ValidationError("lambda list must not be empty");
    } else {
        double factors = std::pow(static_cast<double>(n), static_cast<double>(n));
        double carrier = std::pow(static_cast<double>(glued_size), factors);
        if (!(carrier <= static_cast<double>(cfg.cap)))
            throw CapExceeded("full lambda product needs " +
                              std::to_string(static_cast<long>(factors)) + " factors on a carrier of " +
                              std::to_string(glued_size) + " vertices, above the cap of " +
                              std::to_string(cfg.cap));
        std::vector<int> lambda(static_cast<std::size_t>(n), 0);
        while (true) {
            lambdas.push_back(lambda);
            int pos = n - 1;
            while (pos >= 0 && ++lambda[static_cast<std::size_t>(pos)] == h)
                lambda[static_cast<std::size_t>(pos--)] = 0;
            if (pos < 0) break;
        }
    }
    int big_n = static_cast<int>(lambdas.size());
    double product_size_estimate = std::pow(static_cast<double>(glued_size), big_n);
    if (!(product_size_estimate <= static_cast<double>(cfg.cap)))
        throw CapExceeded("lambda product would have " + std::to_string(glued_size) + "^" +
                          std::to_string(big_n) + " vertices, above the cap of " +
                          std::to_string(cfg.cap));

    std::vector<LabeledGraph> factors;
    for (const auto& lam : lambdas) factors.push_back({glued, lam});
    LabeledGraph product = product_with_constants(factors, cfg.cap);
    long product_size = product.graph.size();

    // Diagonal copy ids: v |-> v * (1 + s + s^2 + ... + s^(N-1)).
    long diag_stride = 0, power_acc = 1;
    for (int i = 0; i < big_n; ++i) {
        diag_stride += power_acc;
        power_acc *= glued_size;
    }
    auto diag = [diag_stride](int v) { return static_cast<long>(v) * diag_stride; };

    GrowingGraph out;
    out.size = static_cast<int>(product_size);
    for (const auto& [u, v] : product.graph.edges()) out.add_edge(u, v);

    nlohmann::json gadget_meta = nlohmann::json::array();
    BuildStats stats;
    stats.kind = to_string(cfg.kind);
    stats.plus = plus;
    stats.k = k;
    stats.n = n;
    stats.factors = big_n;
    stats.glued_vertices = glued_size;
    stats.product_vertices = product_size;

    std::vector<long> diag_level_ids; // diagonal ids of a level, reused below
    auto diag_cycle = [&](int level) {
        std::vector<int> bottom;
        for (int v : cycles[static_cast<std::size_t>(level)]) bottom.push_back(static_cast<int>(diag(v)));
        return bottom;
    };

    // Stage 2: carrier-minus-diagonal-core gadgets. The A-II kind only has
    // this stage in its base (k = 0) form; its general form covers the
    // outermost step through the chain stage instead.
    bool stage2 = !(cfg.kind == ReductionKind::AII && k >= 1);
    if (stage2) {
        const std::vector<int>& core = levels[static_cast<std::size_t>(k)];
        std::vector<int> bottom = diag_cycle(k);
        // Tuples over component vertices only (local ids are 0..h-1).
        std::vector<int> tuple(static_cast<std::size_t>(big_n), 0);
        while (true) {
            long id = 0;
            for (int i = 0; i < big_n; ++i) id = id * glued_size + tuple[static_cast<std::size_t>(i)];
            bool is_core_diag = false;
            for (int v : core)
                if (id == diag(v)) is_core_diag = true;
            if (!is_core_diag) {
                attach_cylinder(out, bottom, static_cast<int>(id), plus, gadget_meta);
                ++stats.gadgets_stage2;
            }
            int pos = big_n - 1;
            while (pos >= 0 && ++tuple[static_cast<std::size_t>(pos)] == h)
                tuple[static_cast<std::size_t>(pos--)] = 0;
            if (pos < 0) break;
        }
    }

    // Chain stage: diagonal differences down the chain.
    bool chain_stage = cfg.kind == ReductionKind::GeneralI || cfg.kind == ReductionKind::GeneralII ||
                       (cfg.kind == ReductionKind::AI && k >= 1) ||
                       (cfg.kind == ReductionKind::AII && k >= 1);
    int chain_top = (cfg.kind == ReductionKind::AII && k >= 1) ? k + 1 : k;
    if (chain_stage) {
        for (int i = 1; i <= chain_top; ++i) {
            std::vector<int> bottom = diag_cycle(i - 1);
            for (int v : levels[static_cast<std::size_t>(i)]) {
                if (std::binary_search(levels[static_cast<std::size_t>(i - 1)].begin(),
                                       levels[static_cast<std::size_t>(i - 1)].end(), v))
                    continue;
                attach_cylinder(out, bottom, static_cast<int>(diag(v)), plus, gadget_meta);
                ++stats.gadgets_chain;
            }
        }
    }

    // d vertices and the third stage of the A-kinds.
    std::vector<int> d_ids;
    if (plus) {
        std::vector<int> bottom = diag_cycle(k);
        for (int i = 0; i < n; ++i) {
            int d = out.add_vertex();
            out.add_edge(product.constants[static_cast<std::size_t>(i)], d);
            d_ids.push_back(d);
            if (cfg.kind == ReductionKind::AI) {
                attach_cylinder(out, bottom, d, true, gadget_meta);
                ++stats.gadgets_stage3;
            }
        }
        stats.d_vertices = n;
    }

    Digraph final_graph = out.build();
    stats.instance_vertices = final_graph.size();
    stats.instance_edges = final_graph.edge_count();

    // Sentence: universals outermost, everything else existential, ascending.
    QcspSentence sentence;
    std::vector<int> var_of(static_cast<std::size_t>(final_graph.size()), -1);
    std::map<long, int> constant_rep; // product vertex -> constant index holding its variable
    if (plus) {
        for (int i = 0; i < n; ++i)
            var_of[static_cast<std::size_t>(d_ids[static_cast<std::size_t>(i)])] =
                sentence.add_variable(Quant::Forall, "z" + std::to_string(i + 1));
        stats.universal_vars = n;
    } else {
        for (int i = 0; i < n; ++i) {
            long cv = product.constants[static_cast<std::size_t>(i)];
            std::string name = "y" + std::to_string(i + 1);
            if (constant_rep.count(cv)) {
                // Collided constants under a truncated lambda list: the extra
                // universal stays in the prefix but binds no vertex.
                sentence.add_variable(Quant::Forall, name);
                ++stats.dummy_universals;
            } else {
                constant_rep[cv] = sentence.add_variable(Quant::Forall, name);
                var_of[static_cast<std::size_t>(cv)] = constant_rep[cv];
            }
        }
        stats.universal_vars = n;
    }
    for (int v = 0; v < final_graph.size(); ++v) {
        if (var_of[static_cast<std::size_t>(v)] >= 0) continue;
        std::string name;
        if (plus) {
            bool is_const = false;
            for (int i = 0; i < n && !is_const; ++i)
                if (product.constants[static_cast<std::size_t>(i)] == v) {
                    name = "c" + std::to_string(i + 1);
                    is_const = true;
                }
            if (!is_const) name = "v" + std::to_string(v);
        } else {
            name = "v" + std::to_string(v);
        }
        var_of[static_cast<std::size_t>(v)] = sentence.add_variable(Quant::Exists, name);
        ++stats.existential_vars;
    }
    for (const auto& [u, v] : final_graph.edges())
        sentence.atoms.push_back({QcspSentence::Atom::Edge, var_of[static_cast<std::size_t>(u)],
                                  var_of[static_cast<std::size_t>(v)]});
    stats.atoms = static_cast<long>(sentence.atoms.size());

    if (plus) {
        // Restrict every non-universal variable to the component, in the
        // template's own vertex numbering.
        std::vector<int> domain(comp.vertices);
        for (std::size_t i = 0; i < sentence.prefix.size(); ++i)
            if (sentence.prefix[i].quant == Quant::Exists) {
                sentence.domains[i] = domain;
                ++stats.restricted_vars;
            }
    }

    nlohmann::json meta;
    meta["kind"] = to_string(cfg.kind);
    meta["component"] = comp.vertices;
    meta["constants"] = product.constants;
    meta["d_vertices"] = d_ids;
    meta["factors"] = big_n;
    meta["gadgets"] = gadget_meta;
    {
        auto& jd = meta["diagonal"] = nlohmann::json::object();
        for (int v = 0; v < h; ++v) jd[std::to_string(v)] = diag(v);
    }

    ReductionOutput outp;
    outp.instance = std::move(final_graph);
    outp.sentence = std::move(sentence);
    outp.stats = stats;
    outp.meta = std::move(meta);
    outp.glued = std::move(glued);
    outp.factors = std::move(factors);
    return outp;
}

} // namespace qct
