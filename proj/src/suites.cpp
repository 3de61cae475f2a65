#include "qct/suites.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>

#include "qct/certificate.hpp"
#include "qct/engine.hpp"
#include "qct/errors.hpp"
#include "qct/gadget.hpp"
#include "qct/morphisms.hpp"
#include "qct/query.hpp"

namespace qct {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t rng_below(std::uint64_t& state, std::uint64_t n) {
    return n == 0 ? 0 : splitmix64(state) % n;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master ^ (0x9e3779b97f4a7c15ull * (index + 1));
    return splitmix64(s);
}

QcspSentence random_sentence(std::uint64_t& state, const SentenceGenOptions& opt) {
    QcspSentence s;
    int nvars = 1 + static_cast<int>(rng_below(state, static_cast<std::uint64_t>(opt.max_vars)));
    for (int i = 0; i < nvars; ++i)
        s.add_variable(rng_below(state, 2) ? Quant::Forall : Quant::Exists,
                       "x" + std::to_string(i));
    int natoms = 1 + static_cast<int>(rng_below(state, static_cast<std::uint64_t>(opt.max_atoms)));
    for (int i = 0; i < natoms; ++i) {
        bool eq = opt.eq_percent > 0 &&
                  rng_below(state, 100) < static_cast<std::uint64_t>(opt.eq_percent);
        int a = static_cast<int>(rng_below(state, static_cast<std::uint64_t>(nvars)));
        int b = static_cast<int>(rng_below(state, static_cast<std::uint64_t>(nvars)));
        s.atoms.push_back({eq ? QcspSentence::Atom::Eq : QcspSentence::Atom::Edge, a, b});
    }
    return s;
}

bool SuiteReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.passed(); });
}

nlohmann::json SuiteReport::to_json() const {
    nlohmann::json j;
    j["suite"] = suite;
    j["seed"] = seed;
    j["elapsed_ms"] = elapsed_ms;
    j["passed"] = all_passed();
    auto& jc = j["checks"] = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json e = {{"name", c.name}, {"status", c.status}};
        if (!c.details.empty()) e["details"] = c.details;
        if (!c.reproducer.is_null()) e["reproducer"] = c.reproducer;
        jc.push_back(std::move(e));
    }
    j["counters"] = counters;
    return j;
}

Tournament strong_four() {
    Digraph d(4, "strong4");
    for (int v = 0; v < 4; ++v) d.add_edge(v, v);
    d.add_edge(0, 1);
    d.add_edge(1, 2);
    d.add_edge(2, 0);
    d.add_edge(3, 0);
    d.add_edge(3, 1);
    d.add_edge(2, 3);
    return Tournament::check(std::move(d));
}

namespace {

void run_check(SuiteReport& report, const std::string& name,
               const std::function<std::optional<std::string>(nlohmann::json&)>& body) {
    CheckResult result;
    result.name = name;
    try {
        nlohmann::json reproducer;
        auto failure = body(reproducer);
        if (failure) {
            result.status = "fail";
            result.details = *failure;
            result.reproducer = std::move(reproducer);
        } else {
            result.status = "pass";
        }
    } catch (const BudgetExceeded& e) {
        result.status = "skipped-budget";
        result.details = e.what();
    } catch (const std::exception& e) {
        result.status = "fail";
        result.details = std::string("exception: ") + e.what();
    }
    report.checks.push_back(std::move(result));
}

// Independent enumeration oracle: all orientations, canonicalized.
long brute_force_class_count(int n) {
    int pairs = n * (n - 1) / 2;
    std::vector<std::uint64_t> codes;
    for (std::uint64_t mask = 0; mask < (1ull << pairs); ++mask) {
        Digraph d(n);
        int p = 0;
        for (int i = 0; i < n; ++i) {
            d.add_edge(i, i);
            for (int j = i + 1; j < n; ++j) {
                if ((mask >> p) & 1ull)
                    d.add_edge(i, j);
                else
                    d.add_edge(j, i);
                ++p;
            }
        }
        codes.push_back(tournament_canonical_code(Tournament::check(std::move(d))));
    }
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
    return static_cast<long>(codes.size());
}

void lemmas_suite(SuiteReport& report, const SuiteOptions& opt) {
    SearchLimits limits{opt.node_budget};

    run_check(report, "enumeration-counts", [&](nlohmann::json& repro) -> std::optional<std::string> {
        static const long expected[] = {0, 1, 1, 2, 4, 12, 56};
        for (int n = 1; n <= std::min(opt.max_n, 6); ++n) {
            long got = static_cast<long>(enumerate_tournaments(n).size());
            report.counters["enumerated_classes"] += got;
            if (got != expected[n]) {
                repro = {{"n", n}, {"got", got}, {"expected", expected[n]}};
                return "class count mismatch at n=" + std::to_string(n);
            }
            if (n <= 5 && brute_force_class_count(n) != got) {
                repro = {{"n", n}};
                return "brute-force oracle disagrees at n=" + std::to_string(n);
            }
        }
        return std::nullopt;
    });

    run_check(report, "scc-chain-structure", [&](nlohmann::json& repro) -> std::optional<std::string> {
        for (int n = 1; n <= std::min(opt.max_n, 6); ++n)
            for (const Tournament& t : enumerate_tournaments(n)) {
                SccChain chain = scc_chain(t); // cross-edge order self-checks
                std::vector<int> all;
                for (const auto& comp : chain.components) {
                    if (!is_strongly_connected(induced(t.graph(), comp).graph)) {
                        repro = t.graph().to_json();
                        return "component not strongly connected";
                    }
                    all.insert(all.end(), comp.begin(), comp.end());
                }
                std::sort(all.begin(), all.end());
                for (int v = 0; v < n; ++v)
                    if (all[static_cast<std::size_t>(v)] != v) {
                        repro = t.graph().to_json();
                        return "components do not partition the vertex set";
                    }
                ++report.counters["scc_checked"];
            }
        return std::nullopt;
    });

    run_check(report, "hamilton-cycles", [&](nlohmann::json& repro) -> std::optional<std::string> {
        for (int n = 1; n <= std::min(opt.max_n, 7); ++n)
            for (const Tournament& t : enumerate_tournaments(n)) {
                if (!is_strongly_connected(t.graph())) continue;
                std::vector<int> cycle = hamilton_cycle(t);
                std::vector<int> sorted(cycle);
                std::sort(sorted.begin(), sorted.end());
                for (int v = 0; v < n; ++v)
                    if (sorted[static_cast<std::size_t>(v)] != v) {
                        repro = t.graph().to_json();
                        return "cycle does not visit every vertex once";
                    }
                for (std::size_t i = 0; i < cycle.size(); ++i)
                    if (!t.edge(cycle[i], cycle[(i + 1) % cycle.size()])) {
                        repro = t.graph().to_json();
                        return "cycle misses an arc";
                    }
                ++report.counters["hamilton_checked"];
            }
        return std::nullopt;
    });

    run_check(report, "diagonal-constant-polymorphisms",
              [&](nlohmann::json& repro) -> std::optional<std::string> {
        for (int n = 1; n <= std::min(opt.max_n, 4); ++n)
            for (const Tournament& t : enumerate_tournaments(n)) {
                std::vector<int> arities = {1, 2};
                if (n == 3) arities.push_back(3);
                for (int k : arities) {
                    std::optional<std::string> failure;
                    polymorphisms(t.graph(), k, [&](const Mapping& f) {
                        ++report.counters["polymorphisms_scanned"];
                        // Diagonal ids are v * (n^k - 1) / (n - 1) for n > 1.
                        long stride = 0, acc = 1;
                        for (int i = 0; i < k; ++i) stride += acc, acc *= n;
                        int z = f.table[0];
                        bool diagonal_constant = true;
                        for (int v = 0; v < n; ++v)
                            if (f.table[static_cast<std::size_t>(v * stride)] != z)
                                diagonal_constant = false;
                        if (diagonal_constant &&
                            !std::all_of(f.table.begin(), f.table.end(),
                                         [z](int y) { return y == z; })) {
                            failure = "diagonal-constant polymorphism is not constant";
                            repro = {{"template", t.graph().to_json()},
                                     {"arity", k},
                                     {"table", f.table}};
                            return false;
                        }
                        return true;
                    }, limits);
                    if (failure) return failure;
                }
            }
        return std::nullopt;
    });

    run_check(report, "surjective-polymorphisms-preserve-components",
              [&](nlohmann::json& repro) -> std::optional<std::string> {
        for (int n = 1; n <= std::min(opt.max_n, 4); ++n)
            for (const Tournament& t : enumerate_tournaments(n)) {
                SccChain chain = scc_chain(t);
                for (int k : {1, 2}) {
                    std::optional<std::string> failure;
                    polymorphisms(t.graph(), k, [&](const Mapping& f) {
                        if (!f.is_surjective()) return true;
                        PolymorphismReport pr = classify_polymorphism(f, t.graph(), k, chain);
                        ++report.counters["surjective_polymorphisms"];
                        if (!pr.component_preserving) {
                            failure = "surjective polymorphism moves a component";
                            repro = {{"template", t.graph().to_json()},
                                     {"arity", k},
                                     {"table", f.table}};
                            return false;
                        }
                        return true;
                    }, limits);
                    if (failure) return failure;
                }
            }
        return std::nullopt;
    });

    run_check(report, "endo-trivial-equals-retract-trivial",
              [&](nlohmann::json& repro) -> std::optional<std::string> {
        for (int n = 1; n <= std::min(opt.max_n, 5); ++n)
            for (const Tournament& t : enumerate_tournaments(n)) {
                EndomorphismReport er = endomorphism_class(t);
                ++report.counters["endo_classified"];
                if (er.endo_trivial != er.retract_trivial) {
                    repro = t.graph().to_json();
                    return "endo-triviality and retract-triviality disagree";
                }
            }
        return std::nullopt;
    });

    run_check(report, "binary-polymorphisms-essentially-unary",
              [&](nlohmann::json& repro) -> std::optional<std::string> {
        // Full table scan over all 3^9 binary tables on the 3-cycle; the
        // stream enumerator must agree with the scan.
        Digraph dc3 = reflexive_directed_cycle(3);
        Digraph dc3_sq = power(dc3, 2);
        SccChain chain = scc_chain(Tournament::check(dc3));
        long scan_polymorphisms = 0;
        std::vector<int> table(9, 0);
        while (true) {
            Mapping f(9, 3, table);
            if (f.is_homomorphism(dc3_sq, dc3)) {
                ++scan_polymorphisms;
                PolymorphismReport pr = classify_polymorphism(f, dc3, 2, chain);
                if (!pr.essentially_unary) {
                    repro = {{"table", table}};
                    return "binary polymorphism of the 3-cycle is not essentially unary";
                }
            }
            int pos = 8;
            while (pos >= 0 && ++table[static_cast<std::size_t>(pos)] == 3)
                table[static_cast<std::size_t>(pos--)] = 0;
            if (pos < 0) break;
        }
        report.counters["tables_scanned"] += 19683;
        long stream_count = 0;
        polymorphisms(dc3, 2, [&](const Mapping&) {
            ++stream_count;
            return true;
        }, limits);
        if (stream_count != scan_polymorphisms) {
            repro = {{"scan", scan_polymorphisms}, {"stream", stream_count}};
            return "polymorphism enumerator disagrees with the table scan";
        }
        return std::nullopt;
    });

    run_check(report, "images-have-double-edges",
              [&](nlohmann::json& repro) -> std::optional<std::string> {
        for (int n = 3; n <= std::min(opt.max_n, 5); ++n)
            for (const Tournament& t : enumerate_tournaments(n)) {
                if (!endomorphism_class(t).endo_trivial) continue;
                for (int size = 2; size < n; ++size)
                    for (const HomomorphicImage& img : edge_surjective_images(t, size)) {
                        ++report.counters["images_checked"];
                        if (!img.has_double_edge) {
                            repro = {{"template", t.graph().to_json()},
                                     {"map", img.witness.table}};
                            return "edge-surjective image of an endo-trivial tournament "
                                   "has no double edge";
                        }
                    }
            }
        return std::nullopt;
    });

    run_check(report, "gadget-well-formed", [&](nlohmann::json& repro) -> std::optional<std::string> {
        for (int m = 2; m <= 6; ++m)
            for (bool plus : {false, true}) {
                Gadget g = build_cyl(m, plus);
                long expected_vertices = static_cast<long>(m) * m + (plus ? 1 : 0);
                long expected_edges = 2l * m * m + 2l * m * (m - 1) + (plus ? 2 : 0);
                if (g.graph.size() != expected_vertices || g.graph.edge_count() != expected_edges) {
                    repro = {{"m", m}, {"plus", plus}};
                    return "gadget size mismatch";
                }
                InducedSubgraph bottom = induced(g.graph, g.bottom_cycle);
                InducedSubgraph top = induced(g.graph, g.top_cycle);
                if (!(bottom.graph == reflexive_directed_cycle(m)) ||
                    !(top.graph == reflexive_directed_cycle(m))) {
                    repro = {{"m", m}, {"plus", plus}};
                    return "gadget copies are not reflexive directed cycles";
                }
                if (plus) {
                    if (!g.pendant || !g.graph.has_loop(*g.pendant) ||
                        g.graph.in_neighbors(*g.pendant).size() != 2) { // loop + one feed
                        repro = {{"m", m}};
                        return "pendant wiring is wrong";
                    }
                }
                ++report.counters["gadgets_checked"];
            }
        return std::nullopt;
    });

    run_check(report, "top-maps-are-rotations", [&](nlohmann::json& repro) -> std::optional<std::string> {
        for (int m : {3, 4}) {
            DaggerReport dr = verify_dagger(m, limits);
            report.counters["dagger_top_maps"] += static_cast<long>(dr.top_maps.size());
            if (!dr.holds || !dr.all_isomorphisms) {
                repro = {{"m", m}, {"maps", static_cast<long>(dr.top_maps.size())}};
                return "top maps are not exactly the rotations at m=" + std::to_string(m);
            }
        }
        return std::nullopt;
    });

    run_check(report, "bottom-collapse-forces-full-collapse",
              [&](nlohmann::json& repro) -> std::optional<std::string> {
        std::vector<Tournament> targets;
        for (int n = 1; n <= std::min(opt.max_n, 4); ++n)
            for (const Tournament& t : enumerate_tournaments(n)) targets.push_back(t);
        report.counters["collapse_targets"] = static_cast<long>(targets.size());
        if (!collapse_check(3, targets, false, limits)) {
            repro = {{"m", 3}};
            return "a homomorphism collapses the bottom cycle but not the gadget";
        }
        // The pendant variant genuinely escapes: the check must fail on TT_2.
        std::vector<Tournament> tt2 = {transitive_tournament(2)};
        if (collapse_check(3, tt2, true, limits))
            return "the pendant variant unexpectedly satisfies the collapse property";
        return std::nullopt;
    });
}

void spill_suite(SuiteReport& report, const SuiteOptions& opt) {
    SearchLimits limits{opt.node_budget};
    Digraph dc3 = reflexive_directed_cycle(3);

    run_check(report, "retract-implies-full-spill",
              [&](nlohmann::json& repro) -> std::optional<std::string> {
        for (int n = 3; n <= std::min(opt.max_n, 5); ++n)
            for (const Tournament& t : enumerate_tournaments(n)) {
                // Distinct embedded 3-cycles keyed by image cycle.
                std::vector<std::vector<int>> cycles;
                for (const Mapping& emb : all_iso_embeddings(dc3, t.graph(), limits)) {
                    std::vector<int> cycle = {emb(0), emb(1), emb(2)};
                    std::rotate(cycle.begin(),
                                std::min_element(cycle.begin(), cycle.end()), cycle.end());
                    cycles.push_back(cycle);
                }
                std::sort(cycles.begin(), cycles.end());
                cycles.erase(std::unique(cycles.begin(), cycles.end()), cycles.end());
                for (const auto& cycle : cycles) {
                    SpillReport sr = spill(t, cycle, false, limits);
                    ++report.counters["spills_computed"];
                    std::vector<int> core(cycle);
                    std::sort(core.begin(), core.end());
                    for (const auto& per : sr.per_vertex)
                        if (!std::includes(per.begin(), per.end(), core.begin(), core.end())) {
                            repro = {{"template", t.graph().to_json()}, {"cycle", cycle}};
                            return "a designated vertex cannot reach the whole core";
                        }
                    bool retracts = retraction_to(t.graph(), core, limits).has_value();
                    if (retracts && !sr.full) {
                        repro = {{"template", t.graph().to_json()}, {"cycle", cycle}};
                        return "retracting template has partial spill";
                    }
                }
            }
        return std::nullopt;
    });

    run_check(report, "pendant-spill-extends-past-the-component",
              [&](nlohmann::json& repro) -> std::optional<std::string> {
        for (int sinks = 0; sinks <= 2; ++sinks) {
            std::vector<Digraph> blocks = {dc3};
            for (int i = 0; i < sinks; ++i) blocks.push_back(reflexive_directed_cycle(1));
            Tournament t = chain_tournament(blocks);
            SpillReport sr = spill(t, std::vector<int>{0, 1, 2}, true, limits);
            ++report.counters["pendant_spills"];
            if (!sr.full) {
                repro = {{"template", t.graph().to_json()}, {"sinks", sinks}};
                return "pendant spill is not full after appending sink-side vertices";
            }
        }
        return std::nullopt;
    });

    run_check(report, "full-spill-without-retraction-exists",
              [&](nlohmann::json& repro) -> std::optional<std::string> {
        SpillWitnessScan scan = scan_spill_witnesses(limits);
        report.counters["orientations_scanned"] = scan.scanned;
        report.counters["witnesses_found"] = static_cast<long>(scan.witness_masks.size());
        if (scan.witness_masks.empty()) {
            repro = {{"scanned", scan.scanned}};
            return "no six-vertex tournament with full spill and no retraction";
        }
        std::ostringstream os;
        os << "least witness mask " << scan.witness_masks.front() << "; edges:";
        for (const auto& [u, v] : scan.least_witness->graph().edges())
            if (u != v) os << " " << u << "->" << v;
        report.checks.push_back({"witness-edge-list", "pass", os.str(), {}});
        return std::nullopt;
    });
}

void reduction_suite(SuiteReport& report, const SuiteOptions& opt) {
    (void)opt;

    run_check(report, "builder-structure", [&](nlohmann::json& repro) -> std::optional<std::string> {
        for (const ReductionConfig& cfg : reduction_demo_configs()) {
            ReductionOutput out = build_reduction(cfg);
            ++report.counters["reductions_built"];
            const BuildStats& st = out.stats;
            if (st.universal_vars != st.n) {
                repro = st.to_json();
                return std::string(to_string(cfg.kind)) + ": universal count is not n";
            }
            // Every lambda factor's reduct is the glued instance.
            for (const LabeledGraph& factor : out.factors)
                if (!(factor.graph == out.glued)) {
                    repro = st.to_json();
                    return std::string(to_string(cfg.kind)) + ": factor reduct differs from G'";
                }
            // Prefix shape: universals first, then existentials.
            bool seen_exists = false;
            for (const auto& v : out.sentence.prefix) {
                if (v.quant == Quant::Exists) seen_exists = true;
                if (v.quant == Quant::Forall && seen_exists) {
                    repro = st.to_json();
                    return std::string(to_string(cfg.kind)) + ": universals are not outermost";
                }
            }
            long forall_count = 0;
            for (const auto& v : out.sentence.prefix)
                if (v.quant == Quant::Forall) ++forall_count;
            if (forall_count != st.n) {
                repro = st.to_json();
                return std::string(to_string(cfg.kind)) + ": prefix universal count mismatch";
            }
            // Atoms only reference declared variables and mirror the edges.
            if (st.atoms != st.instance_edges) {
                repro = st.to_json();
                return std::string(to_string(cfg.kind)) + ": atom count differs from edge count";
            }
            for (const auto& atom : out.sentence.atoms)
                if (atom.a < 0 || atom.b < 0 ||
                    atom.a >= static_cast<int>(out.sentence.prefix.size()) ||
                    atom.b >= static_cast<int>(out.sentence.prefix.size())) {
                    repro = st.to_json();
                    return std::string(to_string(cfg.kind)) + ": atom references unknown variable";
                }
            bool is_plus = cfg.kind == ReductionKind::AI || cfg.kind == ReductionKind::AII;
            if (is_plus) {
                long restricted = 0;
                for (const auto& dom : out.sentence.domains)
                    if (dom) ++restricted;
                if (restricted != st.restricted_vars || restricted != st.existential_vars) {
                    repro = st.to_json();
                    return std::string(to_string(cfg.kind)) +
                           ": domain restrictions do not cover the existential variables";
                }
            }
        }
        return std::nullopt;
    });

    run_check(report, "closure-monotone-idempotent",
              [&](nlohmann::json& repro) -> std::optional<std::string> {
        Tournament tt2 = transitive_tournament(2);
        Tournament dc3 = Tournament::check(reflexive_directed_cycle(3));
        std::vector<std::pair<Tournament, std::vector<std::vector<int>>>> cases = {
            {tt2, {{0, 1}}},
            {tt2, {{1, 0}}},
            {dc3, {{0, 0}}},
            {dc3, {{0, 1}, {1, 2}}},
        };
        for (const auto& [t, r] : cases) {
            auto closure = pp_closure(t, r);
            ++report.counters["closures_computed"];
            for (const auto& tuple : r)
                if (std::find(closure.begin(), closure.end(), tuple) == closure.end()) {
                    repro = {{"relation", r}};
                    return "closure does not contain the relation";
                }
            if (pp_closure(t, closure) != closure) {
                repro = {{"relation", r}};
                return "closure is not idempotent";
            }
        }
        // Frozen endomorphism-route value for the TT_2 singleton.
        auto closure = pp_closure(tt2, {{0, 1}});
        std::vector<std::vector<int>> expected = {{0, 0}, {0, 1}, {1, 1}};
        if (closure != expected) {
            repro = {{"closure", closure}};
            return "closure of {(0,1)} over the 2-chain is wrong";
        }
        return std::nullopt;
    });

    run_check(report, "containment-products", [&](nlohmann::json&) -> std::optional<std::string> {
        Tournament tt2 = transitive_tournament(2);
        if (!qcsp_containment(tt2, tt2)) return "identity containment fails";
        Tournament reversed = Tournament::check(transitive_tournament(2).graph().reversed());
        if (!qcsp_containment(tt2, reversed)) return "containment between isomorphic templates fails";
        try {
            containment_sentence(Tournament::check(reflexive_directed_cycle(3)));
            return std::string("three-vertex containment product did not hit the cap");
        } catch (const CapExceeded&) {
        }
        ++report.counters["containments_checked"];
        return std::nullopt;
    });

    run_check(report, "canonical-query-matches-hom-search",
              [&](nlohmann::json& repro) -> std::optional<std::string> {
        std::vector<Digraph> sources;
        for (int n = 1; n <= 3; ++n)
            for (const Tournament& t : enumerate_tournaments(n)) sources.push_back(t.graph());
        sources.push_back(reflexive_directed_cycle(4));
        std::vector<Digraph> targets;
        for (int n = 1; n <= 4; ++n)
            for (const Tournament& t : enumerate_tournaments(n)) targets.push_back(t.graph());
        for (const Digraph& a : sources)
            for (const Digraph& b : targets) {
                QcspSentence q = canonical_query({a, {}});
                bool via_game = solve_game(q, b) == Answer::True;
                bool via_search = find_hom(a, b).has_value();
                ++report.counters["canonical_queries"];
                if (via_game != via_search) {
                    repro = {{"source", a.to_json()}, {"target", b.to_json()}};
                    return "canonical query truth disagrees with homomorphism search";
                }
            }
        return std::nullopt;
    });
}

void solver_suite(SuiteReport& report, const SuiteOptions& opt) {
    GameOptions game_opt;
    game_opt.node_budget = opt.node_budget;
    Tournament tt2 = transitive_tournament(2);

    run_check(report, "q2sat-agrees-with-game", [&](nlohmann::json& repro) -> std::optional<std::string> {
        std::uint64_t state = derive_seed(opt.seed, 1);
        SentenceGenOptions gen;
        gen.max_vars = 12;
        gen.max_atoms = 16;
        for (int i = 0; i < 300; ++i) {
            QcspSentence s = random_sentence(state, gen);
            bool game = solve_game(s, tt2.graph(), game_opt) == Answer::True;
            bool q2 = solve_q2sat(tt2_implication_form(s));
            ++report.counters["q2sat_sentences"];
            if (game != q2) {
                repro = {{"sentence", serialize(s)}};
                return "q2sat disagrees with the game on " + serialize(s);
            }
        }
        return std::nullopt;
    });

    run_check(report, "nl-templates-route-through-two-chain",
              [&](nlohmann::json& repro) -> std::optional<std::string> {
        std::vector<Tournament> templates;
        for (int n = 2; n <= std::min(opt.max_n, 5); ++n)
            for (const Tournament& t : enumerate_tournaments(n))
                if (classify(t).verdict == Classification::NL) templates.push_back(t);
        SentenceGenOptions gen;
        for (const Tournament& t : templates) {
            std::uint64_t state = derive_seed(opt.seed, 100 + static_cast<std::uint64_t>(t.size()));
            for (int i = 0; i < 200; ++i) {
                QcspSentence s = random_sentence(state, gen);
                bool over_t = solve_game(s, t.graph(), game_opt) == Answer::True;
                bool over_tt2 = solve_game(s, tt2.graph(), game_opt) == Answer::True;
                bool q2 = solve_q2sat(tt2_implication_form(s));
                ++report.counters["equivalence_sentences"];
                if (over_t != over_tt2 || over_tt2 != q2) {
                    repro = {{"template", t.graph().to_json()}, {"sentence", serialize(s)}};
                    return "solver routes disagree on " + serialize(s);
                }
            }
        }
        return std::nullopt;
    });

    run_check(report, "equality-elimination-preserves-answers",
              [&](nlohmann::json& repro) -> std::optional<std::string> {
        std::vector<Tournament> templates;
        for (int n = 2; n <= std::min(opt.max_n, 4); ++n)
            for (const Tournament& t : enumerate_tournaments(n)) templates.push_back(t);
        std::uint64_t state = derive_seed(opt.seed, 2);
        SentenceGenOptions gen;
        gen.max_vars = 8;
        gen.eq_percent = 40;
        for (int i = 0; i < 300; ++i) {
            QcspSentence s = random_sentence(state, gen);
            const Tournament& t = templates[static_cast<std::size_t>(i) % templates.size()];
            bool native = solve_game(s, t.graph(), game_opt) == Answer::True;
            auto eliminated = eliminate_equality(s);
            bool processed =
                std::holds_alternative<ConstantFalse>(eliminated)
                    ? false
                    : solve_game(std::get<QcspSentence>(eliminated), t.graph(), game_opt) ==
                          Answer::True;
            ++report.counters["equality_sentences"];
            if (native != processed) {
                repro = {{"template", t.graph().to_json()}, {"sentence", serialize(s)}};
                return "equality elimination changed the answer of " + serialize(s);
            }
        }
        return std::nullopt;
    });

    run_check(report, "power-surjections-verify",
              [&](nlohmann::json& repro) -> std::optional<std::string> {
        for (int n = 4; n <= std::min(opt.max_n + 1, 6); ++n)
            for (const Tournament& t : enumerate_tournaments(n)) {
                Classification c = classify(t);
                if (c.verdict != Classification::NL) continue;
                Mapping f = sur_hom_tt2_power(t); // self-verifying
                Mapping g = sur_hom_to_tt2(t);    // ditto
                ++report.counters["surjections_built"];
                if (f.source_size != (1 << (t.size() - 2))) {
                    repro = t.graph().to_json();
                    return "power surjection has the wrong carrier";
                }
                (void)g;
            }
        try {
            sur_hom_tt2_power(transitive_tournament(3));
            return std::string("three-vertex template must route through the transitive path");
        } catch (const ValidationError&) {
        }
        return std::nullopt;
    });

    run_check(report, "flipping-exists-to-forall-never-helps",
              [&](nlohmann::json& repro) -> std::optional<std::string> {
        std::uint64_t state = derive_seed(opt.seed, 3);
        SentenceGenOptions gen;
        for (int i = 0; i < 200; ++i) {
            QcspSentence s = random_sentence(state, gen);
            bool base = solve_game(s, tt2.graph(), game_opt) == Answer::True;
            for (std::size_t v = 0; v < s.prefix.size(); ++v) {
                if (s.prefix[v].quant != Quant::Exists) continue;
                QcspSentence flipped = s;
                flipped.prefix[v].quant = Quant::Forall;
                bool strong = solve_game(flipped, tt2.graph(), game_opt) == Answer::True;
                ++report.counters["prefix_flips"];
                if (strong && !base) {
                    repro = {{"sentence", serialize(s)}, {"variable", s.prefix[v].name}};
                    return "strengthening a quantifier turned false into true";
                }
            }
        }
        return std::nullopt;
    });

    run_check(report, "classifier-is-endpoint-pure",
              [&](nlohmann::json& repro) -> std::optional<std::string> {
        std::map<std::pair<int, int>, Classification::Verdict> seen;
        for (int n = 1; n <= std::min(opt.max_n, 5); ++n)
            for (const Tournament& t : enumerate_tournaments(n)) {
                Classification c = classify(t);
                auto key = std::make_pair(c.initial_size, c.final_size);
                auto [it, inserted] = seen.emplace(key, c.verdict);
                ++report.counters["templates_classified"];
                if (!inserted && it->second != c.verdict) {
                    repro = t.graph().to_json();
                    return "templates with equal endpoint sizes got different verdicts";
                }
                if ((c.verdict == Classification::NL) !=
                    (c.initial_size == 1 && c.final_size == 1)) {
                    repro = t.graph().to_json();
                    return "verdict does not follow the endpoint rule";
                }
            }
        return std::nullopt;
    });
}

} // namespace

std::vector<std::string> suite_names() { return {"lemmas", "spill", "reduction", "solver"}; }

SuiteReport run_suite(const std::string& name, const SuiteOptions& opt) {
    SuiteReport report;
    report.suite = name;
    report.seed = opt.seed;
    auto start = std::chrono::steady_clock::now();
    if (name == "lemmas")
        lemmas_suite(report, opt);
    else if (name == "spill")
        spill_suite(report, opt);
    else if (name == "reduction")
        reduction_suite(report, opt);
    else if (name == "solver")
        solver_suite(report, opt);
    else
        throw ValidationError("unknown suite '" + name + "'; expected one of lemmas, spill, "
                              "reduction, solver");
    report.elapsed_ms = static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                              std::chrono::steady_clock::now() - start)
                                              .count());
    return report;
}

std::vector<ReductionConfig> reduction_demo_configs() {
    Tournament s4 = strong_four();
    Digraph dc3 = reflexive_directed_cycle(3);

    // A retraction instance for the 3-cycle core: the core plus one apex.
    Digraph core_instance(4);
    for (int v = 0; v < 3; ++v) core_instance.add_edge(v, v);
    core_instance.add_edge(0, 1);
    core_instance.add_edge(1, 2);
    core_instance.add_edge(2, 0);
    core_instance.add_edge(3, 0);
    core_instance.add_edge(1, 3);

    // A retraction instance containing the whole 4-vertex template.
    Digraph full_instance(5);
    for (const auto& [u, v] : s4.graph().edges()) full_instance.add_edge(u, v);
    full_instance.add_edge(4, 0);
    full_instance.add_edge(1, 4);

    std::vector<std::vector<int>> two_lambdas = {{0, 1, 2, 3}, {3, 2, 1, 0}};

    std::vector<ReductionConfig> configs;

    ReductionConfig base1;
    base1.kind = ReductionKind::BaseI;
    base1.template_graph = s4.graph();
    base1.chain = {{0, 1, 2}};
    base1.cycles = {{0, 1, 2}};
    base1.instance = core_instance;
    base1.instance_core = {0, 1, 2};
    base1.lambdas = two_lambdas;
    configs.push_back(base1);

    ReductionConfig base2;
    base2.kind = ReductionKind::BaseII;
    base2.template_graph = dc3;
    base2.chain = {{0, 1, 2}};
    base2.cycles = {{0, 1, 2}};
    base2.instance = dc3;
    base2.instance_core = {0, 1, 2};
    base2.lambdas = std::vector<std::vector<int>>{{0, 0, 0}};
    configs.push_back(base2);

    ReductionConfig gen1;
    gen1.kind = ReductionKind::GeneralI;
    gen1.template_graph = s4.graph();
    gen1.chain = {{0, 1, 2}, {0, 1, 2, 3}};
    gen1.cycles = {{0, 1, 2}};
    gen1.instance = full_instance;
    gen1.instance_core = {0, 1, 2, 3};
    gen1.lambdas = two_lambdas;
    configs.push_back(gen1);

    ReductionConfig gen2 = gen1;
    gen2.kind = ReductionKind::GeneralII;
    configs.push_back(gen2);

    ReductionConfig a1;
    a1.kind = ReductionKind::AI;
    a1.template_graph = s4.graph();
    a1.chain = {{0, 1, 2}};
    a1.cycles = {{0, 1, 2}};
    a1.instance = core_instance;
    a1.instance_core = {0, 1, 2};
    a1.lambdas = two_lambdas;
    configs.push_back(a1);

    ReductionConfig a2;
    a2.kind = ReductionKind::AII;
    a2.template_graph = s4.graph();
    a2.chain = {{0, 1, 2}};
    a2.cycles = {{0, 1, 2}};
    a2.instance = full_instance;
    a2.instance_core = {0, 1, 2, 3};
    a2.lambdas = two_lambdas;
    configs.push_back(a2);

    return configs;
}

} // namespace qct
