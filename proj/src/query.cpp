#include "qct/query.hpp"

#include <algorithm>
#include <cmath>

#include "qct/errors.hpp"
#include "qct/morphisms.hpp"

namespace qct {

QcspSentence canonical_query(const LabeledGraph& g) {
    QcspSentence s;
    std::vector<int> var_of(static_cast<std::size_t>(g.graph.size()), -1);

    // Free variables first, one per constant index; repeats share the vertex.
    for (std::size_t i = 0; i < g.constants.size(); ++i) {
        int idx = s.add_variable(Quant::Free, "y" + std::to_string(i + 1));
        int vertex = g.constants[i];
        if (var_of[static_cast<std::size_t>(vertex)] < 0)
            var_of[static_cast<std::size_t>(vertex)] = idx;
    }
    for (int v = 0; v < g.graph.size(); ++v)
        if (var_of[static_cast<std::size_t>(v)] < 0)
            var_of[static_cast<std::size_t>(v)] = s.add_variable(Quant::Exists, "v" + std::to_string(v));

    for (const auto& [u, v] : g.graph.edges())
        s.atoms.push_back({QcspSentence::Atom::Edge, var_of[static_cast<std::size_t>(u)],
                           var_of[static_cast<std::size_t>(v)]});
    return s;
}

QcspSentence close_universally(QcspSentence s) {
    for (auto& v : s.prefix)
        if (v.quant == Quant::Free) v.quant = Quant::Forall;
    return s;
}

std::pair<LabeledGraph, QcspSentence> containment_sentence(const Tournament& h, std::size_t cap) {
    std::size_t n = static_cast<std::size_t>(h.size());
    double factors = std::pow(static_cast<double>(n), static_cast<double>(n));
    double carrier = std::pow(static_cast<double>(n), factors);
    if (!(carrier <= static_cast<double>(cap)))
        throw CapExceeded("containment product needs " + std::to_string(static_cast<long>(factors)) +
                          " factors and a carrier of " + std::to_string(n) + "^" +
                          std::to_string(static_cast<long>(factors)) + " vertices, above the cap");

    // All assignments lambda: [n] -> V(H), enumerated with lambda(1) most
    // significant, each giving one constant-enriched copy of H.
    std::vector<LabeledGraph> parts;
    std::vector<int> lambda(n, 0);
    while (true) {
        parts.push_back({h.graph(), lambda});
        int pos = static_cast<int>(n) - 1;
        while (pos >= 0 && ++lambda[static_cast<std::size_t>(pos)] == h.size())
            lambda[static_cast<std::size_t>(pos--)] = 0;
        if (pos < 0) break;
    }

    LabeledGraph product = product_with_constants(parts, cap);
    QcspSentence sentence = close_universally(canonical_query(product));
    return {std::move(product), std::move(sentence)};
}

bool qcsp_containment(const Tournament& h, const Tournament& h2, std::size_t cap,
                      const GameOptions& opt) {
    auto [product, sentence] = containment_sentence(h, cap);
    Answer a = solve_game(sentence, h2.graph(), opt);
    if (a == Answer::Budget) throw BudgetExceeded("containment evaluation ran out of budget");
    return a == Answer::True;
}

std::vector<std::vector<int>> pp_closure(const Tournament& h, const std::vector<std::vector<int>>& r,
                                         std::size_t cap) {
    if (r.empty()) throw ValidationError("relation must contain at least one tuple");
    std::size_t arity = r.front().size();
    for (const auto& tuple : r) {
        if (tuple.size() != arity) throw ValidationError("relation tuples disagree on arity");
        for (int v : tuple)
            if (v < 0 || v >= h.size())
                throw ValidationError("relation names vertex " + std::to_string(v) +
                                      " outside the template");
    }

    std::vector<LabeledGraph> parts;
    for (const auto& tuple : r) parts.push_back({h.graph(), tuple});
    LabeledGraph product = product_with_constants(parts, cap);

    // A tuple is in the closure iff pinning the constants to it extends to a
    // full homomorphism of the product into H.
    std::vector<std::vector<int>> closure;
    std::vector<int> candidate(arity, 0);
    while (true) {
        HomConstraints c;
        bool consistent_pins = true;
        for (std::size_t i = 0; i < arity; ++i) {
            int vertex = product.constants[i];
            auto it = c.pinned.find(vertex);
            if (it != c.pinned.end() && it->second != candidate[i]) {
                consistent_pins = false;
                break;
            }
            c.pinned[vertex] = candidate[i];
        }
        if (consistent_pins && find_hom(product.graph, h.graph(), c)) closure.push_back(candidate);

        std::size_t pos = arity;
        while (pos > 0 && ++candidate[pos - 1] == h.size()) candidate[--pos] = 0;
        if (pos == 0) break;
    }
    return closure;
}

} // namespace qct
