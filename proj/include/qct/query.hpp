#ifndef QCT_QUERY_HPP
#define QCT_QUERY_HPP

#include "qct/digraph.hpp"
#include "qct/engine.hpp"
#include "qct/qcsp.hpp"
#include "qct/tournament.hpp"

namespace qct {

// The canonical query of a labeled graph: one existential variable per
// non-constant vertex, free variables y1..yk for the constants, one edge
// atom per edge (loops included). When several constants share a vertex the
// lowest-index y name stands for it and the remaining names still appear in
// the prefix as unused free variables, so the designated arity is stable.
QcspSentence canonical_query(const LabeledGraph& g);

// Turns the free variables into outermost universals.
QcspSentence close_universally(QcspSentence s);

// The full product of H(lambda) over all lambda: [n] -> V(H) with the
// canonical query closed universally. Only |V(H)| = 2 stays under any
// reasonable cap; larger templates report the factor count and refuse.
std::pair<LabeledGraph, QcspSentence> containment_sentence(const Tournament& h,
                                                           std::size_t cap = kDefaultProductCap);

// Evaluates the containment sentence of H on H2.
bool qcsp_containment(const Tournament& h, const Tournament& h2,
                      std::size_t cap = kDefaultProductCap, const GameOptions& opt = {});

// Closure of the relation R (a list of k-tuples over V(H)) under the
// polymorphisms of H, computed through the product with constants: one
// factor per tuple, one homomorphism query per candidate image tuple.
std::vector<std::vector<int>> pp_closure(const Tournament& h,
                                         const std::vector<std::vector<int>>& r,
                                         std::size_t cap = kDefaultProductCap);

} // namespace qct

#endif
