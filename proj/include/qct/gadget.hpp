#ifndef QCT_GADGET_HPP
#define QCT_GADGET_HPP

#include <optional>
#include <set>
#include <span>
#include <vector>

#include "qct/digraph.hpp"
#include "qct/morphisms.hpp"
#include "qct/tournament.hpp"

namespace qct {

// The cylinder gadget: m stacked copies of the reflexive directed m-cycle.
// Copy 0 is the bottom. Vertex (i, j) = position i in copy j has id j*m + i.
// Inter-copy wiring, for 0 <= j < m-1 and all i:
//   (i, j)   -> (i, j+1)            (upward)
//   (i, j+1) -> ((i+1) mod m, j)    (downward, one step around the cycle)
// The plus variant appends one pendant vertex with a loop and a single
// incoming edge from the top cycle.
struct Gadget {
    Digraph graph;
    std::vector<int> bottom_cycle; // ordered positions of copy 0
    std::vector<int> top_cycle;    // ordered positions of copy m-1
    std::optional<int> pendant;
    int m = 0;
};

Gadget build_cyl(int m, bool plus = false);

// H with a cylinder glued on: the gadget's bottom cycle is identified
// positionally with the Hamilton cycle `hc` of an embedded core of H.
// H keeps its vertex ids; new gadget vertices are appended.
struct SpillInstance {
    Digraph graph;                 // F
    std::vector<int> core;         // hc as given (ids in H)
    std::vector<int> bottom_cycle; // == core
    std::vector<int> top_cycle;
    std::optional<int> pendant;
    int m = 0;
    int h_size = 0;
};

SpillInstance attach_spill_instance(const Tournament& h, std::span<const int> hc, bool plus = false);

// For each designated gadget vertex x (the top-cycle vertices, or just the
// pendant in plus mode), the set of y in V(H) reachable as r(x) over
// retractions r of F back to H.
struct SpillReport {
    std::vector<int> designated;               // ids of x in F
    std::vector<std::vector<int>> per_vertex;  // aligned with designated; sorted
    std::vector<int> union_set;                // sorted
    bool full = false;                         // union == V(H)

    nlohmann::json to_json() const;
};

SpillReport spill(const Tournament& h, std::span<const int> hc, bool plus = false,
                  const SearchLimits& limits = {});

// Retracting the cylinder onto its bottom copy induces maps from top-cycle
// positions to bottom-cycle positions; the property holds when those are
// exactly the m rotations.
struct DaggerReport {
    bool holds = false;
    std::set<std::vector<int>> top_maps; // position i -> bottom position
    bool all_isomorphisms = false;
};

DaggerReport verify_dagger(int m, const SearchLimits& limits = {});

// True iff for every homomorphism from the gadget to each target that sends
// the bottom cycle to a single vertex, the whole gadget collapses to that
// vertex.
bool collapse_check(int m, std::span<const Tournament> targets, bool plus = false,
                    const SearchLimits& limits = {});

// Six-vertex tournaments built over the fixed 3-cycle 0 -> 1 -> 2 -> 0 by
// orienting the 12 remaining pairs. The mask bit p decides pair p of
// (0,3),(0,4),(0,5),(1,3),(1,4),(1,5),(2,3),(2,4),(2,5),(3,4),(3,5),(4,5):
// set means the arc runs first -> second.
Tournament six_vertex_extension(unsigned mask);

// Exhaustive scan of all 4096 extensions for tournaments whose spill over the
// fixed core is full although they do not retract to the core.
struct SpillWitnessScan {
    long scanned = 0;
    std::vector<unsigned> witness_masks; // ascending
    std::optional<Tournament> least_witness;
};

SpillWitnessScan scan_spill_witnesses(const SearchLimits& limits = {});

} // namespace qct

#endif
