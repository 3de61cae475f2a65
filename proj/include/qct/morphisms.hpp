#ifndef QCT_MORPHISMS_HPP
#define QCT_MORPHISMS_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "qct/digraph.hpp"
#include "qct/mapping.hpp"
#include "qct/tournament.hpp"

namespace qct {

// Constraints for the homomorphism search. Pinned values must lie inside the
// allowed sets when both are present.
struct HomConstraints {
    std::map<int, int> pinned;
    std::vector<std::vector<int>> allowed; // empty = unrestricted; else one sorted list per source vertex
    bool surjective = false;
    bool edge_surjective = false;
};

struct SearchLimits {
    std::uint64_t node_budget = 200'000'000;
};

struct EnumStats {
    std::uint64_t nodes = 0;
    bool complete = true; // false when the node budget cut the stream short
};

// First homomorphism A -> B under the constraints, or absent. The search
// assigns vertices by descending degree (ties by id), targets ascending, so
// the witness is deterministic.
std::optional<Mapping> find_hom(const Digraph& a, const Digraph& b, const HomConstraints& c = {},
                                const SearchLimits& limits = {});

// Every constrained homomorphism exactly once, in lexicographic order of the
// tables. The visitor returns false to stop early.
EnumStats enumerate_homs(const Digraph& a, const Digraph& b, const HomConstraints& c,
                         const std::function<bool(const Mapping&)>& visit,
                         const SearchLimits& limits = {});

std::vector<Mapping> all_homs(const Digraph& a, const Digraph& b, const HomConstraints& c = {},
                              const SearchLimits& limits = {});

long count_homs(const Digraph& a, const Digraph& b, const HomConstraints& c = {},
                const SearchLimits& limits = {});

// Homomorphism D -> D that is the identity on `sub` with image inside `sub`.
std::optional<Mapping> retraction_to(const Digraph& d, std::span<const int> sub,
                                     const SearchLimits& limits = {});

struct EndomorphismReport {
    bool endo_trivial = false;    // every endomorphism is an automorphism or constant
    bool retract_trivial = false; // every retraction is the identity or constant
    std::optional<Mapping> nontrivial_witness;           // an endomorphism that is neither
    std::optional<Mapping> nontrivial_retraction;        // a retraction that is neither
};

EndomorphismReport endomorphism_class(const Tournament& t, int bound = 7);

// Is a bijective endomorphism whose inverse is again a homomorphism?
bool is_automorphism(const Mapping& f, const Digraph& d);

std::vector<Mapping> automorphisms(const Digraph& d, int bound = 10);

// All k-ary polymorphisms of D, i.e. homomorphisms from power(D, k) to D.
EnumStats polymorphisms(const Digraph& d, int k, const std::function<bool(const Mapping&)>& visit,
                        const SearchLimits& limits = {});

struct PolymorphismReport {
    bool essentially_unary = false;
    int witness_coordinate = -1;     // valid when essentially_unary
    Mapping witness_unary;           // ditto
    std::optional<int> uniformly_constant;
    bool component_preserving = false;
};

// Classifies a checked polymorphism table against the component chain of the
// underlying tournament.
PolymorphismReport classify_polymorphism(const Mapping& f, const Digraph& d, int k,
                                         const SccChain& chain);

// True iff the ternary median over the transitive order is a polymorphism,
// verified over all triples of edges. Throws NotTransitive otherwise.
bool has_median_polymorphism(const Tournament& t);

// All injective maps H0 -> H whose image induces a copy of H0 via the map.
EnumStats iso_embeddings(const Digraph& h0, const Digraph& h,
                         const std::function<bool(const Mapping&)>& visit,
                         const SearchLimits& limits = {});

std::vector<Mapping> all_iso_embeddings(const Digraph& h0, const Digraph& h,
                                        const SearchLimits& limits = {});

struct HomomorphicImage {
    Digraph image;
    Mapping witness; // surjective and edge-surjective onto `image`
    bool has_double_edge = false;
};

// All homomorphic images of H with the given carrier size, one witness per
// distinct labeled image.
std::vector<HomomorphicImage> edge_surjective_images(const Tournament& h, int size);

// Endomorphisms of D that are the identity on `fixed` are all automorphisms.
bool pair_endo_trivial(const Digraph& d, std::span<const int> fixed,
                       const SearchLimits& limits = {});

// Iterate an endomorphism until it becomes idempotent; the result is a
// retraction of D onto its image.
Mapping idempotent_power(const Mapping& f);

} // namespace qct

#endif
