#ifndef QCT_MAPPING_HPP
#define QCT_MAPPING_HPP

#include <vector>

#include <json.hpp>

#include "qct/digraph.hpp"

namespace qct {

// A total function between vertex sets, used for homomorphisms, retractions,
// embeddings and polymorphism tables alike.
struct Mapping {
    int source_size = 0;
    int target_size = 0;
    std::vector<int> table;

    Mapping() = default;
    Mapping(int source_size, int target_size, std::vector<int> table)
        : source_size(source_size), target_size(target_size), table(std::move(table)) {}

    static Mapping identity(int n);
    static Mapping constant(int source_size, int target_size, int value);

    int operator()(int v) const { return table[static_cast<std::size_t>(v)]; }

    bool is_homomorphism(const Digraph& a, const Digraph& b) const;
    bool is_surjective() const;
    bool is_injective() const;
    bool is_edge_surjective(const Digraph& a, const Digraph& b) const;
    bool is_identity_on(std::span<const int> vertices) const;

    // this o inner, i.e. v |-> this(inner(v)).
    Mapping compose(const Mapping& inner) const;

    std::vector<int> image() const; // sorted, deduplicated

    bool operator==(const Mapping& other) const = default;

    nlohmann::json to_json() const { return nlohmann::json(table); }
};

} // namespace qct

#endif
