#include "qct/mapping.hpp"

#include <algorithm>

#include "qct/errors.hpp"

namespace qct {

Mapping Mapping::identity(int n) {
    std::vector<int> table(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) table[static_cast<std::size_t>(i)] = i;
    return Mapping(n, n, std::move(table));
}

Mapping Mapping::constant(int source_size, int target_size, int value) {
    return Mapping(source_size, target_size,
                   std::vector<int>(static_cast<std::size_t>(source_size), value));
}

bool Mapping::is_homomorphism(const Digraph& a, const Digraph& b) const {
    if (a.size() != source_size || b.size() != target_size) return false;
    for (int u = 0; u < a.size(); ++u)
        for (int v = 0; v < a.size(); ++v)
            if (a.edge(u, v) && !b.edge(table[u], table[v])) return false;
    return true;
}

bool Mapping::is_surjective() const {
    std::vector<bool> hit(static_cast<std::size_t>(target_size), false);
    for (int v : table) hit[static_cast<std::size_t>(v)] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

bool Mapping::is_injective() const {
    std::vector<bool> hit(static_cast<std::size_t>(target_size), false);
    for (int v : table) {
        if (hit[static_cast<std::size_t>(v)]) return false;
        hit[static_cast<std::size_t>(v)] = true;
    }
    return true;
}

bool Mapping::is_edge_surjective(const Digraph& a, const Digraph& b) const {
    Digraph covered(b.size());
    for (const auto& [u, v] : a.edges()) covered.add_edge(table[u], table[v]);
    for (const auto& [u, v] : b.edges())
        if (!covered.edge(u, v)) return false;
    return true;
}

bool Mapping::is_identity_on(std::span<const int> vertices) const {
    return std::all_of(vertices.begin(), vertices.end(),
                       [this](int v) { return table[static_cast<std::size_t>(v)] == v; });
}

Mapping Mapping::compose(const Mapping& inner) const {
    if (inner.target_size != source_size)
        throw ValidationError("mapping composition size mismatch");
    std::vector<int> table_out(inner.table.size());
    for (std::size_t i = 0; i < inner.table.size(); ++i)
        table_out[i] = table[static_cast<std::size_t>(inner.table[i])];
    return Mapping(inner.source_size, target_size, std::move(table_out));
}

std::vector<int> Mapping::image() const {
    std::vector<int> img(table);
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    return img;
}

} // namespace qct
