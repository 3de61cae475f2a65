#ifndef QCT_DIGRAPH_HPP
#define QCT_DIGRAPH_HPP

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace qct {

// Finite directed graph with optional loops. Vertices are dense 0-based ids.
// Adjacency is a bit matrix, so edge tests are constant time; values are
// treated as immutable once built.
class Digraph {
public:
    Digraph() = default;
    explicit Digraph(int n, std::string name = "");

    int size() const { return n_; }
    const std::string& name() const { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    bool edge(int u, int v) const {
        return (bits_[static_cast<std::size_t>(u) * words_ + static_cast<std::size_t>(v >> 6)] >>
                (v & 63)) & 1u;
    }
    void add_edge(int u, int v); // range-checked; duplicates are ignored
    long edge_count() const { return edge_count_; }

    bool has_loop(int v) const { return edge(v, v); }
    bool is_reflexive() const;
    bool has_double_edge() const;

    std::vector<std::pair<int, int>> edges() const; // sorted (u, v) ascending
    std::vector<int> out_neighbors(int u) const;
    std::vector<int> in_neighbors(int u) const;
    int degree(int u) const; // in + out, loops counted once each way

    Digraph reversed() const;

    bool operator==(const Digraph& other) const {
        return n_ == other.n_ && bits_ == other.bits_;
    }

    // Text form: "n <N>" then one "u v" line per edge, sorted; '#' comments.
    std::string to_text() const;
    static Digraph from_text(std::string_view text);

    nlohmann::json to_json() const;
    static Digraph from_json(const nlohmann::json& j);

private:
    void check_vertex(int v, const char* role) const;

    int n_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> bits_;
    long edge_count_ = 0;
    std::string name_;
};

// Digraph enriched with named constants c_1..c_k interpreted as vertices.
// Constants may repeat.
struct LabeledGraph {
    Digraph graph;
    std::vector<int> constants;

    nlohmann::json to_json() const;
    static LabeledGraph from_json(const nlohmann::json& j);
};

Digraph make_digraph(int n, std::span<const std::pair<int, int>> edges, bool reflexive = false);
Digraph make_digraph(int n, std::initializer_list<std::pair<int, int>> edges, bool reflexive = false);

// m vertices with loops and edges i -> (i+1) mod m.
Digraph reflexive_directed_cycle(int m);

struct InducedSubgraph {
    Digraph graph;
    std::vector<int> vertices; // vertices[new_id] = original id, ascending
    int index_of(int original) const;
};

InducedSubgraph induced(const Digraph& d, std::span<const int> s);

inline constexpr std::size_t kDefaultProductCap = 1000000;

// Direct products; carriers are flattened with the leftmost factor most
// significant, so (x, y) in A x B gets id x*|B| + y.
Digraph direct_product(const Digraph& a, const Digraph& b, std::size_t cap = kDefaultProductCap);
Digraph power(const Digraph& a, int k, std::size_t cap = kDefaultProductCap);
LabeledGraph product_with_constants(std::span<const LabeledGraph> parts,
                                    std::size_t cap = kDefaultProductCap);

// Strongly connected components in no particular order.
std::vector<std::vector<int>> strongly_connected_components(const Digraph& d);
bool is_strongly_connected(const Digraph& d);

} // namespace qct

#endif
