#include "qct/digraph.hpp"

#include <algorithm>
#include <sstream>

#include "qct/errors.hpp"

namespace qct {

Digraph::Digraph(int n, std::string name) : n_(n), name_(std::move(name)) {
    if (n < 0) throw ValidationError("vertex count must be non-negative");
    words_ = (static_cast<std::size_t>(n) + 63) / 64;
    // Guard against bit matrices that cannot realistically be allocated.
    if (static_cast<std::size_t>(n) * words_ > (std::size_t{1} << 27))
        throw CapExceeded("adjacency matrix for " + std::to_string(n) +
                          " vertices exceeds the in-memory limit");
    bits_.assign(static_cast<std::size_t>(n) * words_, 0);
}

void Digraph::check_vertex(int v, const char* role) const {
    if (v < 0 || v >= n_)
        throw ValidationError(std::string(role) + " vertex " + std::to_string(v) +
                              " out of range [0, " + std::to_string(n_) + ")");
}

void Digraph::add_edge(int u, int v) {
    check_vertex(u, "source");
    check_vertex(v, "target");
    std::uint64_t& word = bits_[static_cast<std::size_t>(u) * words_ + static_cast<std::size_t>(v >> 6)];
    std::uint64_t mask = std::uint64_t{1} << (v & 63);
    if (!(word & mask)) {
        word |= mask;
        ++edge_count_;
    }
}

bool Digraph::is_reflexive() const {
    for (int v = 0; v < n_; ++v)
        if (!edge(v, v)) return false;
    return true;
}

bool Digraph::has_double_edge() const {
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v)
            if (edge(u, v) && edge(v, u)) return true;
    return false;
}

std::vector<std::pair<int, int>> Digraph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(edge_count_));
    for (int u = 0; u < n_; ++u)
        for (int v = 0; v < n_; ++v)
            if (edge(u, v)) out.emplace_back(u, v);
    return out;
}

std::vector<int> Digraph::out_neighbors(int u) const {
    std::vector<int> out;
    for (int v = 0; v < n_; ++v)
        if (edge(u, v)) out.push_back(v);
    return out;
}

std::vector<int> Digraph::in_neighbors(int u) const {
    std::vector<int> out;
    for (int v = 0; v < n_; ++v)
        if (edge(v, u)) out.push_back(v);
    return out;
}

int Digraph::degree(int u) const {
    int d = 0;
    for (int v = 0; v < n_; ++v) {
        if (edge(u, v)) ++d;
        if (edge(v, u)) ++d;
    }
    return d;
}

Digraph Digraph::reversed() const {
    Digraph r(n_, name_.empty() ? std::string() : name_ + "-reversed");
    for (int u = 0; u < n_; ++u)
        for (int v = 0; v < n_; ++v)
            if (edge(u, v)) r.add_edge(v, u);
    return r;
}

std::string Digraph::to_text() const {
    std::ostringstream os;
    os << "n " << n_ << "\n";
    for (const auto& [u, v] : edges()) os << u << " " << v << "\n";
    return os.str();
}

Digraph Digraph::from_text(std::string_view text) {
    std::istringstream is{std::string(text)};
    std::string line;
    int lineno = 0;
    bool have_header = false;
    bool reflexive = false;
    int n = 0;
    std::vector<std::pair<int, int>> edge_list;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (!have_header) {
            if (first != "n") throw ParseError("expected header line 'n <N> [reflexive]'", lineno, 1);
            if (!(ls >> n) || n < 0) throw ParseError("bad vertex count", lineno, 3);
            std::string flag;
            if (ls >> flag) {
                if (flag != "reflexive") throw ParseError("unknown header flag '" + flag + "'", lineno, 1);
                reflexive = true;
            }
            have_header = true;
            continue;
        }
        int u = 0, v = 0;
        std::istringstream es(line);
        if (!(es >> u >> v)) throw ParseError("expected edge line '<u> <v>'", lineno, 1);
        edge_list.emplace_back(u, v);
    }
    if (!have_header) throw ParseError("missing header line 'n <N>'", lineno, 1);
    return make_digraph(n, edge_list, reflexive);
}

nlohmann::json Digraph::to_json() const {
    nlohmann::json j;
    j["n"] = n_;
    auto& je = j["edges"] = nlohmann::json::array();
    for (const auto& [u, v] : edges()) je.push_back({u, v});
    if (!name_.empty()) j["name"] = name_;
    return j;
}

Digraph Digraph::from_json(const nlohmann::json& j) {
    Digraph d(j.at("n").get<int>(), j.value("name", std::string()));
    for (const auto& e : j.at("edges")) d.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
    return d;
}

nlohmann::json LabeledGraph::to_json() const {
    nlohmann::json j = graph.to_json();
    j["constants"] = constants;
    return j;
}

LabeledGraph LabeledGraph::from_json(const nlohmann::json& j) {
    LabeledGraph g;
    g.graph = Digraph::from_json(j);
    if (j.contains("constants")) g.constants = j.at("constants").get<std::vector<int>>();
    for (int c : g.constants)
        if (c < 0 || c >= g.graph.size())
            throw ValidationError("constant " + std::to_string(c) + " is not a vertex");
    return g;
}

Digraph make_digraph(int n, std::span<const std::pair<int, int>> edges, bool reflexive) {
    Digraph d(n);
    for (const auto& [u, v] : edges) d.add_edge(u, v);
    if (reflexive)
        for (int v = 0; v < n; ++v) d.add_edge(v, v);
    return d;
}

Digraph make_digraph(int n, std::initializer_list<std::pair<int, int>> edges, bool reflexive) {
    return make_digraph(n, std::span<const std::pair<int, int>>(edges.begin(), edges.size()),
                        reflexive);
}

Digraph reflexive_directed_cycle(int m) {
    if (m < 1) throw ValidationError("directed cycle needs at least one vertex");
    Digraph d(m, "DC*_" + std::to_string(m));
    for (int i = 0; i < m; ++i) {
        d.add_edge(i, i);
        if (m > 1) d.add_edge(i, (i + 1) % m);
    }
    return d;
}

int InducedSubgraph::index_of(int original) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), original);
    if (it == vertices.end() || *it != original)
        throw ValidationError("vertex " + std::to_string(original) + " not in induced subgraph");
    return static_cast<int>(it - vertices.begin());
}

InducedSubgraph induced(const Digraph& d, std::span<const int> s) {
    std::vector<int> verts(s.begin(), s.end());
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    for (int v : verts)
        if (v < 0 || v >= d.size())
            throw ValidationError("induced set contains invalid vertex " + std::to_string(v));
    InducedSubgraph result;
    result.graph = Digraph(static_cast<int>(verts.size()));
    result.vertices = verts;
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = 0; j < verts.size(); ++j)
            if (d.edge(verts[i], verts[j]))
                result.graph.add_edge(static_cast<int>(i), static_cast<int>(j));
    return result;
}

namespace {

void check_product_cap(std::size_t required, std::size_t cap, const char* what) {
    if (required > cap)
        throw CapExceeded(std::string(what) + " would have " + std::to_string(required) +
                          " vertices, above the cap of " + std::to_string(cap));
}

} // namespace

Digraph direct_product(const Digraph& a, const Digraph& b, std::size_t cap) {
    std::size_t size = static_cast<std::size_t>(a.size()) * static_cast<std::size_t>(b.size());
    check_product_cap(size, cap, "direct product");
    Digraph p(static_cast<int>(size));
    int nb = b.size();
    for (int x = 0; x < a.size(); ++x)
        for (int y = 0; y < a.size(); ++y) {
            if (!a.edge(x, y)) continue;
            for (int u = 0; u < nb; ++u)
                for (int v = 0; v < nb; ++v)
                    if (b.edge(u, v)) p.add_edge(x * nb + u, y * nb + v);
        }
    return p;
}

Digraph power(const Digraph& a, int k, std::size_t cap) {
    if (k < 1) throw ValidationError("power exponent must be positive");
    std::size_t size = 1;
    for (int i = 0; i < k; ++i) {
        size *= static_cast<std::size_t>(a.size());
        check_product_cap(size, cap, "power");
    }
    Digraph result = a;
    for (int i = 1; i < k; ++i) result = direct_product(result, a, cap);
    return result;
}

LabeledGraph product_with_constants(std::span<const LabeledGraph> parts, std::size_t cap) {
    if (parts.empty()) throw ValidationError("product needs at least one part");
    std::size_t nconst = parts.front().constants.size();
    for (const auto& part : parts)
        if (part.constants.size() != nconst)
            throw ValidationError("parts disagree on constant count");

    std::size_t size = 1;
    for (const auto& part : parts) {
        size *= static_cast<std::size_t>(part.graph.size());
        check_product_cap(size, cap, "product with constants");
    }

    LabeledGraph result;
    if (parts.size() == 1) {
        result = parts.front();
        return result;
    }
    result.graph = parts.front().graph;
    for (std::size_t i = 1; i < parts.size(); ++i)
        result.graph = direct_product(result.graph, parts[i].graph, cap);

    // Constant c_i of the product is the tuple of the parts' interpretations,
    // flattened with the leftmost part most significant.
    result.constants.resize(nconst, 0);
    for (std::size_t ci = 0; ci < nconst; ++ci) {
        long id = 0;
        for (const auto& part : parts) id = id * part.graph.size() + part.constants[ci];
        result.constants[ci] = static_cast<int>(id);
    }
    return result;
}

namespace {

struct TarjanState {
    const Digraph& g;
    std::vector<int> index, low;
    std::vector<bool> on_stack;
    std::vector<int> stack;
    int next_index = 0;
    std::vector<std::vector<int>> components;

    explicit TarjanState(const Digraph& g)
        : g(g), index(g.size(), -1), low(g.size(), 0), on_stack(g.size(), false) {}

    void visit(int v) {
        index[v] = low[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = true;
        for (int w = 0; w < g.size(); ++w) {
            if (w == v || !g.edge(v, w)) continue;
            if (index[w] < 0) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            std::vector<int> comp;
            int w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                comp.push_back(w);
            } while (w != v);
            std::sort(comp.begin(), comp.end());
            components.push_back(std::move(comp));
        }
    }
};

} // namespace

std::vector<std::vector<int>> strongly_connected_components(const Digraph& d) {
    TarjanState state(d);
    for (int v = 0; v < d.size(); ++v)
        if (state.index[v] < 0) state.visit(v);
    return state.components;
}

bool is_strongly_connected(const Digraph& d) {
    if (d.size() == 0) return false;
    return strongly_connected_components(d).size() == 1;
}

} // namespace qct
