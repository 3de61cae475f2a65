#ifndef QCT_REDUCTION_HPP
#define QCT_REDUCTION_HPP

#include <optional>
#include <string>
#include <vector>

#include "qct/digraph.hpp"
#include "qct/qcsp.hpp"
#include "qct/tournament.hpp"

namespace qct {

// The six reduction pipelines. The I-kinds glue the template onto a
// retraction instance of the innermost relevant level, the II-kinds take an
// instance that already contains the template level. The A-kinds work inside
// the initial strongly connected component of the template, use the pendant
// gadget variant, and turn fresh d_i vertices rather than the constants into
// the universal variables.
enum class ReductionKind { BaseI, BaseII, GeneralI, GeneralII, AI, AII };

const char* to_string(ReductionKind k);
ReductionKind reduction_kind_from_string(const std::string& name);

struct ReductionConfig {
    ReductionKind kind = ReductionKind::BaseI;
    Digraph template_graph;

    // H_0 c= H_1 c= ... c= H_k as template vertex ids; the outermost level
    // H_{k+1} is implicit (the whole template, or its initial component for
    // the A-kinds).
    std::vector<std::vector<int>> chain;
    // Optional Hamilton cycles per chain level (template ids); defaults to
    // the deterministic hamilton_cycle output on the induced level.
    std::vector<std::vector<int>> cycles;

    Digraph instance;
    // Where the shared copy sits in the instance, aligned positionally with
    // the ascending vertex list of chain.back() (I-kinds) or of the outermost
    // level (II-kinds).
    std::vector<int> instance_core;

    // Explicit truncated lambda list (template vertex ids); absent means ALL,
    // which is size-guarded and only feasible for two-vertex carriers.
    std::optional<std::vector<std::vector<int>>> lambdas;

    std::size_t cap = kDefaultProductCap;
};

struct BuildStats {
    std::string kind;
    bool plus = false;
    int k = 0;
    int n = 0; // universal variable count
    int factors = 0;
    int glued_vertices = 0;
    long product_vertices = 0;
    int gadgets_stage2 = 0;
    int gadgets_chain = 0;
    int gadgets_stage3 = 0;
    int d_vertices = 0;
    int dummy_universals = 0;
    long instance_vertices = 0;
    long instance_edges = 0;
    int universal_vars = 0;
    long existential_vars = 0;
    long atoms = 0;
    long restricted_vars = 0;

    nlohmann::json to_json() const;
};

struct ReductionOutput {
    Digraph instance;       // the final gadgeted graph
    QcspSentence sentence;  // constants / d_i as outermost universals
    BuildStats stats;
    nlohmann::json meta;    // constants, diagonal, gadget blocks, d ids
    Digraph glued;          // G' (the lambda-factor reduct)
    std::vector<LabeledGraph> factors;
};

ReductionOutput build_reduction(const ReductionConfig& cfg);

ReductionConfig reduction_config_from_json(const nlohmann::json& j);

} // namespace qct

#endif
