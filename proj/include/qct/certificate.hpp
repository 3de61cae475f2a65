#ifndef QCT_CERTIFICATE_HPP
#define QCT_CERTIFICATE_HPP

#include <optional>
#include <string>
#include <vector>

#include "qct/mapping.hpp"
#include "qct/morphisms.hpp"
#include "qct/tournament.hpp"

namespace qct {

// Machine-checkable record of why a template is hard: the discovered core
// chain, the spill and retraction facts about the copies of its top level,
// and the route those facts select. Every recorded fact re-verifies against
// the morphism and spill searches.
struct HardnessCertificate {
    std::string route; // "direct" | "BaseI" | "BaseII" | "GeneralI" | "GeneralII"
    bool plus = false; // facts use the pendant gadget variant throughout
    bool dual = false; // facts live in the edge-reversed template

    std::vector<int> component;            // carrier of the argument (work-graph ids)
    std::vector<std::vector<int>> chain;   // H_0 c= ... c= H_k, component-local ids
    std::vector<std::vector<int>> cycles;  // Hamilton cycles per chain level

    // Retraction of the component onto chain.back() (component-local);
    // present on every route except "direct".
    std::optional<Mapping> core_retraction;

    // For the I-routes: one entry per distinct copy (by image cycle) of the
    // top chain level inside the component.
    struct CopyFact {
        std::vector<int> cycle; // image Hamilton cycle, component-local ids
        bool spill_full = false;
        bool retracts = false;
    };
    std::vector<CopyFact> survey;

    // For the II-routes, facts about the chosen copy chain.back().
    bool top_spill_full = false;
    bool top_pair_endo_trivial = false;

    nlohmann::json to_json() const;
};

// Executes the iterative hardness procedure on an NP-hard template.
// Throws ValidationError when the template classifies as NL and
// InternalCheckFailure when a step the theory guarantees fails to hold.
HardnessCertificate find_hardness_certificate(const Tournament& t, const SearchLimits& limits = {});

// Recomputes every recorded fact independently; returns the first mismatch
// as an error message, or nothing when the certificate is sound.
std::optional<std::string> verify_certificate(const HardnessCertificate& cert, const Tournament& t,
                                              const SearchLimits& limits = {});

} // namespace qct

#endif
