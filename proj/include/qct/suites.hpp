#ifndef QCT_SUITES_HPP
#define QCT_SUITES_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qct/qcsp.hpp"
#include "qct/reduction.hpp"
#include "qct/tournament.hpp"

namespace qct {

// Deterministic splitmix64 stream; the standard distributions are
// implementation-defined, so suites roll their own sampling.
std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t rng_below(std::uint64_t& state, std::uint64_t n);
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

struct SentenceGenOptions {
    int max_vars = 7;
    int max_atoms = 10;
    int eq_percent = 0; // chance per atom of being an equality atom
};

// Uniform quantifier per variable, atoms over ordered variable pairs with
// replacement.
QcspSentence random_sentence(std::uint64_t& state, const SentenceGenOptions& opt);

struct CheckResult {
    std::string name;
    std::string status; // "pass" | "fail" | "skipped-budget"
    std::string details;
    nlohmann::json reproducer; // minimal inputs for a failing check

    bool passed() const { return status == "pass"; }
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    long elapsed_ms = 0;
    std::vector<CheckResult> checks;
    std::map<std::string, long> counters;

    bool all_passed() const;
    nlohmann::json to_json() const;
};

struct SuiteOptions {
    int max_n = 5;
    std::uint64_t seed = 0x51e5u;
    std::uint64_t node_budget = 200'000'000;
};

// Suites: "lemmas", "spill", "reduction", "solver".
std::vector<std::string> suite_names();
SuiteReport run_suite(const std::string& name, const SuiteOptions& opt = {});

// Fixed demonstration configs for the six reduction kinds, used by the
// reduction suite and the golden-file checks.
std::vector<ReductionConfig> reduction_demo_configs();

// The strongly connected tournament on four vertices (unique up to
// isomorphism): the 3-cycle 0 -> 1 -> 2 -> 0 with 3 -> 0, 3 -> 1, 2 -> 3.
Tournament strong_four();

} // namespace qct

#endif
