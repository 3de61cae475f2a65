#ifndef QCT_ENGINE_HPP
#define QCT_ENGINE_HPP

#include <cstdint>
#include <string>

#include "qct/mapping.hpp"
#include "qct/qcsp.hpp"
#include "qct/tournament.hpp"

namespace qct {

// Budget exhaustion is an explicit outcome, never a silent false.
enum class Answer { True, False, Budget };

const char* to_string(Answer a);

struct GameOptions {
    std::uint64_t node_budget; // defaults to QCT_NODE_BUDGET or 10^8
    GameOptions();
};

// Exact game evaluation: recursive over the prefix, universal variables
// branch over their whole (restricted) domain, existential ones pick a value;
// atoms are checked as soon as both endpoints are assigned. Equality atoms
// are evaluated natively, so this doubles as the oracle for
// eliminate_equality.
Answer solve_game(const QcspSentence& s, const Digraph& t, const GameOptions& opt = {});

struct Classification {
    enum Verdict { NL, NPHard } verdict;
    int initial_size;
    int final_size;

    nlohmann::json to_json() const;
};

// The dichotomy rule: NL iff both the initial and the final strongly
// connected component are singletons.
Classification classify(const Tournament& t);

// The explicit surjection power(TT_2, m) -> T for a template with trivial
// initial and final components on m+2 >= 4 vertices: the all-zero tuple goes
// to the source, the weight-one tuple with 1 in position i goes to the i-th
// middle vertex (chain order, ties by id), everything else to the sink.
// The result is verified to be a surjective homomorphism before returning.
Mapping sur_hom_tt2_power(const Tournament& t);

// The companion surjection T -> TT_2: source to 0, everything else to 1.
Mapping sur_hom_to_tt2(const Tournament& t);

// Implication system over boolean variables: literal nodes (v=0), (v=1) with
// edges closed under contraposition. Realizes sentences over TT_2, where an
// edge atom E(x,y) is exactly the implication x=1 => y=1.
struct ImplicationSystem {
    int nvars = 0;
    std::vector<Quant> quant;        // per variable, in prefix order
    std::vector<std::vector<int>> succ; // literal graph; node 2v+b is "v = b"

    static int node(int var, int value) { return 2 * var + value; }
    void add_implication(int from_var, int from_val, int to_var, int to_val);
};

// Requires an equality-free sentence with no proper domain restrictions.
ImplicationSystem tt2_implication_form(const QcspSentence& s);

// Decides the quantified implication system in polynomial time via the
// literal graph and its strongly connected components.
bool solve_q2sat(const ImplicationSystem& sys);

struct SolveResult {
    Answer answer;
    std::string engine; // "game" or "q2sat"

    nlohmann::json to_json() const;
};

enum class EngineChoice { Auto, Game, Q2Sat };

// Auto mode routes NL templates through TT_2 (same sentence, q2sat engine)
// and falls back to the budgeted game everywhere else. Explicitly requesting
// q2sat on a template it does not cover throws EngineRefusal.
SolveResult solve(const QcspSentence& s, const Tournament& t, EngineChoice engine = EngineChoice::Auto,
                  const GameOptions& opt = {});

} // namespace qct

#endif
