#include "qct/engine.hpp"

#include <algorithm>
#include <cstdlib>

#include "qct/errors.hpp"

namespace qct {

const char* to_string(Answer a) {
    switch (a) {
        case Answer::True: return "true";
        case Answer::False: return "false";
        default: return "budget";
    }
}

GameOptions::GameOptions() : node_budget(100'000'000) {
    if (const char* env = std::getenv("QCT_NODE_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) node_budget = v;
    }
}

namespace {

struct GameSolver {
    const QcspSentence& s;
    const Digraph& t;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    std::vector<int> value;
    // Atoms indexed by the later of their two variables, checked on assignment.
    std::vector<std::vector<QcspSentence::Atom>> pending;

    GameSolver(const QcspSentence& s, const Digraph& t, std::uint64_t budget)
        : s(s), t(t), budget(budget), value(s.prefix.size(), -1),
          pending(s.prefix.size() + 1) {
        for (const auto& atom : s.atoms)
            pending[static_cast<std::size_t>(std::max(atom.a, atom.b))].push_back(atom);
    }

    bool atom_holds(const QcspSentence::Atom& atom) const {
        int va = value[static_cast<std::size_t>(atom.a)];
        int vb = value[static_cast<std::size_t>(atom.b)];
        return atom.kind == QcspSentence::Atom::Edge ? t.edge(va, vb) : va == vb;
    }

    Answer evaluate(std::size_t idx) {
        if (idx == s.prefix.size()) return Answer::True;
        bool universal = s.prefix[idx].quant == Quant::Forall;
        const auto& domain = s.domains[idx];
        Answer result = universal ? Answer::True : Answer::False;

        auto try_value = [&](int v) -> Answer {
            if (++nodes > budget) return Answer::Budget;
            value[idx] = v;
            for (const auto& atom : pending[idx])
                if (!atom_holds(atom)) {
                    value[idx] = -1;
                    return Answer::False;
                }
            Answer sub = evaluate(idx + 1);
            value[idx] = -1;
            return sub;
        };

        auto consider = [&](int v) -> bool {
            Answer sub = try_value(v);
            if (sub == Answer::Budget) {
                result = Answer::Budget;
                return false;
            }
            if (universal && sub == Answer::False) {
                result = Answer::False;
                return false;
            }
            if (!universal && sub == Answer::True) {
                result = Answer::True;
                return false;
            }
            return true;
        };

        if (domain) {
            for (int v : *domain)
                if (!consider(v)) break;
        } else {
            for (int v = 0; v < t.size(); ++v)
                if (!consider(v)) break;
        }
        return result;
    }
};

} // namespace

Answer solve_game(const QcspSentence& s, const Digraph& t, const GameOptions& opt) {
    if (!s.closed()) throw ValidationError("cannot solve a sentence with free variables");
    if (t.size() == 0) throw ValidationError("template must have at least one vertex");
    for (const auto& dom : s.domains)
        if (dom)
            for (int v : *dom)
                if (v < 0 || v >= t.size())
                    throw ValidationError("domain restriction names vertex " + std::to_string(v) +
                                          " outside the template");
    GameSolver solver(s, t, opt.node_budget);
    return solver.evaluate(0);
}

nlohmann::json Classification::to_json() const {
    return {{"verdict", verdict == NL ? "NL" : "NPHard"},
            {"initial_size", initial_size},
            {"final_size", final_size}};
}

Classification classify(const Tournament& t) {
    SccChain chain = scc_chain(t);
    Classification c;
    c.initial_size = chain.initial_size();
    c.final_size = chain.final_size();
    c.verdict = (c.initial_size == 1 && c.final_size == 1) ? Classification::NL
                                                           : Classification::NPHard;
    return c;
}

Mapping sur_hom_tt2_power(const Tournament& t) {
    SccChain chain = scc_chain(t);
    if (chain.initial_size() != 1 || chain.final_size() != 1)
        throw ValidationError("template must have trivial initial and final components");
    int m = t.size() - 2;
    if (m < 2)
        throw ValidationError("the power surjection needs at least 4 vertices; "
                              "use the transitive route for smaller templates");

    int source = chain.components.front().front();
    int sink = chain.components.back().front();
    std::vector<int> middle;
    for (std::size_t i = 1; i + 1 < chain.components.size(); ++i)
        for (int v : chain.components[i]) middle.push_back(v);

    // Tuple ids use the leftmost-significant encoding of power(), so the
    // weight-one tuple with 1 in position i (0-based) is 2^(m-1-i).
    std::vector<int> table(static_cast<std::size_t>(1) << m, sink);
    table[0] = source;
    for (int i = 0; i < m; ++i)
        table[static_cast<std::size_t>(1) << (m - 1 - i)] = middle[static_cast<std::size_t>(i)];
    Mapping f(static_cast<int>(table.size()), t.size(), std::move(table));

    Digraph tt2_power = power(transitive_tournament(2).graph(), m);
    if (!f.is_homomorphism(tt2_power, t.graph()) || !f.is_surjective())
        throw InternalCheckFailure("constructed power surjection failed verification");
    return f;
}

Mapping sur_hom_to_tt2(const Tournament& t) {
    SccChain chain = scc_chain(t);
    if (chain.initial_size() != 1)
        throw ValidationError("template must have a trivial initial component");
    if (t.size() < 2) throw ValidationError("template must have at least two vertices");
    int source = chain.components.front().front();
    std::vector<int> table(static_cast<std::size_t>(t.size()), 1);
    table[static_cast<std::size_t>(source)] = 0;
    Mapping f(t.size(), 2, std::move(table));
    if (!f.is_homomorphism(t.graph(), transitive_tournament(2).graph()) || !f.is_surjective())
        throw InternalCheckFailure("companion surjection failed verification");
    return f;
}

void ImplicationSystem::add_implication(int from_var, int from_val, int to_var, int to_val) {
    succ[static_cast<std::size_t>(node(from_var, from_val))].push_back(node(to_var, to_val));
    // Contrapositive keeps the edge set closed.
    succ[static_cast<std::size_t>(node(to_var, 1 - to_val))].push_back(node(from_var, 1 - from_val));
}

ImplicationSystem tt2_implication_form(const QcspSentence& s) {
    if (!s.closed()) throw ValidationError("sentence must be closed");
    ImplicationSystem sys;
    sys.nvars = static_cast<int>(s.prefix.size());
    sys.quant.reserve(s.prefix.size());
    for (const auto& v : s.prefix) sys.quant.push_back(v.quant);
    sys.succ.assign(2 * s.prefix.size(), {});
    for (std::size_t i = 0; i < s.domains.size(); ++i)
        if (s.domains[i] && *s.domains[i] != std::vector<int>{0, 1})
            throw EngineRefusal("implication form only covers full {0,1} domains");
    for (const auto& atom : s.atoms) {
        if (atom.kind != QcspSentence::Atom::Edge)
            throw EngineRefusal("implication form needs equality-free sentences");
        if (atom.a == atom.b) continue; // E(x,x) holds on every reflexive template
        sys.add_implication(atom.a, 1, atom.b, 1);
    }
    return sys;
}

namespace {

// Tarjan over the literal graph.
struct LiteralScc {
    const std::vector<std::vector<int>>& succ;
    std::vector<int> index, low, comp;
    std::vector<bool> on_stack;
    std::vector<int> stack;
    int next_index = 0, comp_count = 0;

    explicit LiteralScc(const std::vector<std::vector<int>>& succ)
        : succ(succ), index(succ.size(), -1), low(succ.size(), 0), comp(succ.size(), -1),
          on_stack(succ.size(), false) {
        for (std::size_t v = 0; v < succ.size(); ++v)
            if (index[v] < 0) visit(static_cast<int>(v));
    }

    void visit(int v) {
        index[v] = low[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = true;
        for (int w : succ[static_cast<std::size_t>(v)]) {
            if (index[w] < 0) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            int w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                comp[w] = comp_count;
            } while (w != v);
            ++comp_count;
        }
    }
};

} // namespace

bool solve_q2sat(const ImplicationSystem& sys) {
    int n = sys.nvars;
    if (n == 0) return true;

    // False iff (1) a literal of one universal variable reaches a literal of
    // a different universal variable, or (2) some strongly connected
    // component ties a universal variable to an existential variable
    // quantified outside it.
    LiteralScc scc(sys.succ);

    for (int c = 0; c < scc.comp_count; ++c) {
        int max_universal_pos = -1;
        int min_existential_pos = n;
        for (int v = 0; v < n; ++v) {
            bool in_comp = scc.comp[static_cast<std::size_t>(ImplicationSystem::node(v, 0))] == c ||
                           scc.comp[static_cast<std::size_t>(ImplicationSystem::node(v, 1))] == c;
            if (!in_comp) continue;
            if (sys.quant[static_cast<std::size_t>(v)] == Quant::Forall)
                max_universal_pos = std::max(max_universal_pos, v);
            else
                min_existential_pos = std::min(min_existential_pos, v);
        }
        if (max_universal_pos >= 0 && min_existential_pos < max_universal_pos) return false;
    }

    // Reachability between literals of distinct universal variables.
    std::vector<int> universal_of(sys.succ.size(), -1);
    for (int v = 0; v < n; ++v)
        if (sys.quant[static_cast<std::size_t>(v)] == Quant::Forall) {
            universal_of[static_cast<std::size_t>(ImplicationSystem::node(v, 0))] = v;
            universal_of[static_cast<std::size_t>(ImplicationSystem::node(v, 1))] = v;
        }
    for (int v = 0; v < n; ++v) {
        if (sys.quant[static_cast<std::size_t>(v)] != Quant::Forall) continue;
        // DFS from both literals of v.
        std::vector<bool> seen(sys.succ.size(), false);
        std::vector<int> todo = {ImplicationSystem::node(v, 0), ImplicationSystem::node(v, 1)};
        for (int start : todo) seen[static_cast<std::size_t>(start)] = true;
        while (!todo.empty()) {
            int u = todo.back();
            todo.pop_back();
            int owner = universal_of[static_cast<std::size_t>(u)];
            if (owner >= 0 && owner != v) return false;
            for (int w : sys.succ[static_cast<std::size_t>(u)])
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = true;
                    todo.push_back(w);
                }
        }
    }
    return true;
}

nlohmann::json SolveResult::to_json() const {
    nlohmann::json j;
    if (answer == Answer::Budget)
        j["answer"] = "budget";
    else
        j["answer"] = answer == Answer::True;
    j["engine"] = engine;
    return j;
}

namespace {

bool q2sat_applicable(const QcspSentence& s, const Tournament& t) {
    if (classify(t).verdict != Classification::NL) return false;
    // The TT_2 equivalence needs at least two vertices and a sentence whose
    // meaning does not mention template vertices directly.
    if (t.size() < 2) return false;
    if (s.has_domains()) return false;
    return true;
}

Answer run_q2sat(const QcspSentence& s) {
    auto eliminated = eliminate_equality(s);
    if (std::holds_alternative<ConstantFalse>(eliminated)) return Answer::False;
    return solve_q2sat(tt2_implication_form(std::get<QcspSentence>(eliminated)))
               ? Answer::True
               : Answer::False;
}

} // namespace

SolveResult solve(const QcspSentence& s, const Tournament& t, EngineChoice engine,
                  const GameOptions& opt) {
    switch (engine) {
        case EngineChoice::Game:
            return {solve_game(s, t.graph(), opt), "game"};
        case EngineChoice::Q2Sat:
            if (!q2sat_applicable(s, t))
                throw EngineRefusal(
                    "q2sat engine needs an NL template with at least two vertices and no "
                    "domain restrictions");
            return {run_q2sat(s), "q2sat"};
        case EngineChoice::Auto:
        default:
            if (q2sat_applicable(s, t)) return {run_q2sat(s), "q2sat"};
            return {solve_game(s, t.graph(), opt), "game"};
    }
}

} // namespace qct
