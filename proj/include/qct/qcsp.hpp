#ifndef QCT_QCSP_HPP
#define QCT_QCSP_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace qct {

enum class Quant { Forall, Exists, Free };

// Prenex sentence: quantifier prefix, conjunction of edge/equality atoms and
// optional per-variable domain restrictions. Free variables only occur in
// intermediate query objects; sentences that are parsed, serialized or solved
// must be closed.
struct QcspSentence {
    struct Variable {
        Quant quant;
        std::string name;
    };
    struct Atom {
        enum Kind { Edge, Eq } kind;
        int a; // prefix indices
        int b;
        bool operator==(const Atom&) const = default;
    };

    std::vector<Variable> prefix;
    std::vector<Atom> atoms;
    // domains[i]: sorted allowed template vertices for variable i, or absent.
    std::vector<std::optional<std::vector<int>>> domains;

    int add_variable(Quant q, std::string name);
    int var_index(std::string_view name) const; // -1 when absent
    bool closed() const;
    bool has_eq_atoms() const;
    bool has_domains() const;

    nlohmann::json to_json() const;
    static QcspSentence from_json(const nlohmann::json& j);
};

// Grammar: prefix tokens "A <name>" / "E <name>", then ":", then atoms
// "edge(a,b)", "eq(a,b)", "in(a,{v0,v2})" separated by whitespace.
// '#' starts a comment that runs to the end of the line.
QcspSentence parse_sentence(std::string_view text);
std::string serialize(const QcspSentence& s);

struct ConstantFalse {};

// Removes equality atoms: x=x is dropped; x=y with the innermost of the two
// universal makes the sentence constant false; otherwise the innermost
// (existential) variable is substituted away.
std::variant<QcspSentence, ConstantFalse> eliminate_equality(QcspSentence s);

} // namespace qct

#endif
