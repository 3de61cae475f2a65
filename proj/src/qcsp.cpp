#include "qct/qcsp.hpp"

#include <algorithm>
#include <cctype>

#include "qct/errors.hpp"

namespace qct {

int QcspSentence::add_variable(Quant q, std::string name) {
    if (var_index(name) >= 0) throw ValidationError("duplicate variable '" + name + "'");
    prefix.push_back({q, std::move(name)});
    domains.emplace_back();
    return static_cast<int>(prefix.size()) - 1;
}

int QcspSentence::var_index(std::string_view name) const {
    for (std::size_t i = 0; i < prefix.size(); ++i)
        if (prefix[i].name == name) return static_cast<int>(i);
    return -1;
}

bool QcspSentence::closed() const {
    return std::none_of(prefix.begin(), prefix.end(),
                        [](const Variable& v) { return v.quant == Quant::Free; });
}

bool QcspSentence::has_eq_atoms() const {
    return std::any_of(atoms.begin(), atoms.end(),
                       [](const Atom& a) { return a.kind == Atom::Eq; });
}

bool QcspSentence::has_domains() const {
    return std::any_of(domains.begin(), domains.end(),
                       [](const auto& d) { return d.has_value(); });
}

nlohmann::json QcspSentence::to_json() const {
    nlohmann::json j;
    auto& jp = j["prefix"] = nlohmann::json::array();
    for (const auto& v : prefix) {
        const char* q = v.quant == Quant::Forall ? "A" : v.quant == Quant::Exists ? "E" : "F";
        jp.push_back({q, v.name});
    }
    auto& ja = j["atoms"] = nlohmann::json::array();
    for (const auto& a : atoms)
        ja.push_back({a.kind == Atom::Edge ? "edge" : "eq", prefix[a.a].name, prefix[a.b].name});
    auto& jd = j["domains"] = nlohmann::json::object();
    for (std::size_t i = 0; i < domains.size(); ++i)
        if (domains[i]) jd[prefix[i].name] = *domains[i];
    return j;
}

QcspSentence QcspSentence::from_json(const nlohmann::json& j) {
    QcspSentence s;
    for (const auto& v : j.at("prefix")) {
        std::string q = v.at(0).get<std::string>();
        Quant quant = q == "A" ? Quant::Forall : q == "E" ? Quant::Exists : Quant::Free;
        s.add_variable(quant, v.at(1).get<std::string>());
    }
    for (const auto& a : j.at("atoms")) {
        int ia = s.var_index(a.at(1).get<std::string>());
        int ib = s.var_index(a.at(2).get<std::string>());
        if (ia < 0 || ib < 0) throw ValidationError("atom references undeclared variable");
        s.atoms.push_back({a.at(0).get<std::string>() == "eq" ? Atom::Eq : Atom::Edge, ia, ib});
    }
    if (j.contains("domains"))
        for (const auto& [name, dom] : j.at("domains").items()) {
            int idx = s.var_index(name);
            if (idx < 0) throw ValidationError("domain references undeclared variable");
            auto values = dom.get<std::vector<int>>();
            std::sort(values.begin(), values.end());
            s.domains[static_cast<std::size_t>(idx)] = std::move(values);
        }
    return s;
}

namespace {

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;
    int line = 1;
    int col = 1;

    void advance() {
        if (pos < text.size()) {
            if (text[pos] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++pos;
        }
    }

    void skip_space_and_comments() {
        while (pos < text.size()) {
            char c = text[pos];
            if (c == '#') {
                while (pos < text.size() && text[pos] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    bool done() {
        skip_space_and_comments();
        return pos >= text.size();
    }

    char peek() const { return pos < text.size() ? text[pos] : '\0'; }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line, col); }

    std::string token() {
        skip_space_and_comments();
        std::size_t start = pos;
        while (pos < text.size()) {
            char c = text[pos];
            if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ',' ||
                c == '{' || c == '}' || c == ':' || c == '#')
                break;
            advance();
        }
        return std::string(text.substr(start, pos - start));
    }

    void expect(char c) {
        skip_space_and_comments();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        advance();
    }
};

int resolve_var(const QcspSentence& s, const std::string& name, const Cursor& cur) {
    int idx = s.var_index(name);
    if (idx < 0) throw ParseError("undeclared variable '" + name + "'", cur.line, cur.col);
    return idx;
}

} // namespace

QcspSentence parse_sentence(std::string_view text) {
    Cursor cur{text};
    QcspSentence s;

    // Prefix up to ':'.
    while (true) {
        cur.skip_space_and_comments();
        if (cur.peek() == ':') {
            cur.advance();
            break;
        }
        std::string q = cur.token();
        if (q.empty()) cur.fail("expected quantifier 'A' or 'E'");
        if (q != "A" && q != "E") cur.fail("unknown quantifier '" + q + "'");
        std::string name = cur.token();
        if (name.empty()) cur.fail("expected variable name");
        if (s.var_index(name) >= 0) cur.fail("duplicate variable '" + name + "'");
        s.add_variable(q == "A" ? Quant::Forall : Quant::Exists, std::move(name));
    }

    // Atoms.
    while (!cur.done()) {
        std::string head = cur.token();
        if (head == "edge" || head == "eq") {
            cur.expect('(');
            std::string a = cur.token();
            cur.expect(',');
            std::string b = cur.token();
            cur.expect(')');
            s.atoms.push_back({head == "edge" ? QcspSentence::Atom::Edge : QcspSentence::Atom::Eq,
                               resolve_var(s, a, cur), resolve_var(s, b, cur)});
        } else if (head == "in") {
            cur.expect('(');
            std::string a = cur.token();
            int idx = resolve_var(s, a, cur);
            cur.expect(',');
            cur.expect('{');
            std::vector<int> values;
            while (true) {
                cur.skip_space_and_comments();
                if (cur.peek() == '}') {
                    cur.advance();
                    break;
                }
                std::string v = cur.token();
                if (v.size() < 2 || v[0] != 'v') cur.fail("expected vertex token 'v<N>'");
                try {
                    values.push_back(std::stoi(v.substr(1)));
                } catch (const std::exception&) {
                    cur.fail("bad vertex token '" + v + "'");
                }
                cur.skip_space_and_comments();
                if (cur.peek() == ',') cur.advance();
            }
            cur.expect(')');
            std::sort(values.begin(), values.end());
            values.erase(std::unique(values.begin(), values.end()), values.end());
            auto& dom = s.domains[static_cast<std::size_t>(idx)];
            if (dom) {
                // Repeated restrictions intersect.
                std::vector<int> merged;
                std::set_intersection(dom->begin(), dom->end(), values.begin(), values.end(),
                                      std::back_inserter(merged));
                dom = std::move(merged);
            } else {
                dom = std::move(values);
            }
        } else {
            cur.fail("unknown atom '" + head + "'");
        }
    }
    return s;
}

std::string serialize(const QcspSentence& s) {
    if (!s.closed()) throw ValidationError("cannot serialize a sentence with free variables");
    std::string out;
    for (const auto& v : s.prefix) {
        out += v.quant == Quant::Forall ? "A " : "E ";
        out += v.name;
        out += ' ';
    }
    out += ":";
    for (const auto& a : s.atoms) {
        out += ' ';
        out += a.kind == QcspSentence::Atom::Edge ? "edge(" : "eq(";
        out += s.prefix[static_cast<std::size_t>(a.a)].name;
        out += ',';
        out += s.prefix[static_cast<std::size_t>(a.b)].name;
        out += ')';
    }
    for (std::size_t i = 0; i < s.domains.size(); ++i) {
        if (!s.domains[i]) continue;
        out += " in(";
        out += s.prefix[i].name;
        out += ",{";
        for (std::size_t j = 0; j < s.domains[i]->size(); ++j) {
            if (j) out += ',';
            out += 'v' + std::to_string((*s.domains[i])[j]);
        }
        out += "})";
    }
    return out;
}

namespace {

// Remove variable `idx` from the prefix, remapping atom and domain indices.
QcspSentence drop_variable(const QcspSentence& s, int idx) {
    QcspSentence out;
    for (std::size_t i = 0; i < s.prefix.size(); ++i)
        if (static_cast<int>(i) != idx) {
            out.prefix.push_back(s.prefix[i]);
            out.domains.push_back(s.domains[i]);
        }
    auto remap = [idx](int v) { return v > idx ? v - 1 : v; };
    for (const auto& a : s.atoms) out.atoms.push_back({a.kind, remap(a.a), remap(a.b)});
    return out;
}

} // namespace

std::variant<QcspSentence, ConstantFalse> eliminate_equality(QcspSentence s) {
    while (true) {
        auto it = std::find_if(s.atoms.begin(), s.atoms.end(), [](const QcspSentence::Atom& a) {
            return a.kind == QcspSentence::Atom::Eq;
        });
        if (it == s.atoms.end()) break;
        int a = it->a, b = it->b;
        if (a == b) {
            s.atoms.erase(it);
            continue;
        }
        int inner = std::max(a, b);
        int outer = std::min(a, b);
        if (s.prefix[static_cast<std::size_t>(inner)].quant == Quant::Forall)
            return ConstantFalse{};

        // Substitute the innermost (existential) variable by the outer one.
        s.atoms.erase(it);
        for (auto& atom : s.atoms) {
            if (atom.a == inner) atom.a = outer;
            if (atom.b == inner) atom.b = outer;
        }
        // The eliminated variable's domain restriction transfers. Onto a
        // universal variable that would change its quantification range, so
        // that combination is rejected rather than silently mis-solved.
        if (s.domains[static_cast<std::size_t>(inner)]) {
            if (s.prefix[static_cast<std::size_t>(outer)].quant == Quant::Forall)
                throw ValidationError(
                    "equality between a domain-restricted variable and a universal variable "
                    "is not supported");
            auto& dst = s.domains[static_cast<std::size_t>(outer)];
            const auto& src = *s.domains[static_cast<std::size_t>(inner)];
            if (dst) {
                std::vector<int> merged;
                std::set_intersection(dst->begin(), dst->end(), src.begin(), src.end(),
                                      std::back_inserter(merged));
                dst = std::move(merged);
            } else {
                dst = src;
            }
        }
        s = drop_variable(s, inner);
    }
    return s;
}

} // namespace qct
