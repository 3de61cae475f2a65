#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qct/certificate.hpp"
#include "qct/engine.hpp"
#include "qct/errors.hpp"
#include "qct/gadget.hpp"
#include "qct/morphisms.hpp"
#include "qct/query.hpp"
#include "qct/reduction.hpp"
#include "qct/suites.hpp"

namespace {

// Exit codes: 0 success, 1 check-failure, 2 usage/parse error, 3 engine
// refusal, 4 budget exceeded.
constexpr int kOk = 0;
constexpr int kCheckFailure = 1;
constexpr int kUsage = 2;
constexpr int kRefusal = 3;
constexpr int kBudget = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw qct::ValidationError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw qct::ValidationError("cannot write '" + path + "'");
    out << content;
}

qct::Digraph load_graph(const std::string& path) {
    std::string text = read_file(path);
    // JSON files start with '{'; everything else is the text format.
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == '{') return qct::Digraph::from_json(nlohmann::json::parse(text));
        break;
    }
    return qct::Digraph::from_text(text);
}

void emit(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

std::vector<int> parse_id_list(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoi(item));
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"QCSP toolkit for reflexive tournament templates"};
    app.require_subcommand(1);

    std::string template_path, sentence_path, config_path, output_prefix;
    std::string engine_name = "auto", suite_name, cycle_csv, core_csv, gadget_what = "cyl";
    bool plus = false;
    int gadget_m = 3, enum_n = 3, max_n = 5;
    std::uint64_t seed = 0x51e5u;
    std::uint64_t budget = qct::GameOptions().node_budget;

    auto* classify_cmd = app.add_subcommand("classify", "classify a template file");
    classify_cmd->add_option("template", template_path)->required();

    auto* solve_cmd = app.add_subcommand("solve", "decide a sentence on a template");
    solve_cmd->add_option("template", template_path)->required();
    solve_cmd->add_option("sentence", sentence_path)->required();
    solve_cmd->add_option("--engine", engine_name)->check(CLI::IsMember({"auto", "game", "q2sat"}));
    solve_cmd->add_option("--budget", budget, "game node budget");

    auto* spill_cmd = app.add_subcommand("spill", "spill set of a core inside a template");
    spill_cmd->add_option("template", template_path)->required();
    spill_cmd->add_option("--cycle", cycle_csv, "Hamilton cycle of the core, e.g. 0,1,2")->required();
    spill_cmd->add_option("--core", core_csv, "core vertex set (defaults to the cycle)");
    spill_cmd->add_flag("--plus", plus, "use the pendant gadget variant");

    auto* gadget_cmd = app.add_subcommand("gadget", "emit a gadget graph");
    gadget_cmd->add_option("what", gadget_what)->check(CLI::IsMember({"cyl"}));
    gadget_cmd->add_option("-m", gadget_m)->required();
    gadget_cmd->add_flag("--plus", plus);
    gadget_cmd->add_option("-o,--output", output_prefix, "write <prefix>.txt and <prefix>.meta.json");

    auto* reduce_cmd = app.add_subcommand("reduce", "build a reduction instance from a config");
    reduce_cmd->add_option("config", config_path)->required();
    reduce_cmd->add_option("-o,--output", output_prefix,
                           "write <prefix>.instance.txt, .sentence.txt, .meta.json, .stats.json");

    auto* certify_cmd = app.add_subcommand("certify", "search a hardness certificate");
    certify_cmd->add_option("template", template_path)->required();

    auto* enum_cmd = app.add_subcommand("enum", "enumerate tournaments up to isomorphism");
    enum_cmd->add_option("-n", enum_n)->required();

    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    verify_cmd->add_option("--suite", suite_name)->required();
    verify_cmd->add_option("--max-n", max_n);
    verify_cmd->add_option("--seed", seed);
    verify_cmd->add_option("--budget", budget);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (classify_cmd->parsed()) {
            qct::Tournament t = qct::Tournament::check(load_graph(template_path));
            qct::Classification c = qct::classify(t);
            emit(c.to_json());
            std::cerr << "verdict: " << (c.verdict == qct::Classification::NL ? "NL" : "NPHard")
                      << " (initial " << c.initial_size << ", final " << c.final_size << ")\n";
            return kOk;
        }

        if (solve_cmd->parsed()) {
            qct::Tournament t = qct::Tournament::check(load_graph(template_path));
            qct::QcspSentence s = qct::parse_sentence(read_file(sentence_path));
            qct::EngineChoice choice = engine_name == "game"    ? qct::EngineChoice::Game
                                       : engine_name == "q2sat" ? qct::EngineChoice::Q2Sat
                                                                : qct::EngineChoice::Auto;
            qct::GameOptions opt;
            opt.node_budget = budget;
            qct::SolveResult result = qct::solve(s, t, choice, opt);
            emit(result.to_json());
            std::cerr << "answer: " << qct::to_string(result.answer) << " via " << result.engine
                      << "\n";
            return result.answer == qct::Answer::Budget ? kBudget : kOk;
        }

        if (spill_cmd->parsed()) {
            qct::Tournament t = qct::Tournament::check(load_graph(template_path));
            std::vector<int> cycle = parse_id_list(cycle_csv);
            if (!core_csv.empty()) {
                std::vector<int> core = parse_id_list(core_csv);
                std::sort(core.begin(), core.end());
                std::vector<int> sorted_cycle(cycle);
                std::sort(sorted_cycle.begin(), sorted_cycle.end());
                if (core != sorted_cycle)
                    throw qct::ValidationError("--core and --cycle name different vertex sets");
            }
            qct::SpillReport report = qct::spill(t, cycle, plus);
            emit(report.to_json());
            std::cerr << "spill " << (report.full ? "is full" : "is not full") << " ("
                      << report.union_set.size() << "/" << t.size() << " vertices)\n";
            return kOk;
        }

        if (gadget_cmd->parsed()) {
            qct::Gadget g = qct::build_cyl(gadget_m, plus);
            nlohmann::json meta = {{"m", g.m},
                                   {"plus", plus},
                                   {"bottom", g.bottom_cycle},
                                   {"top", g.top_cycle},
                                   {"vertices", g.graph.size()},
                                   {"edges", g.graph.edge_count()}};
            if (g.pendant) meta["pendant"] = *g.pendant;
            if (!output_prefix.empty()) {
                write_file(output_prefix + ".txt", g.graph.to_text());
                write_file(output_prefix + ".meta.json", meta.dump(2) + "\n");
            }
            emit(meta);
            std::cerr << "gadget with " << g.graph.size() << " vertices, "
                      << g.graph.edge_count() << " edges\n";
            return kOk;
        }

        if (reduce_cmd->parsed()) {
            nlohmann::json config = nlohmann::json::parse(read_file(config_path));
            qct::ReductionOutput out = qct::build_reduction(qct::reduction_config_from_json(config));
            if (!output_prefix.empty()) {
                write_file(output_prefix + ".instance.txt", out.instance.to_text());
                write_file(output_prefix + ".sentence.txt", qct::serialize(out.sentence) + "\n");
                write_file(output_prefix + ".meta.json", out.meta.dump(2) + "\n");
                write_file(output_prefix + ".stats.json", out.stats.to_json().dump(2) + "\n");
            }
            emit(out.stats.to_json());
            std::cerr << "built " << out.stats.kind << " instance: " << out.stats.instance_vertices
                      << " vertices, " << out.stats.atoms << " atoms\n";
            return kOk;
        }

        if (certify_cmd->parsed()) {
            qct::Tournament t = qct::Tournament::check(load_graph(template_path));
            qct::HardnessCertificate cert = qct::find_hardness_certificate(t);
            if (auto err = qct::verify_certificate(cert, t)) {
                emit(cert.to_json());
                std::cerr << "certificate failed re-verification: " << *err << "\n";
                return kCheckFailure;
            }
            emit(cert.to_json());
            std::cerr << "route " << cert.route << (cert.plus ? " (pendant variant)" : "")
                      << (cert.dual ? " on the reversed template" : "") << "\n";
            return kOk;
        }

        if (enum_cmd->parsed()) {
            nlohmann::json out = nlohmann::json::array();
            for (const qct::Tournament& t : qct::enumerate_tournaments(enum_n))
                out.push_back(t.graph().to_json());
            emit(out);
            std::cerr << out.size() << " isomorphism classes\n";
            return kOk;
        }

        if (verify_cmd->parsed()) {
            qct::SuiteOptions opt;
            opt.max_n = max_n;
            opt.seed = seed;
            opt.node_budget = budget;
            qct::SuiteReport report = qct::run_suite(suite_name, opt);
            emit(report.to_json());
            for (const auto& check : report.checks)
                std::cerr << (check.passed() ? "  ok  " : check.status == "skipped-budget"
                                                              ? " skip "
                                                              : " FAIL ")
                          << check.name
                          << (check.details.empty() ? "" : ": " + check.details) << "\n";
            std::cerr << "suite " << report.suite << (report.all_passed() ? " passed" : " FAILED")
                      << " in " << report.elapsed_ms << " ms\n";
            return report.all_passed() ? kOk : kCheckFailure;
        }
    } catch (const qct::EngineRefusal& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return kRefusal;
    } catch (const qct::BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kBudget;
    } catch (const qct::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const qct::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCheckFailure;
    }
    return kUsage;
}
