#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "groupoid_lab/automaton.hpp"
#include "groupoid_lab/io.hpp"
#include "groupoid_lab/moments.hpp"
#include "groupoid_lab/ncpartition.hpp"
#include "groupoid_lab/operators.hpp"

using namespace groupoid_lab;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kIo = 2, kParse = 3, kValidation = 4, kBudget = 5, kMismatch = 6 };

struct RunConfig {
    std::string graph;
    std::size_t n = 2;
    std::string mode = "reduction";
    std::string formula = "direct";
    std::vector<Label> indices;
    std::vector<Label> families;
    std::size_t max_n = 4;
    std::optional<std::size_t> max_len;
    std::size_t depth = 4;
    std::string root;
    Label max_label = 1;
    std::size_t length = 2;
    std::string labeling = "auto";
    bool json_out = false;
    bool csv_out = false;
    bool verify = false;
    bool words = false;
    std::uint64_t max_words = kDefaultWordBudget;
    std::size_t max_basis = kDefaultBasisBudget;
};

struct Report {
    std::string command;
    json inputs = json::object();
    json result;
    json diagnostics = json::array();
    bool truncated = false;
    int status = kOk;

    // plain-text rendering; a diagonal result becomes "vertex:coefficient" lines
    std::vector<std::string> text;
    std::optional<DiagonalElement> table;
    std::string dot;

    void note(const std::string& kind, const std::string& message, json detail = nullptr) {
        json d{{"kind", kind}, {"message", message}};
        if (!detail.is_null()) d["detail"] = std::move(detail);
        diagnostics.push_back(std::move(d));
    }
};

class Failure : public std::runtime_error {
public:
    Failure(int code, const std::string& message) : std::runtime_error(message), code(code) {}
    int code;
};

std::string render_diagonal(const DiagonalElement& d, const DirectedGraph& g) {
    std::string out;
    for (std::size_t v = 0; v < d.size(); ++v) {
        if (v) out += ' ';
        out += g.vertex_name(v) + ":" + to_string(d[v]);
    }
    return out;
}

std::string render_labels(std::span<const Label> labels) {
    std::string out;
    for (std::size_t i = 0; i < labels.size(); ++i) out += (i ? "," : "") + std::to_string(labels[i]);
    return out;
}

struct Session {
    RunConfig cfg;
    std::optional<LabeledGraph> lg;

    const LabeledGraph& graph(Report& report) {
        if (!lg) {
            if (cfg.graph.empty()) throw Failure(kValidation, "--graph is required");
            std::optional<LabelingMode> mode;
            if (cfg.labeling != "auto") {
                mode = parse_labeling_mode(cfg.labeling);
                if (!mode) throw Failure(kValidation, "unknown labeling mode '" + cfg.labeling + "'");
            }
            lg.emplace(load_labeled_graph(read_graph_file(cfg.graph), mode));
        }
        const auto& base = lg->graph().base();
        report.inputs = json{{"graph", cfg.graph},
                             {"vertices", base.vertex_count()},
                             {"edges", base.edge_count()},
                             {"max_label", lg->max_label()},
                             {"labeling", to_string(lg->mode())}};
        return *lg;
    }

    const DirectedGraph& base() const { return lg->graph().base(); }

    json diag_json(const DiagonalElement& d) const { return diagonal_to_json(d, base()); }

    void diagonal_result(Report& r, const DiagonalElement& d) {
        r.result = diag_json(d);
        r.table = d;
    }

    void moments(Report& r) {
        const auto& g = graph(r);
        r.inputs["n"] = cfg.n;
        WordSetMode mode;
        if (cfg.mode == "reduction") {
            mode = WordSetMode::Reduction;
        } else if (cfg.mode == "balance") {
            mode = WordSetMode::Balance;
        } else {
            throw Failure(kValidation, "--mode must be reduction or balance");
        }
        r.inputs["mode"] = to_string(mode);
        auto report = w_m_set(g, cfg.n, mode, cfg.words, cfg.max_words);
        r.truncated = report.truncated;
        diagonal_result(r, report.tallies);
        if (cfg.words) {
            json words = json::array();
            for (const auto& w : report.words) words.push_back(word_to_json(w, g.graph()));
            r.result = json{{"moment", r.result}, {"words", std::move(words)}};
        }
        r.note("word_count", to_string(report.word_count), to_string(report.word_count));

        // the other word-set reading, reported as a diff
        auto other_mode = mode == WordSetMode::Reduction ? WordSetMode::Balance : WordSetMode::Reduction;
        auto other = w_m_set(g, cfg.n, other_mode, false, cfg.max_words);
        r.truncated = r.truncated || other.truncated;
        if (other.tallies != report.tallies) {
            r.note("mode_comparison",
                   std::string(to_string(other_mode)) + " mode gives " + render_diagonal(other.tallies, base()) + " (" +
                       to_string(other.word_count) + " words)",
                   json{{"mode", to_string(other_mode)},
                        {"tallies", diag_json(other.tallies)},
                        {"difference", diag_json(other.tallies - report.tallies)}});
        }

        bool has_loop_edge = false;
        for (EdgeIndex e = 0; e < base().edge_count(); ++e) {
            has_loop_edge = has_loop_edge || g.graph().is_loop_edge(SignedEdge{e, false});
        }
        if (has_loop_edge && mode == WordSetMode::Reduction) {
            auto avoiding = moment_avoiding_loop_edges(g, cfg.n, cfg.max_words);
            r.truncated = r.truncated || avoiding.truncated;
            if (avoiding.value != report.tallies) {
                r.note("loop_edges",
                       "words through loop edges contribute; restricted to loop-free words the tally is " +
                           render_diagonal(avoiding.value, base()),
                       diag_json(avoiding.value));
            }
        }

        if (cfg.verify) {
            auto oracle = oracle_expectation_power(g, cfg.n, cfg.max_len.value_or(cfg.n), cfg.max_basis);
            const auto& reduction = mode == WordSetMode::Reduction ? report.tallies : other.tallies;
            bool match = oracle == reduction;
            r.note("verify", match ? "oracle agrees" : "oracle mismatch: " + render_diagonal(oracle, base()),
                   diag_json(oracle));
            if (!match && !r.truncated) r.status = kMismatch;
        }
    }

    void cumulants(Report& r) {
        const auto& g = graph(r);
        r.inputs["n"] = cfg.n;
        r.inputs["formula"] = cfg.formula;
        if (cfg.formula == "direct") {
            diagonal_result(r, cumulant_direct(g, cfg.n));
            return;
        }
        if (cfg.formula != "wc" && cfg.formula != "both") throw Failure(kValidation, "--formula must be direct, wc or both");
        auto cmp = cumulant_via_wc(g, cfg.n);
        if (cfg.formula == "wc") {
            diagonal_result(r, cmp.via_wc);
        } else {
            r.result = json{{"direct", diag_json(cmp.direct)},
                            {"wc", diag_json(cmp.via_wc)},
                            {"difference", diag_json(cmp.difference)},
                            {"agrees", cmp.agrees}};
            r.text = {"direct     " + render_diagonal(cmp.direct, base()),
                      "wc         " + render_diagonal(cmp.via_wc, base()),
                      "difference " + render_diagonal(cmp.difference, base())};
        }
        r.note("wc_word_count", std::to_string(cmp.word_count) + " single-edge loop words", cmp.word_count);
        if (!cmp.agrees) {
            r.note("formula_comparison", "wc sum differs from direct cumulant by " + render_diagonal(cmp.difference, base()),
                   diag_json(cmp.difference));
        }
    }

    void joint(Report& r) {
        const auto& g = graph(r);
        if (cfg.indices.empty()) throw Failure(kValidation, "--indices is required");
        r.inputs["indices"] = cfg.indices;
        auto m = joint_moment(g, cfg.indices);
        auto k = joint_cumulant(g, cfg.indices);
        r.result = json{{"moment", diag_json(m)}, {"cumulant", diag_json(k)}};
        r.text = {"moment   " + render_diagonal(m, base()), "cumulant " + render_diagonal(k, base())};
    }

    void freeness(Report& r) {
        const auto& g = graph(r);
        if (cfg.families.size() != 2) throw Failure(kValidation, "--families takes two labels, e.g. 1,2");
        r.inputs["families"] = cfg.families;
        r.inputs["max_n"] = cfg.max_n;
        auto rep = check_freeness(g, cfg.families[0], cfg.families[1], cfg.max_n);
        r.result = json{{"free", rep.free_to_order()},
                        {"max_order", rep.max_order},
                        {"tuples_checked", rep.tuples_checked},
                        {"max_abs_coefficient", to_string(rep.max_abs_coefficient)},
                        {"first_nonzero", rep.first_nonzero ? json(*rep.first_nonzero) : json(nullptr)},
                        {"diagram_distinct", rep.diagram_distinct}};
        r.text = {std::string("free to order ") + std::to_string(rep.max_order) + ": " +
                      (rep.free_to_order() ? "yes" : "no"),
                  "mixed tuples checked: " + std::to_string(rep.tuples_checked),
                  "max |coefficient|: " + to_string(rep.max_abs_coefficient)};
        if (rep.first_nonzero) r.text.push_back("first nonzero: " + render_labels(*rep.first_nonzero));
        if (!rep.diagram_distinct) r.note("diagram_distinct", "families share an edge diagram");
    }

    void oracle(Report& r) {
        const auto& g = graph(r);
        std::size_t len = cfg.max_len.value_or(cfg.n);
        r.inputs["n"] = cfg.n;
        r.inputs["max_len"] = len;
        diagonal_result(r, oracle_expectation_power(g, cfg.n, len, cfg.max_basis));
    }

    void fractaloid(Report& r) {
        const auto& g = graph(r);
        r.inputs["depth"] = cfg.depth;
        GraphAutomaton automaton(g);
        auto verdict = automaton.is_fractaloid(cfg.depth);
        json witness = nullptr;
        if (verdict.witness) {
            const auto& w = *verdict.witness;
            witness = json{{"root", base().vertex_name(w.root)},
                           {"path", word_to_json(w.path, g.graph())},
                           {"vertex", base().vertex_name(w.vertex)},
                           {"child_count", w.child_count},
                           {"child_labels", w.child_labels},
                           {"reason", w.reason}};
        }
        r.result = json{{"fractaloid", verdict.fractaloid},
                        {"depth", verdict.depth},
                        {"max_label", verdict.max_label},
                        {"witness", witness}};
        r.text = {std::string("fractaloid: ") + (verdict.fractaloid ? "true" : "false") + " (depth " +
                  std::to_string(verdict.depth) + ")"};
        if (verdict.witness) r.text.push_back("witness: " + verdict.witness->reason);
    }

    void tree(Report& r) {
        const auto& g = graph(r);
        VertexId root = 0;
        if (!cfg.root.empty()) {
            auto found = base().find_vertex(cfg.root);
            if (!found) throw Failure(kValidation, "unknown root vertex '" + cfg.root + "'");
            root = *found;
        }
        r.inputs["root"] = base().vertex_name(root);
        r.inputs["depth"] = cfg.depth;
        GraphAutomaton automaton(g);
        auto t = automaton.build_tree(root, cfg.depth);
        r.dot = to_dot(t, g);
        r.result = json{{"nodes", t.nodes.size()}, {"dot", r.dot}};
    }

    void lattice(Report& r) {
        if (cfg.max_label < 1) throw Failure(kValidation, "--max-label must be at least 1");
        r.inputs = json{{"max_label", cfg.max_label}, {"length", cfg.length}};
        auto count = count_axis_paths(cfg.max_label, cfg.length);
        r.result = to_string(count);
        r.text = {to_string(count)};
    }

    void nc(Report& r) {
        r.inputs = json{{"n", cfg.n}};
        auto parts = enumerate_nc(cfg.n);
        json row = json::array();
        r.text = {"|NC(" + std::to_string(cfg.n) + ")| = " + std::to_string(parts.size())};
        for (const auto& p : parts) {
            auto mu = moebius(p);
            row.push_back(json{{"partition", p.to_string()}, {"moebius", to_string(mu)}});
            r.text.push_back(p.to_string() + " " + to_string(mu));
        }
        r.result = json{{"count", parts.size()}, {"catalan", to_string(catalan(cfg.n))}, {"moebius", std::move(row)}};
    }
};

void emit(const Report& r, const RunConfig& cfg, const DirectedGraph* g) {
    if (cfg.json_out) {
        json out{{"command", r.command},
                 {"inputs", r.inputs},
                 {"result", r.result},
                 {"diagnostics", r.diagnostics},
                 {"truncated", r.truncated}};
        std::cout << out.dump(2) << '\n';
        return;
    }
    if (!r.dot.empty()) {
        std::cout << r.dot;
        return;
    }
    if (cfg.csv_out && r.table && g) {
        std::cout << "vertex,coefficient\n";
        for (std::size_t v = 0; v < r.table->size(); ++v) std::cout << g->vertex_name(v) << ',' << (*r.table)[v] << '\n';
        return;
    }
    if (r.table && g) {
        for (std::size_t v = 0; v < r.table->size(); ++v) std::cout << g->vertex_name(v) << ':' << (*r.table)[v] << '\n';
    }
    for (const auto& line : r.text) std::cout << line << '\n';
    for (const auto& d : r.diagnostics) std::cout << "# " << d["kind"].get<std::string>() << ": " << d["message"].get<std::string>() << '\n';
    if (r.truncated) std::cout << "# truncated: word budget reached, result is partial\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Labeled graph groupoids: moments, cumulants and automata"};
    app.require_subcommand(1);
    Session session;
    auto& cfg = session.cfg;

    auto common = [&](CLI::App* sub, bool needs_graph) {
        if (needs_graph) {
            sub->add_option("--graph", cfg.graph, "graph JSON file")->required();
            sub->add_option("--labeling", cfg.labeling, "auto|per-vertex|multiedge|explicit")->capture_default_str();
        }
        sub->add_flag("--json", cfg.json_out, "machine-readable report");
        sub->add_flag("--csv", cfg.csv_out, "vertex,coefficient table");
    };

    auto* moments = app.add_subcommand("moments", "E(T^n) per vertex");
    common(moments, true);
    moments->add_option("--n", cfg.n)->required();
    moments->add_option("--mode", cfg.mode, "reduction|balance")->capture_default_str();
    moments->add_flag("--verify", cfg.verify, "compare against the matrix oracle");
    moments->add_option("--max-len", cfg.max_len, "oracle truncation length for --verify");
    moments->add_flag("--words", cfg.words, "export the word set");
    moments->add_option("--max-words", cfg.max_words)->capture_default_str();
    moments->add_option("--max-basis", cfg.max_basis)->capture_default_str();

    auto* cumulants = app.add_subcommand("cumulants", "k_n(T, ..., T) per vertex");
    common(cumulants, true);
    cumulants->add_option("--n", cfg.n)->required();
    cumulants->add_option("--formula", cfg.formula, "direct|wc|both")->capture_default_str();

    auto* joint = app.add_subcommand("joint", "joint moment and cumulant of T_i1, ..., T_in");
    common(joint, true);
    joint->add_option("--indices", cfg.indices)->delimiter(',')->required()->allow_extra_args(false);

    auto* freeness = app.add_subcommand("freeness", "mixed cumulants of two label families");
    common(freeness, true);
    freeness->add_option("--families", cfg.families)->delimiter(',')->required()->allow_extra_args(false);
    freeness->add_option("--max-n", cfg.max_n)->capture_default_str();

    auto* oracle = app.add_subcommand("oracle", "E(T^n) from the truncated matrix power");
    common(oracle, true);
    oracle->add_option("--n", cfg.n)->required();
    oracle->add_option("--max-len", cfg.max_len, "basis truncation length (default n)");
    oracle->add_option("--max-basis", cfg.max_basis)->capture_default_str();

    auto* fractaloid = app.add_subcommand("fractaloid", "fractaloid verdict from the depth-d tree");
    common(fractaloid, true);
    fractaloid->add_option("--depth", cfg.depth)->capture_default_str();

    auto* tree = app.add_subcommand("tree", "automaton tree as GraphViz DOT");
    common(tree, true);
    tree->add_option("--depth", cfg.depth)->capture_default_str();
    tree->add_option("--root", cfg.root, "root vertex id (default: first vertex)");

    auto* lattice = app.add_subcommand("lattice", "count lattice paths returning to the axis");
    common(lattice, false);
    lattice->add_option("--max-label", cfg.max_label)->required();
    lattice->add_option("--length", cfg.length)->required();

    auto* nc = app.add_subcommand("nc", "|NC(n)| and the Moebius row");
    common(nc, false);
    nc->add_option("--n", cfg.n)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    Report report;
    auto* sub = app.get_subcommands().front();
    report.command = sub->get_name();
    try {
        if (sub == moments) session.moments(report);
        else if (sub == cumulants) session.cumulants(report);
        else if (sub == joint) session.joint(report);
        else if (sub == freeness) session.freeness(report);
        else if (sub == oracle) session.oracle(report);
        else if (sub == fractaloid) session.fractaloid(report);
        else if (sub == tree) session.tree(report);
        else if (sub == lattice) session.lattice(report);
        else if (sub == nc) session.nc(report);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.exit_code();
    } catch (const Failure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.code;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: budget exceeded: " << e.what() << '\n';
        return kBudget;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    }

    emit(report, cfg, session.lg ? &session.base() : nullptr);
    if (report.status != kOk) return report.status;
    return report.truncated ? kBudget : kOk;
}
