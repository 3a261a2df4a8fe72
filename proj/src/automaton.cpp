#include "groupoid_lab/automaton.hpp"

#include <algorithm>
#include <sstream>

namespace groupoid_lab {

EdgeWord AutomatonTree::path_to(std::size_t node) const {
    EdgeWord path;
    while (nodes.at(node).edge) {
        path.push_back(*nodes[node].edge);
        node = nodes[node].parent;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

WeightedElement GraphAutomaton::phi(const WeightedElement& state, SignedEdge e) const {
    if (state.empty || state.to != graph().source(e)) return WeightedElement::none();
    SignedEdge letter = e;
    return weight(lg_, std::span<const SignedEdge>(&letter, 1));
}

WeightedElement GraphAutomaton::phi(const WeightedElement& state, std::span<const SignedEdge> word) const {
    if (state.empty || word.empty() || !is_admissible(graph(), word)) return WeightedElement::none();
    if (state.to != graph().source(word.front())) return WeightedElement::none();
    return weight(lg_, word.last(1));
}

std::optional<SignedEdge> GraphAutomaton::psi_edge(const WeightedElement& state, SignedEdge e) const {
    if (phi(state, e).empty) return std::nullopt;
    return e;
}

std::optional<EdgeWord> GraphAutomaton::psi_path(const WeightedElement& state,
                                                 std::span<const SignedEdge> word) const {
    if (phi(state, word).empty) return std::nullopt;
    return EdgeWord(word.begin(), word.end());
}

AutomatonAction GraphAutomaton::act(std::span<const SignedEdge> word) const {
    return {graph(), reduce(graph(), word)};
}

AutomatonTree GraphAutomaton::build_tree(VertexId root, std::size_t depth, std::size_t max_nodes) const {
    if (root >= graph().vertex_count()) throw GraphError("unknown root vertex");
    AutomatonTree tree;
    tree.root_vertex = root;
    tree.depth = depth;
    tree.nodes.push_back({0, 0, std::nullopt, WeightedElement::at_vertex(root), root, {}});

    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        if (tree.nodes[i].depth == depth) continue;
        WeightedElement state{false, root, tree.nodes[i].terminal, {}};
        for (auto e : graph().out_edges(tree.nodes[i].terminal)) {
            auto out = phi(state, e);
            auto moved = psi_edge(state, e);
            if (out.empty || !moved) continue;
            if (tree.nodes.size() >= max_nodes) throw BudgetExceeded("automaton tree exceeds node budget");
            tree.nodes[i].children.push_back(tree.nodes.size());
            tree.nodes.push_back({i, tree.nodes[i].depth + 1, moved, out, graph().target(e), {}});
        }
    }
    return tree;
}

namespace {

std::vector<Label> full_label_set(Label n) {
    std::vector<Label> labels;
    for (Label k = -n; k <= n; ++k) {
        if (k != 0) labels.push_back(k);
    }
    return labels;
}

}  // namespace

bool local_fractaloid_criterion(const LabeledGraph& lg) {
    const auto expected = full_label_set(lg.max_label());
    for (VertexId v = 0; v < lg.graph().vertex_count(); ++v) {
        std::vector<Label> seen;
        for (auto e : lg.graph().out_edges(v)) seen.push_back(lg.label(e));
        std::sort(seen.begin(), seen.end());
        if (seen != expected) return false;
    }
    return true;
}

FractaloidVerdict GraphAutomaton::is_fractaloid(std::size_t depth) const {
    if (depth < 1) throw std::invalid_argument("fractaloid check needs depth >= 1");
    FractaloidVerdict verdict;
    verdict.depth = depth;
    verdict.max_label = lg_.max_label();
    const auto expected = full_label_set(lg_.max_label());

    for (VertexId root = 0; root < graph().vertex_count(); ++root) {
        auto tree = build_tree(root, depth);
        for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
            const auto& node = tree.nodes[i];
            if (node.depth == depth) continue;
            std::vector<Label> labels;
            for (auto c : node.children) labels.push_back(tree.nodes[c].weight.labels.front());
            std::sort(labels.begin(), labels.end());
            if (labels == expected) continue;

            FractaloidWitness w;
            w.root = root;
            w.path = tree.path_to(i);
            w.vertex = node.terminal;
            w.child_count = node.children.size();
            w.child_labels = labels;
            w.reason = node.children.size() != expected.size()
                           ? "node has " + std::to_string(node.children.size()) + " children, expected " +
                                 std::to_string(expected.size())
                           : std::string("children do not carry each label of ±1..±N exactly once");
            verdict.witness = std::move(w);
            return verdict;
        }
    }
    verdict.fractaloid = true;
    return verdict;
}

std::string to_dot(const AutomatonTree& tree, const LabeledGraph& lg) {
    const auto& g = lg.graph();
    std::ostringstream out;
    out << "digraph automaton_tree {\n";
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        const auto& node = tree.nodes[i];
        const auto& base = g.base();
        out << "  n" << i << " [label=\"((" << base.vertex_name(node.weight.from) << ", "
            << base.vertex_name(node.weight.to) << "), l" << node.weight.labels.front() << ")\"];\n";
    }
    for (std::size_t i = 1; i < tree.nodes.size(); ++i) {
        const auto& node = tree.nodes[i];
        out << "  n" << node.parent << " -> n" << i << " [label=\"" << g.name(*node.edge) << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace groupoid_lab
