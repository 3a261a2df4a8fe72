#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "groupoid_lab/groupoid.hpp"
#include "groupoid_lab/labeling.hpp"

namespace groupoid_lab {

/// Action of a groupoid element on automaton states: x ↦ x·w. States are
/// reduced groupoid elements; their weights are taken on demand.
class AutomatonAction {
public:
    AutomatonAction(const ShadowedGraph& g, GroupoidElement element) : graph_(&g), element_(std::move(element)) {}

    const GroupoidElement& element() const { return element_; }
    GroupoidElement operator()(const GroupoidElement& state) const { return concat(*graph_, state, element_); }

    /// (a ∘ b)(x) = a(b(x)); corresponds to the element b·a.
    friend AutomatonAction compose(const AutomatonAction& a, const AutomatonAction& b) {
        return {*a.graph_, concat(*a.graph_, b.element_, a.element_)};
    }

private:
    const ShadowedGraph* graph_;
    GroupoidElement element_;
};

struct TreeNode {
    std::size_t parent = 0;  // root points to itself
    std::size_t depth = 0;
    std::optional<SignedEdge> edge;  // ψ-output; none at the root
    WeightedElement weight;          // φ-output; ((v0,v0), l0) at the root
    VertexId terminal = 0;
    std::vector<std::size_t> children;
};

/// Bounded-depth automaton tree rooted at a vertex. Children of a node with
/// terminal vertex u are the signed edges leaving u in Ĝ, in canonical
/// order, so backtracking steps are included.
struct AutomatonTree {
    VertexId root_vertex = 0;
    std::size_t depth = 0;
    std::vector<TreeNode> nodes;  // breadth-first; nodes[0] is the root

    /// Signed edges from the root to `node`.
    EdgeWord path_to(std::size_t node) const;
};

struct FractaloidWitness {
    VertexId root = 0;
    EdgeWord path;  // from the root to the offending node
    VertexId vertex = 0;
    std::size_t child_count = 0;
    std::vector<Label> child_labels;
    std::string reason;
};

struct FractaloidVerdict {
    bool fractaloid = false;
    std::size_t depth = 0;  // verdict holds "to depth d"
    Label max_label = 0;
    std::optional<FractaloidWitness> witness;
};

/// The graph automaton <X0, E(Ĝ), φ, ψ> of a labeled graph.
class GraphAutomaton {
public:
    explicit GraphAutomaton(LabeledGraph lg) : lg_(std::move(lg)) {}

    const LabeledGraph& labeled_graph() const { return lg_; }
    const ShadowedGraph& graph() const { return lg_.graph(); }

    /// φ(x, e) = ω(e) if the terminal vertex of x is s(e), else ∅_G.
    WeightedElement phi(const WeightedElement& state, SignedEdge e) const;
    /// Path form: weight of the final edge of w' when x·w' is defined.
    WeightedElement phi(const WeightedElement& state, std::span<const SignedEdge> word) const;
    /// ψ(x, e) = e when φ(x, e) ≠ ∅_G.
    std::optional<SignedEdge> psi_edge(const WeightedElement& state, SignedEdge e) const;
    /// Path form: the whole continuation w' when x·w' is defined.
    std::optional<EdgeWord> psi_path(const WeightedElement& state, std::span<const SignedEdge> word) const;

    /// Action of the reduced image of `word`; non-admissible words act as ∅.
    AutomatonAction act(std::span<const SignedEdge> word) const;
    AutomatonAction act(SignedEdge e) const { return act(std::span<const SignedEdge>(&e, 1)); }
    AutomatonAction act_vertex(VertexId v) const { return {graph(), GroupoidElement::vertex(v)}; }

    AutomatonTree build_tree(VertexId root, std::size_t depth, std::size_t max_nodes = 2'000'000) const;

    /// Decides, to the given depth, whether every tree node has exactly 2N
    /// children carrying each label of {±1..±N} once. The first failing node
    /// in breadth-first order over roots is returned as witness.
    FractaloidVerdict is_fractaloid(std::size_t depth) const;

private:
    LabeledGraph lg_;
};

/// Local per-vertex criterion: the out-edges of every vertex of Ĝ carry
/// the labels ±1..±N exactly once.
bool local_fractaloid_criterion(const LabeledGraph& lg);

/// GraphViz rendering of a tree; nodes are labeled by their weights.
std::string to_dot(const AutomatonTree& tree, const LabeledGraph& lg);

}  // namespace groupoid_lab
