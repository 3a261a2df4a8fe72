#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "groupoid_lab/graph.hpp"
#include "groupoid_lab/groupoid.hpp"
#include "groupoid_lab/integer.hpp"

namespace groupoid_lab {

/// Signed label index: k stands for l_k, -k for l_{-k}, 0 for the vertex
/// label l_0. The lattice heights themselves are never evaluated.
using Label = std::int32_t;
using LabelWord = std::vector<Label>;

class LabelingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class LabelingMode {
    /// Forward edges out of each vertex get 1..deg_out(v) in edge-id order.
    PerVertex,
    /// Parallel-edge index within each (source, target) pair.
    MultiedgeIndex,
    /// Labels supplied by the caller.
    Explicit,
};

const char* to_string(LabelingMode mode);
std::optional<LabelingMode> parse_labeling_mode(std::string_view text);

/// Shadowed graph with a positive label on every base edge; shadows carry
/// the negated label.
class LabeledGraph {
public:
    LabeledGraph(ShadowedGraph graph, std::vector<Label> labels, LabelingMode mode);

    const ShadowedGraph& graph() const { return graph_; }
    LabelingMode mode() const { return mode_; }
    /// N, the largest label in use.
    Label max_label() const { return max_label_; }

    Label label(EdgeIndex e) const { return labels_.at(e); }
    Label label(SignedEdge e) const { return e.inverse ? -labels_.at(e.edge) : labels_.at(e.edge); }
    std::span<const Label> labels() const { return labels_; }

    /// Signed edges of Ĝ carrying label k.
    std::vector<SignedEdge> edges_with_label(Label k) const;

    /// True when forward labels leaving each vertex are pairwise distinct.
    bool per_vertex_bijective() const;

private:
    ShadowedGraph graph_;
    std::vector<Label> labels_;
    LabelingMode mode_;
    Label max_label_ = 0;
};

/// Runs the weighting process. `explicit_labels` (indexed by edge index) is
/// required in Explicit mode and must be in 1..N; with `require_bijective`
/// explicit input must also be per-vertex bijective.
LabeledGraph assign_weights(ShadowedGraph g, LabelingMode mode = LabelingMode::PerVertex,
                            std::optional<std::vector<std::optional<Label>>> explicit_labels = std::nullopt,
                            bool require_bijective = false);

/// ω applied to a groupoid element or word: endpoint pair plus label word.
/// The empty weight ∅_G is represented by `empty == true`.
struct WeightedElement {
    bool empty = true;
    VertexId from = 0;
    VertexId to = 0;
    LabelWord labels;

    static WeightedElement none() { return {}; }
    static WeightedElement at_vertex(VertexId v) { return {false, v, v, {0}}; }

    friend bool operator==(const WeightedElement&, const WeightedElement&) = default;
};

WeightedElement weight(const LabeledGraph& lg, const GroupoidElement& a);
/// Weight of a raw word; non-admissible or empty words give ∅_G.
WeightedElement weight(const LabeledGraph& lg, std::span<const SignedEdge> word);

/// Per-index signed count: k -> #(+k) - #(-k). Zero entries are dropped, so
/// two balance vectors compare equal iff they agree everywhere.
class BalanceVector {
public:
    BalanceVector() = default;
    explicit BalanceVector(std::map<Label, std::int64_t> entries);

    std::int64_t operator[](Label k) const;
    const std::map<Label, std::int64_t>& entries() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }
    /// The scalar reading Σ i_j.
    std::int64_t integer_sum() const;

    BalanceVector& operator+=(const BalanceVector& other);
    friend BalanceVector operator+(BalanceVector a, const BalanceVector& b) { return a += b; }
    friend bool operator==(const BalanceVector&, const BalanceVector&) = default;

private:
    void add(Label k, std::int64_t amount);
    std::map<Label, std::int64_t> entries_;
};

BalanceVector theta(std::span<const Label> word);

struct BalancedWeight {
    bool empty = true;
    VertexId from = 0;
    VertexId to = 0;
    BalanceVector balance;

    friend bool operator==(const BalancedWeight&, const BalancedWeight&) = default;
};

BalancedWeight omega_plus(const WeightedElement& we);

/// Number of length-k words over {±1..±N} with zero balance vector:
/// Σ_{m_1+...+m_N = k/2} k! / Π (m_j!)^2 for even k, 0 for odd k.
Integer count_axis_paths(Label max_label, std::size_t length);

}  // namespace groupoid_lab
