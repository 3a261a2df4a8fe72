#include "groupoid_lab/labeling.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string_view>

namespace groupoid_lab {

const char* to_string(LabelingMode mode) {
    switch (mode) {
        case LabelingMode::PerVertex: return "per-vertex";
        case LabelingMode::MultiedgeIndex: return "multiedge";
        case LabelingMode::Explicit: return "explicit";
    }
    return "?";
}

std::optional<LabelingMode> parse_labeling_mode(std::string_view text) {
    if (text == "per-vertex") return LabelingMode::PerVertex;
    if (text == "multiedge") return LabelingMode::MultiedgeIndex;
    if (text == "explicit") return LabelingMode::Explicit;
    return std::nullopt;
}

LabeledGraph::LabeledGraph(ShadowedGraph graph, std::vector<Label> labels, LabelingMode mode)
    : graph_(std::move(graph)), labels_(std::move(labels)), mode_(mode) {
    if (labels_.size() != graph_.base().edge_count()) throw LabelingError("label count does not match edge count");
    for (auto l : labels_) {
        if (l < 1) throw LabelingError("labels must be positive");
        max_label_ = std::max(max_label_, l);
    }
}

std::vector<SignedEdge> LabeledGraph::edges_with_label(Label k) const {
    std::vector<SignedEdge> out;
    for (auto e : graph_.signed_edges()) {
        if (label(e) == k) out.push_back(e);
    }
    return out;
}

bool LabeledGraph::per_vertex_bijective() const {
    const auto& g = graph_.base();
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        std::set<Label> seen;
        for (auto e : g.out_edges(v)) {
            if (!seen.insert(labels_[e]).second) return false;
        }
    }
    return true;
}

LabeledGraph assign_weights(ShadowedGraph g, LabelingMode mode,
                            std::optional<std::vector<std::optional<Label>>> explicit_labels,
                            bool require_bijective) {
    const auto& base = g.base();
    if (base.edge_count() == 0) throw LabelingError("graph has no edges; no labeling set exists");
    std::vector<Label> labels(base.edge_count(), 0);

    switch (mode) {
        case LabelingMode::PerVertex:
            for (VertexId v = 0; v < base.vertex_count(); ++v) {
                Label next = 1;
                for (auto e : base.out_edges(v)) labels[e] = next++;
            }
            break;
        case LabelingMode::MultiedgeIndex: {
            std::map<std::pair<VertexId, VertexId>, Label> parallel;
            for (EdgeIndex e = 0; e < base.edge_count(); ++e) {
                const auto& edge = base.edge(e);
                labels[e] = ++parallel[{edge.source, edge.target}];
            }
            break;
        }
        case LabelingMode::Explicit: {
            if (!explicit_labels || explicit_labels->size() != base.edge_count()) {
                throw LabelingError("explicit labeling requires a label on every edge");
            }
            for (EdgeIndex e = 0; e < base.edge_count(); ++e) {
                const auto& l = (*explicit_labels)[e];
                if (!l) throw LabelingError("edge '" + base.edge(e).id + "' has no label");
                // Labels may exceed the raw out-degree (multiedge convention),
                // but never the edge count.
                if (*l < 1 || *l > static_cast<Label>(base.edge_count())) {
                    throw LabelingError("edge '" + base.edge(e).id + "' label " + std::to_string(*l) +
                                        " out of range 1.." + std::to_string(base.edge_count()));
                }
                labels[e] = *l;
            }
            break;
        }
    }

    LabeledGraph lg(std::move(g), std::move(labels), mode);
    if (require_bijective && !lg.per_vertex_bijective()) {
        throw LabelingError("labels are not bijective on the out-edges of some vertex");
    }
    return lg;
}

WeightedElement weight(const LabeledGraph& lg, const GroupoidElement& a) {
    if (a.is_empty()) return WeightedElement::none();
    if (a.is_vertex()) return WeightedElement::at_vertex(a.source());
    WeightedElement out{false, a.source(), a.target(), {}};
    for (auto e : a.word()) out.labels.push_back(lg.label(e));
    return out;
}

WeightedElement weight(const LabeledGraph& lg, std::span<const SignedEdge> word) {
    const auto& g = lg.graph();
    if (word.empty() || !is_admissible(g, word)) return WeightedElement::none();
    WeightedElement out{false, g.source(word.front()), g.target(word.back()), {}};
    for (auto e : word) out.labels.push_back(lg.label(e));
    return out;
}

BalanceVector::BalanceVector(std::map<Label, std::int64_t> entries) {
    for (auto [k, amount] : entries) add(k, amount);
}

std::int64_t BalanceVector::operator[](Label k) const {
    auto it = entries_.find(k);
    return it == entries_.end() ? 0 : it->second;
}

std::int64_t BalanceVector::integer_sum() const {
    std::int64_t total = 0;
    for (auto [k, amount] : entries_) total += k * amount;
    return total;
}

BalanceVector& BalanceVector::operator+=(const BalanceVector& other) {
    for (auto [k, amount] : other.entries_) add(k, amount);
    return *this;
}

void BalanceVector::add(Label k, std::int64_t amount) {
    if (k <= 0) throw std::invalid_argument("balance index must be positive");
    auto& slot = entries_[k];
    slot += amount;
    if (slot == 0) entries_.erase(k);
}

BalanceVector theta(std::span<const Label> word) {
    std::map<Label, std::int64_t> counts;
    for (auto l : word) {
        if (l > 0) ++counts[l];
        if (l < 0) --counts[-l];
    }
    return BalanceVector(std::move(counts));
}

BalancedWeight omega_plus(const WeightedElement& we) {
    if (we.empty) return {};
    return {false, we.from, we.to, theta(we.labels)};
}

namespace {

void sum_compositions(Label parts, std::size_t remaining, const std::vector<Integer>& factorial,
                      const Integer& denominator, const Integer& numerator, Integer& total) {
    if (parts == 1) {
        Integer d = denominator * factorial[remaining] * factorial[remaining];
        total += numerator / d;
        return;
    }
    for (std::size_t m = 0; m <= remaining; ++m) {
        sum_compositions(parts - 1, remaining - m, factorial, denominator * factorial[m] * factorial[m], numerator,
                         total);
    }
}

}  // namespace

Integer count_axis_paths(Label max_label, std::size_t length) {
    if (max_label < 1) throw std::invalid_argument("max label must be at least 1");
    if (length == 0) throw std::invalid_argument("length must be at least 1");
    if (length % 2 == 1) return 0;
    std::vector<Integer> factorial(length + 1, 1);
    for (std::size_t i = 1; i <= length; ++i) factorial[i] = factorial[i - 1] * i;
    Integer total = 0;
    sum_compositions(max_label, length / 2, factorial, 1, factorial[length], total);
    return total;
}

}  // namespace groupoid_lab
