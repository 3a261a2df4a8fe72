#include "groupoid_lab/operators.hpp"

#include <limits>

namespace groupoid_lab {

std::optional<std::size_t> Basis::find(const GroupoidElement& w) const {
    auto it = index_.find(w);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Basis build_basis(const ShadowedGraph& g, std::size_t max_length, std::size_t max_size) {
    Basis basis;
    basis.max_length_ = max_length;
    basis.vertex_count_ = g.vertex_count();
    auto push = [&](GroupoidElement w) {
        if (basis.elements_.size() >= max_size) {
            throw BudgetExceeded("basis exceeds " + std::to_string(max_size) + " elements");
        }
        basis.index_.emplace(w, basis.elements_.size());
        basis.elements_.push_back(std::move(w));
    };
    for (VertexId v = 0; v < g.vertex_count(); ++v) push(GroupoidElement::vertex(v));

    // Level ℓ+1 extends each reduced word of level ℓ by a non-cancelling
    // letter; canonical letter order keeps each level lexicographic.
    std::size_t level_begin = basis.elements_.size();
    if (max_length >= 1) {
        for (auto e : g.signed_edges()) push(GroupoidElement::reduced_path({e}, g.source(e), g.target(e)));
    }
    for (std::size_t length = 2; length <= max_length; ++length) {
        std::size_t level_end = basis.elements_.size();
        for (std::size_t i = level_begin; i < level_end; ++i) {
            const GroupoidElement prefix = basis.elements_[i];
            for (auto e : g.out_edges(prefix.target())) {
                if (e == prefix.word().back().reversed()) continue;
                EdgeWord word = word_of(prefix);
                word.push_back(e);
                push(GroupoidElement::reduced_path(std::move(word), prefix.source(), g.target(e)));
            }
        }
        level_begin = level_end;
    }
    return basis;
}

namespace {

TruncatedOperator sum_of_right_mults(const ShadowedGraph& g, const std::vector<GroupoidElement>& symbols,
                                     const Basis& basis) {
    std::vector<Eigen::Triplet<std::int64_t>> entries;
    std::size_t dropped = 0;
    for (std::size_t col = 0; col < basis.size(); ++col) {
        for (const auto& w : symbols) {
            auto image = concat(g, basis[col], w);
            if (image.is_empty()) continue;
            auto row = basis.find(image);
            if (!row) {
                ++dropped;
                continue;
            }
            entries.emplace_back(static_cast<int>(*row), static_cast<int>(col), 1);
        }
    }
    TruncatedOperator op;
    op.matrix.resize(static_cast<Eigen::Index>(basis.size()), static_cast<Eigen::Index>(basis.size()));
    op.matrix.setFromTriplets(entries.begin(), entries.end());
    op.dropped = dropped;
    return op;
}

std::vector<GroupoidElement> edge_symbols(const ShadowedGraph& g, const std::vector<SignedEdge>& edges) {
    std::vector<GroupoidElement> out;
    for (auto e : edges) out.push_back(GroupoidElement::reduced_path({e}, g.source(e), g.target(e)));
    return out;
}

}  // namespace

TruncatedOperator right_mult(const ShadowedGraph& g, const GroupoidElement& w, const Basis& basis) {
    if (w.is_empty()) throw std::invalid_argument("right_mult: empty symbol");
    return sum_of_right_mults(g, {w}, basis);
}

TruncatedOperator labeling_operator(const LabeledGraph& lg, Label k, const Basis& basis) {
    if (k == 0 || k > lg.max_label() || -k > lg.max_label()) {
        throw std::out_of_range("label " + std::to_string(k) + " outside ±1..±" + std::to_string(lg.max_label()));
    }
    return sum_of_right_mults(lg.graph(), edge_symbols(lg.graph(), lg.edges_with_label(k)), basis);
}

TruncatedOperator labeling_sum(const LabeledGraph& lg, const Basis& basis) {
    std::vector<SignedEdge> all(lg.graph().signed_edges().begin(), lg.graph().signed_edges().end());
    return sum_of_right_mults(lg.graph(), edge_symbols(lg.graph(), all), basis);
}

DiagonalElement oracle_expectation_power(const LabeledGraph& lg, std::size_t n, std::size_t max_length,
                                         std::size_t max_basis) {
    if (n < 1) throw std::invalid_argument("oracle: n must be at least 1");
    if (max_length < n) throw std::invalid_argument("oracle: truncation length must be at least n");
    const auto& g = lg.graph();

    // Entries of T_G^n count walks, bounded by (max out-degree of Ĝ)^n.
    std::size_t degree = 0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) degree = std::max(degree, g.out_degree(v));
    long double bound = 1;
    for (std::size_t i = 0; i < n; ++i) bound *= static_cast<long double>(degree);
    if (bound >= static_cast<long double>(std::numeric_limits<std::int64_t>::max() / 4)) {
        throw BudgetExceeded("oracle: matrix entries may overflow 64-bit integers");
    }

    auto basis = build_basis(g, max_length, max_basis);
    SparseOperator t = labeling_sum(lg, basis).matrix;
    SparseOperator power = t;
    for (std::size_t i = 1; i < n; ++i) power = power * t;

    DiagonalElement out(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        auto pos = static_cast<Eigen::Index>(*basis.find(GroupoidElement::vertex(v)));
        out[v] = power.coeff(pos, pos);
    }
    return out;
}

}  // namespace groupoid_lab
