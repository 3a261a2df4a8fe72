#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include <Eigen/SparseCore>

#include "groupoid_lab/algebra.hpp"
#include "groupoid_lab/groupoid.hpp"
#include "groupoid_lab/labeling.hpp"

namespace groupoid_lab {

/// Truncated Hilbert basis {ξ_v} ∪ {ξ_w : w reduced, |w| ≤ L}. Vertices come
/// first (sorted), then paths by (length, word).
class Basis {
public:
    std::size_t size() const { return elements_.size(); }
    std::size_t max_length() const { return max_length_; }
    std::size_t vertex_count() const { return vertex_count_; }
    const GroupoidElement& operator[](std::size_t i) const { return elements_.at(i); }
    const std::vector<GroupoidElement>& elements() const { return elements_; }
    std::optional<std::size_t> find(const GroupoidElement& w) const;

private:
    friend Basis build_basis(const ShadowedGraph& g, std::size_t max_length, std::size_t max_size);

    std::vector<GroupoidElement> elements_;
    std::unordered_map<GroupoidElement, std::size_t, GroupoidElementHash> index_;
    std::size_t max_length_ = 0;
    std::size_t vertex_count_ = 0;
};

inline constexpr std::size_t kDefaultBasisBudget = 100'000;

/// Throws BudgetExceeded when the basis would exceed `max_size` elements.
Basis build_basis(const ShadowedGraph& g, std::size_t max_length, std::size_t max_size = kDefaultBasisBudget);

using SparseOperator = Eigen::SparseMatrix<std::int64_t, Eigen::ColMajor>;

/// An operator on the truncated space plus the number of basis images that
/// fell outside the truncation and were dropped.
struct TruncatedOperator {
    SparseOperator matrix;
    std::size_t dropped = 0;
};

/// R_w: column ξ_{w'} maps to ξ_{w'·w} (or 0).
TruncatedOperator right_mult(const ShadowedGraph& g, const GroupoidElement& w, const Basis& basis);

/// T_k = Σ R_e over signed edges with label k, 1 ≤ |k| ≤ N.
TruncatedOperator labeling_operator(const LabeledGraph& lg, Label k, const Basis& basis);

/// T_G = Σ_{k=-N}^{-1} T_k + Σ_{j=1}^{N} T_j.
TruncatedOperator labeling_sum(const LabeledGraph& lg, const Basis& basis);

/// E(T_G^n) read off the diagonal of the n-th matrix power at the vertex
/// positions of the L-truncated basis. Requires L ≥ n so that vertex
/// columns never reach the truncation boundary.
DiagonalElement oracle_expectation_power(const LabeledGraph& lg, std::size_t n, std::size_t max_length,
                                         std::size_t max_basis = kDefaultBasisBudget);

}  // namespace groupoid_lab
