#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "groupoid_lab/algebra.hpp"
#include "groupoid_lab/groupoid.hpp"
#include "groupoid_lab/labeling.hpp"
#include "groupoid_lab/ncpartition.hpp"

namespace groupoid_lab {

inline constexpr std::uint64_t kDefaultWordBudget = 10'000'000;

/// E(R_w): unit mass at v when w reduces to the vertex v, zero otherwise.
DiagonalElement expectation_of_word(const ShadowedGraph& g, std::span<const SignedEdge> word);

enum class WordSetMode {
    /// Admissible words whose reduction is a vertex.
    Reduction,
    /// Loop words with zero balance vector (diagnostic).
    Balance,
};

const char* to_string(WordSetMode mode);

struct WordSetReport {
    std::size_t n = 0;
    WordSetMode mode = WordSetMode::Reduction;
    std::vector<EdgeWord> words;  // empty unless requested
    DiagonalElement tallies;      // per-vertex counts, keyed by word source
    Integer word_count = 0;
    bool truncated = false;       // enumeration stopped at the word budget
};

/// The moment word set W_n^(m) (reduction mode) or its balance-mode
/// counterpart. Tallies sum to word_count.
WordSetReport w_m_set(const LabeledGraph& lg, std::size_t n, WordSetMode mode = WordSetMode::Reduction,
                      bool keep_words = true, std::uint64_t max_words = kDefaultWordBudget);

struct MomentResult {
    DiagonalElement value;
    bool truncated = false;
};

/// E(T_G^n) as the per-vertex tally of W_n^(m). Enumeration is split by
/// first letter across worker threads when the full run fits the budget.
MomentResult moment(const LabeledGraph& lg, std::size_t n, std::uint64_t max_words = kDefaultWordBudget);

/// Same tally restricted to words that use no loop edge.
MomentResult moment_avoiding_loop_edges(const LabeledGraph& lg, std::size_t n,
                                        std::uint64_t max_words = kDefaultWordBudget);

/// Experimental accelerator: dynamic programming over reduced suffixes from
/// each vertex. Always cross-checked against `moment` in tests.
DiagonalElement moment_dp(const LabeledGraph& lg, std::size_t n);

/// E(T_{i1}···T_{in}). Operators are read in product order; since
/// R_a R_b = R_{ba}, the contributing paths are e_n···e_1 with label(e_j) = i_j.
DiagonalElement joint_moment(const LabeledGraph& lg, std::span<const Label> indices);

/// Formal-sum images of T_k and T_G.
OperatorSum labeling_formal(const LabeledGraph& lg, Label k);
OperatorSum labeling_sum_formal(const LabeledGraph& lg);

/// E_π(a_1, ..., a_n) with nested conditional expectations.
DiagonalElement partitioned_expectation(const ShadowedGraph& g, const NoncrossingPartition& pi,
                                        std::span<const OperatorSum> args);

/// Operator-valued free cumulant k_n(a_1, ..., a_n) =
/// Σ_{π∈NC(n)} μ(π, 1_n) E_π(a_1, ..., a_n).
DiagonalElement cumulant(const ShadowedGraph& g, std::span<const OperatorSum> args,
                         std::size_t nc_budget = kDefaultNcBudget);

/// k_n(T_G, ..., T_G) by Möbius inversion.
DiagonalElement cumulant_direct(const LabeledGraph& lg, std::size_t n, std::size_t nc_budget = kDefaultNcBudget);

/// k_n(T_{i1}, ..., T_{in}).
DiagonalElement joint_cumulant(const LabeledGraph& lg, std::span<const Label> indices,
                               std::size_t nc_budget = kDefaultNcBudget);

/// μ_w for a path w = e_n···e_1 reducing to a vertex: the sum of μ(π, 1_n)
/// over π with E_π(R_{e1}, ..., R_{en}) = E(R_w) ≠ 0. Throws
/// std::invalid_argument if w is not admissible or does not reduce to a
/// vertex.
Integer mu_w(const LabeledGraph& lg, std::span<const SignedEdge> path);

/// Σ_{w∈W_n^(m)} μ_w R_{s(w)}; equals cumulant_direct by multilinearity.
DiagonalElement cumulant_via_mu(const LabeledGraph& lg, std::size_t n, std::size_t nc_budget = kDefaultNcBudget);

struct CumulantComparison {
    DiagonalElement via_wc;
    DiagonalElement direct;
    DiagonalElement difference;  // via_wc - direct
    bool agrees = false;
    std::size_t word_count = 0;  // |W_n^(c)|
};

/// Σ over single-base-edge loop words reducing to a vertex, weighted by μ_w,
/// compared against cumulant_direct.
CumulantComparison cumulant_via_wc(const LabeledGraph& lg, std::size_t n, std::size_t nc_budget = kDefaultNcBudget);

/// Σ_{π∈NC(n)} k_π(T_G, ..., T_G) with nested cumulants; reproduces E(T_G^n).
DiagonalElement moment_from_cumulants(const LabeledGraph& lg, std::size_t n, std::size_t nc_budget = kDefaultNcBudget);

struct FreenessReport {
    Label family_a = 0;
    Label family_b = 0;
    std::size_t max_order = 0;
    std::size_t tuples_checked = 0;
    Integer max_abs_coefficient = 0;
    std::optional<std::vector<Label>> first_nonzero;
    /// Every edge labeled ±family_a is diagram-distinct from every edge
    /// labeled ±family_b.
    bool diagram_distinct = false;

    bool free_to_order() const { return max_abs_coefficient == 0; }
};

/// Mixed joint cumulants in {T_{±a}} ∪ {T_{±b}} of orders 2..max_order with
/// letters from both families.
FreenessReport check_freeness(const LabeledGraph& lg, Label family_a, Label family_b, std::size_t max_order,
                              std::size_t nc_budget = kDefaultNcBudget);

}  // namespace groupoid_lab
