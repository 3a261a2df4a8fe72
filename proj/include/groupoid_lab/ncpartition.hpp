#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "groupoid_lab/integer.hpp"

namespace groupoid_lab {

/// Noncrossing partition of {1..n}. Blocks are kept sorted internally and
/// ordered by their minima.
class NoncrossingPartition {
public:
    using Block = std::vector<std::size_t>;

    /// Throws std::invalid_argument unless `blocks` is a noncrossing
    /// partition of {1..n}.
    NoncrossingPartition(std::size_t n, std::vector<Block> blocks);

    static NoncrossingPartition zero(std::size_t n);  // 0_n, all singletons
    static NoncrossingPartition one(std::size_t n);   // 1_n, a single block

    std::size_t size() const { return n_; }
    const std::vector<Block>& blocks() const { return blocks_; }
    std::size_t block_count() const { return blocks_.size(); }
    /// Index into blocks() of the block containing element i (1-based).
    std::size_t block_of(std::size_t i) const { return block_of_.at(i - 1); }

    std::string to_string() const;

    friend bool operator==(const NoncrossingPartition&, const NoncrossingPartition&) = default;

private:
    std::size_t n_;
    std::vector<Block> blocks_;
    std::vector<std::size_t> block_of_;
};

/// True when no a < b < c < d has a, c in one block and b, d in another.
bool is_noncrossing(std::size_t n, const std::vector<NoncrossingPartition::Block>& blocks);

inline constexpr std::size_t kDefaultNcBudget = 12;

/// All of NC(n) in a fixed order (lexicographic on the block-label string).
std::vector<NoncrossingPartition> enumerate_nc(std::size_t n, std::size_t max_n = kDefaultNcBudget);

Integer catalan(std::size_t k);

/// Refinement order: every block of `a` lies inside a block of `b`.
bool leq(const NoncrossingPartition& a, const NoncrossingPartition& b);

/// Block sizes of the Kreweras complement of π.
std::vector<std::size_t> kreweras_block_sizes(const NoncrossingPartition& pi);

/// μ(0_k, 1_k), obtained from Σ_{σ∈NC(k)} μ(σ, 1_k) = 0 and the product
/// factorisation of the intervals [σ, 1_k]; memoized.
Integer moebius_top(std::size_t k);

/// μ(π, 1_n). The interval [π, 1_n] is isomorphic to the product of
/// NC(|B|) over the blocks B of the Kreweras complement of π.
Integer moebius(const NoncrossingPartition& pi);

/// Partition-dependent evaluation with nesting. `block(args)` receives the
/// operands of one block in position order; each operand is already
/// multiplied on the right by the product of the blocks nested between it
/// and the next element of its block. Outermost block values multiply left
/// to right. For π = {(1,4),(2,3),(5)} and block = E(product):
/// E(a1·E(a2·a3)·a4)·E(a5).
template <typename T, typename BlockFn, typename Multiply>
T evaluate_nested(const NoncrossingPartition& pi, std::span<const T> operands, BlockFn&& block, Multiply&& multiply) {
    if (operands.size() != pi.size()) throw std::invalid_argument("operand count does not match partition size");
    if (operands.empty()) throw std::invalid_argument("evaluate_nested: empty partition");

    // Evaluates the blocks covering positions [lo, hi] (1-based, inclusive).
    auto evaluate_range = [&](auto&& self, std::size_t lo, std::size_t hi) -> T {
        std::optional<T> result;
        std::size_t p = lo;
        while (p <= hi) {
            const auto& b = pi.blocks()[pi.block_of(p)];
            std::vector<T> args;
            args.reserve(b.size());
            for (std::size_t j = 0; j < b.size(); ++j) {
                T arg = operands[b[j] - 1];
                if (j + 1 < b.size() && b[j + 1] > b[j] + 1) arg = multiply(arg, self(self, b[j] + 1, b[j + 1] - 1));
                args.push_back(std::move(arg));
            }
            T value = block(std::as_const(args));
            result = result ? multiply(*result, value) : std::move(value);
            p = b.back() + 1;
        }
        return std::move(*result);
    };
    return evaluate_range(evaluate_range, 1, pi.size());
}

}  // namespace groupoid_lab
