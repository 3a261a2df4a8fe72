#include "groupoid_lab/ncpartition.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace groupoid_lab {

bool is_noncrossing(std::size_t n, const std::vector<NoncrossingPartition::Block>& blocks) {
    std::vector<std::size_t> owner(n + 1, 0);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        for (auto i : blocks[b]) owner[i] = b;
    }
    for (std::size_t a = 1; a <= n; ++a) {
        for (std::size_t b = a + 1; b <= n; ++b) {
            if (owner[b] == owner[a]) continue;
            for (std::size_t c = b + 1; c <= n; ++c) {
                if (owner[c] != owner[a]) continue;
                for (std::size_t d = c + 1; d <= n; ++d) {
                    if (owner[d] == owner[b]) return false;
                }
            }
        }
    }
    return true;
}

NoncrossingPartition::NoncrossingPartition(std::size_t n, std::vector<Block> blocks)
    : n_(n), blocks_(std::move(blocks)), block_of_(n, n) {
    for (auto& b : blocks_) {
        if (b.empty()) throw std::invalid_argument("partition has an empty block");
        std::sort(b.begin(), b.end());
    }
    std::sort(blocks_.begin(), blocks_.end());
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        for (auto i : blocks_[b]) {
            if (i < 1 || i > n) throw std::invalid_argument("partition element out of range");
            if (block_of_[i - 1] != n) throw std::invalid_argument("partition blocks overlap");
            block_of_[i - 1] = b;
        }
    }
    if (std::find(block_of_.begin(), block_of_.end(), n) != block_of_.end()) {
        throw std::invalid_argument("partition does not cover 1..n");
    }
    if (!is_noncrossing(n, blocks_)) throw std::invalid_argument("partition is crossing");
}

NoncrossingPartition NoncrossingPartition::zero(std::size_t n) {
    std::vector<Block> blocks;
    for (std::size_t i = 1; i <= n; ++i) blocks.push_back({i});
    return {n, std::move(blocks)};
}

NoncrossingPartition NoncrossingPartition::one(std::size_t n) {
    Block all;
    for (std::size_t i = 1; i <= n; ++i) all.push_back(i);
    return {n, {all}};
}

std::string NoncrossingPartition::to_string() const {
    std::string out = "{";
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        out += b ? ",(" : "(";
        for (std::size_t j = 0; j < blocks_[b].size(); ++j) {
            out += (j ? "," : "") + std::to_string(blocks_[b][j]);
        }
        out += ")";
    }
    return out + "}";
}

namespace {

// Restricted growth strings, pruned so that element i may join block b only
// when every element strictly between last(b) and i sits in a block that
// started after last(b).
void grow(std::size_t n, std::vector<std::size_t>& label, std::vector<std::size_t>& first,
          std::vector<std::size_t>& last, std::vector<NoncrossingPartition>& out) {
    std::size_t i = label.size() + 1;
    if (i > n) {
        std::vector<NoncrossingPartition::Block> blocks(first.size());
        for (std::size_t j = 0; j < n; ++j) blocks[label[j]].push_back(j + 1);
        out.emplace_back(n, std::move(blocks));
        return;
    }
    for (std::size_t b = 0; b <= first.size(); ++b) {
        if (b < first.size()) {
            bool ok = true;
            for (std::size_t j = last[b] + 1; j < i && ok; ++j) ok = first[label[j - 1]] > last[b];
            if (!ok) continue;
            auto saved = last[b];
            label.push_back(b);
            last[b] = i;
            grow(n, label, first, last, out);
            last[b] = saved;
            label.pop_back();
        } else {
            label.push_back(b);
            first.push_back(i);
            last.push_back(i);
            grow(n, label, first, last, out);
            first.pop_back();
            last.pop_back();
            label.pop_back();
        }
    }
}

}  // namespace

std::vector<NoncrossingPartition> enumerate_nc(std::size_t n, std::size_t max_n) {
    if (n < 1) throw std::invalid_argument("enumerate_nc: n must be at least 1");
    if (n > max_n) throw BudgetExceeded("enumerate_nc: n = " + std::to_string(n) + " exceeds budget " + std::to_string(max_n));
    std::vector<NoncrossingPartition> out;
    std::vector<std::size_t> label, first, last;
    grow(n, label, first, last, out);
    return out;
}

Integer catalan(std::size_t k) {
    // c_k = (2k choose k) / (k + 1)
    Integer binom = 1;
    for (std::size_t i = 1; i <= k; ++i) binom = binom * (k + i) / i;
    return binom / (k + 1);
}

bool leq(const NoncrossingPartition& a, const NoncrossingPartition& b) {
    if (a.size() != b.size()) throw std::invalid_argument("leq: partitions of different size");
    for (const auto& block : a.blocks()) {
        auto target = b.block_of(block.front());
        for (auto i : block) {
            if (b.block_of(i) != target) return false;
        }
    }
    return true;
}

std::vector<std::size_t> kreweras_block_sizes(const NoncrossingPartition& pi) {
    const auto n = pi.size();
    // π as a permutation cycling each block upward; K(π) = π^{-1} ∘ γ with
    // γ = (1 2 ... n). Only the cycle type is needed.
    std::vector<std::size_t> inverse(n + 1);
    for (const auto& b : pi.blocks()) {
        for (std::size_t j = 0; j < b.size(); ++j) inverse[b[(j + 1) % b.size()]] = b[j];
    }
    std::vector<bool> seen(n + 1, false);
    std::vector<std::size_t> sizes;
    for (std::size_t start = 1; start <= n; ++start) {
        if (seen[start]) continue;
        std::size_t length = 0;
        for (std::size_t i = start; !seen[i]; i = inverse[i % n + 1]) {
            seen[i] = true;
            ++length;
        }
        sizes.push_back(length);
    }
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}

namespace {

std::mutex moebius_mutex;
std::vector<Integer> moebius_memo{0, 1};  // index k holds μ(0_k, 1_k); k = 0 unused

Integer moebius_top_locked(std::size_t k) {
    while (moebius_memo.size() <= k) {
        const std::size_t m = moebius_memo.size();
        Integer sum = 0;
        for (const auto& sigma : enumerate_nc(m, std::max(m, kDefaultNcBudget))) {
            if (sigma.block_count() == m) continue;  // 0_m, the unknown term
            Integer term = 1;
            for (auto size : kreweras_block_sizes(sigma)) term *= moebius_memo[size];
            sum += term;
        }
        moebius_memo.push_back(-sum);
    }
    return moebius_memo[k];
}

}  // namespace

Integer moebius_top(std::size_t k) {
    if (k < 1) throw std::invalid_argument("moebius_top: k must be at least 1");
    std::lock_guard lock(moebius_mutex);
    return moebius_top_locked(k);
}

Integer moebius(const NoncrossingPartition& pi) {
    Integer value = 1;
    for (auto size : kreweras_block_sizes(pi)) value *= moebius_top(size);
    return value;
}

}  // namespace groupoid_lab
