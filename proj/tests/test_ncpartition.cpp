#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "groupoid_lab/ncpartition.hpp"

using namespace groupoid_lab;
using Blocks = std::vector<NoncrossingPartition::Block>;

namespace {

// All set partitions of {1..n} via restricted growth strings.
std::vector<std::vector<std::size_t>> all_set_partitions(std::size_t n) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> rgs(n, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
        if (i == n) {
            out.push_back(rgs);
            return;
        }
        for (std::size_t b = 0; b <= used; ++b) {
            rgs[i] = b;
            rec(i + 1, std::max(used, b + 1));
        }
    };
    rgs[0] = 0;
    rec(1, 1);
    return out;
}

bool crossing(const std::vector<std::size_t>& rgs) {
    const auto n = rgs.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            for (std::size_t c = b + 1; c < n; ++c)
                for (std::size_t d = c + 1; d < n; ++d)
                    if (rgs[a] == rgs[c] && rgs[b] == rgs[d] && rgs[a] != rgs[b]) return true;
    return false;
}

std::vector<std::size_t> rgs_of(const NoncrossingPartition& p) {
    std::vector<std::size_t> out(p.size());
    for (std::size_t i = 1; i <= p.size(); ++i) out[i - 1] = p.block_of(i);
    return out;
}

// Independent refinement test on block labels.
bool refines(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            if (a[i] == a[j] && b[i] != b[j]) return false;
    return true;
}

// μ(π, 1_n) by direct zeta inversion over the poset NC(n):
// μ(1,1) = 1 and μ(π,1) = -Σ_{π<σ≤1} μ(σ,1).
std::vector<Integer> brute_moebius_row(const std::vector<NoncrossingPartition>& nc) {
    std::vector<std::vector<std::size_t>> labels;
    for (const auto& p : nc) labels.push_back(rgs_of(p));
    std::vector<std::size_t> order(nc.size());
    std::iota(order.begin(), order.end(), 0);
    // coarser partitions (fewer blocks) first
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return nc[a].block_count() < nc[b].block_count(); });
    std::vector<Integer> mu(nc.size(), 0);
    for (auto i : order) {
        if (nc[i].block_count() == 1) {
            mu[i] = 1;
            continue;
        }
        Integer sum = 0;
        for (std::size_t j = 0; j < nc.size(); ++j) {
            if (j != i && refines(labels[i], labels[j])) sum += mu[j];
        }
        mu[i] = -sum;
    }
    return mu;
}

}  // namespace

TEST_CASE("enumerate_nc sizes") {
    CHECK(enumerate_nc(1).size() == 1);
    CHECK(enumerate_nc(3).size() == 5);
    CHECK(enumerate_nc(4).size() == 14);
    for (std::size_t n = 1; n <= 8; ++n) CHECK(enumerate_nc(n).size() == catalan(n));
    CHECK_THROWS_AS(enumerate_nc(13), BudgetExceeded);
    CHECK(enumerate_nc(13, 13).size() == catalan(13));
}

TEST_CASE("enumerate_nc agrees with filtering all set partitions") {
    for (std::size_t n = 1; n <= 8; ++n) {
        std::set<std::vector<std::size_t>> expected;
        for (const auto& rgs : all_set_partitions(n)) {
            if (!crossing(rgs)) expected.insert(rgs);
        }
        std::set<std::vector<std::size_t>> got;
        for (const auto& p : enumerate_nc(n)) got.insert(rgs_of(p));
        CHECK(got == expected);
        CHECK(got.size() == enumerate_nc(n).size());
    }
}

TEST_CASE("catalan") {
    CHECK(catalan(0) == 1);
    CHECK(catalan(3) == 5);
    CHECK(catalan(5) == 42);
    CHECK(catalan(30) == Integer("3814986502092304"));
}

TEST_CASE("partition validation") {
    CHECK_THROWS(NoncrossingPartition(4, Blocks{{1, 3}, {2, 4}}));
    CHECK_THROWS(NoncrossingPartition(3, Blocks{{1, 2}}));
    CHECK_THROWS(NoncrossingPartition(3, Blocks{{1, 2}, {2, 3}}));
    CHECK_THROWS(NoncrossingPartition(2, Blocks{{1, 5}}));
    NoncrossingPartition p(5, Blocks{{5}, {3, 2}, {4, 1}});
    CHECK(p.to_string() == "{(1,4),(2,3),(5)}");
}

TEST_CASE("leq") {
    auto zero = NoncrossingPartition::zero(4);
    for (const auto& p : enumerate_nc(4)) {
        CHECK(leq(zero, p));
        CHECK(leq(p, NoncrossingPartition::one(4)));
    }
    CHECK(leq(NoncrossingPartition(4, Blocks{{1, 2}, {3, 4}}), NoncrossingPartition::one(4)));
    CHECK_FALSE(leq(NoncrossingPartition(4, Blocks{{1, 3}, {2}, {4}}), NoncrossingPartition(4, Blocks{{1, 2}, {3, 4}})));
    CHECK_THROWS(leq(zero, NoncrossingPartition::one(3)));
}

TEST_CASE("moebius identities") {
    CHECK(moebius(NoncrossingPartition::zero(4)) == -5);
    for (std::size_t n = 1; n <= 8; ++n) {
        Integer expected = catalan(n - 1) * ((n - 1) % 2 == 0 ? 1 : -1);
        CHECK(moebius(NoncrossingPartition::zero(n)) == expected);
        CHECK(moebius(NoncrossingPartition::one(n)) == 1);
        Integer total = 0;
        for (const auto& p : enumerate_nc(n)) total += moebius(p);
        CHECK(total == (n == 1 ? 1 : 0));
    }
}

TEST_CASE("moebius agrees with direct zeta inversion") {
    for (std::size_t n = 1; n <= 7; ++n) {
        auto nc = enumerate_nc(n);
        auto brute = brute_moebius_row(nc);
        for (std::size_t i = 0; i < nc.size(); ++i) REQUIRE(moebius(nc[i]) == brute[i]);
    }
}

TEST_CASE("zeta-moebius inversion over upper intervals") {
    for (std::size_t n = 1; n <= 6; ++n) {
        auto nc = enumerate_nc(n);
        for (const auto& pi : nc) {
            Integer sum = 0;
            for (const auto& sigma : nc) {
                if (leq(pi, sigma)) sum += moebius(sigma);
            }
            CHECK(sum == (pi.block_count() == 1 ? 1 : 0));
        }
    }
}

TEST_CASE("kreweras complement block sizes") {
    CHECK(kreweras_block_sizes(NoncrossingPartition::zero(5)) == std::vector<std::size_t>{5});
    CHECK(kreweras_block_sizes(NoncrossingPartition::one(5)) == std::vector<std::size_t>{1, 1, 1, 1, 1});
    // |π| + |K(π)| = n + 1
    for (const auto& p : enumerate_nc(7)) {
        CHECK(p.block_count() + kreweras_block_sizes(p).size() == 8);
    }
}

TEST_CASE("evaluate_nested reproduces the nested formula") {
    NoncrossingPartition pi(5, Blocks{{1, 4}, {2, 3}, {5}});
    std::vector<std::string> ops{"a1", "a2", "a3", "a4", "a5"};
    auto block = [](const std::vector<std::string>& args) {
        std::string inner;
        for (const auto& a : args) inner += a;
        return "E(" + inner + ")";
    };
    auto mul = [](const std::string& a, const std::string& b) { return a + b; };
    CHECK(evaluate_nested(pi, std::span<const std::string>(ops), block, mul) == "E(a1E(a2a3)a4)E(a5)");
    CHECK(evaluate_nested(NoncrossingPartition::one(5), std::span<const std::string>(ops), block, mul) ==
          "E(a1a2a3a4a5)");
    CHECK(evaluate_nested(NoncrossingPartition::zero(5), std::span<const std::string>(ops), block, mul) ==
          "E(a1)E(a2)E(a3)E(a4)E(a5)");
    NoncrossingPartition deep(6, Blocks{{1, 6}, {2, 5}, {3}, {4}});
    std::vector<std::string> six{"a", "b", "c", "d", "e", "f"};
    CHECK(evaluate_nested(deep, std::span<const std::string>(six), block, mul) == "E(aE(bE(c)E(d)e)f)");
    CHECK_THROWS(evaluate_nested(pi, std::span<const std::string>(ops.data(), 4), block, mul));
}

TEST_CASE("evaluate_nested with commutative scalars is a product of block moments") {
    std::vector<long> values{2, 3, 5, 7, 11, 13};
    for (const auto& pi : enumerate_nc(6)) {
        // a linear scalar expectation: E(x) = 3x
        auto block = [](const std::vector<long>& args) {
            long p = 3;
            for (auto a : args) p *= a;
            return p;
        };
        auto nested = evaluate_nested(pi, std::span<const long>(values), block, std::multiplies<long>());
        long expected = 1;
        for (const auto& b : pi.blocks()) {
            long p = 3;
            for (auto i : b) p *= values[i - 1];
            expected *= p;
        }
        CHECK(nested == expected);
    }
}
