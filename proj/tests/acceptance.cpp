// Acceptance suite: one PASS/FAIL line per criterion, exact arithmetic throughout.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "groupoid_lab/automaton.hpp"
#include "groupoid_lab/moments.hpp"
#include "groupoid_lab/ncpartition.hpp"
#include "groupoid_lab/operators.hpp"
#include "test_support.hpp"

using namespace groupoid_lab;
using namespace test_support;
using json = nlohmann::json;

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run_cli(const std::string& args, const std::string& env = "") {
    std::string cmd = env + (env.empty() ? "" : " ") + GROUPOID_LAB_CLI + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

// Collects failed sub-checks for one criterion.
struct Check {
    std::vector<std::string> failures;
    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
};

Integer binomial(unsigned n, unsigned k) {
    Integer r = 1;
    for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

DiagonalElement constant(std::size_t vertices, long value) {
    return DiagonalElement(std::vector<Integer>(vertices, Integer(value)));
}

void criterion_6_2(Check& c) {
    auto noloop = run_cli("moments --graph " + fixture("three-vertex-noloop.json") + " --n 2 --json");
    c.expect(noloop.status == 0, "noloop exit status");
    auto j = json::parse(noloop.out);
    c.expect(j["result"] == json{{"v1", "3"}, {"v2", "2"}, {"v3", "1"}}, "noloop tallies " + j["result"].dump());

    auto full = run_cli("moments --graph " + fixture("three-vertex.json") + " --n 2 --json --verify");
    c.expect(full.status == 0, "full exit status");
    auto f = json::parse(full.out);
    auto oracle = run_cli("oracle --graph " + fixture("three-vertex.json") + " --n 2 --json");
    c.expect(f["result"] == json::parse(oracle.out)["result"], "full moments differ from oracle");
    c.expect(f["result"] == json{{"v1", "3"}, {"v2", "4"}, {"v3", "1"}}, "full tallies " + f["result"].dump());
    bool noted = false;
    for (const auto& d : f["diagnostics"]) {
        if (d["kind"] == "loop_edges" && d["detail"] == json{{"v1", "3"}, {"v2", "2"}, {"v3", "1"}}) noted = true;
    }
    c.expect(noted, "loop-edge discrepancy note missing");
}

void criterion_oracle(Check& c) {
    for (const auto& name : core_fixtures()) {
        auto lg = load_fixture(name);
        for (std::size_t n = 1; n <= 6; ++n) {
            c.expect(moment(lg, n).value == oracle_expectation_power(lg, n, n), name + " n=" + std::to_string(n));
        }
    }
}

void criterion_free_group(Check& c) {
    auto one = load_fixture("one-vertex-1-loop.json");
    for (unsigned n = 1; n <= 5; ++n) {
        c.expect(moment(one, 2 * n).value == DiagonalElement(std::vector<Integer>{binomial(2 * n, n)}),
                 "one-loop n=" + std::to_string(2 * n));
    }
    auto two = load_fixture("one-vertex-2-loop.json");
    c.expect(moment(two, 2).value == constant(1, 4), "two-loop m2");
    c.expect(moment(two, 4).value == constant(1, 28), "two-loop m4");
    auto balance = w_m_set(two, 4, WordSetMode::Balance, false);
    c.expect(balance.word_count == 36 && count_axis_paths(2, 4) == 36, "balance count 36");

    auto r = run_cli("moments --graph " + fixture("one-vertex-2-loop.json") + " --n 4 --json");
    auto j = json::parse(r.out);
    bool both = false;
    for (const auto& d : j["diagnostics"]) {
        if (d["kind"] == "mode_comparison" && d["detail"]["tallies"]["v"] == "36") both = true;
    }
    c.expect(j["result"]["v"] == "28" && both, "cli reports 28 and 36");
}

void criterion_cumulants(Check& c) {
    auto one = load_fixture("one-vertex-1-loop.json");
    c.expect(cumulant_direct(one, 2) == constant(1, 2), "k2");
    c.expect(cumulant_direct(one, 4) == constant(1, -2), "k4");
    for (const auto& name : core_fixtures()) {
        auto lg = load_fixture(name);
        for (std::size_t n : {1, 3, 5}) {
            c.expect(moment(lg, n).value.is_zero(), name + " odd moment " + std::to_string(n));
            c.expect(cumulant_direct(lg, n).is_zero(), name + " odd cumulant " + std::to_string(n));
        }
        for (std::size_t n = 1; n <= 6; ++n) {
            c.expect(moment_from_cumulants(lg, n) == moment(lg, n).value, name + " inversion n=" + std::to_string(n));
        }
    }
}

void criterion_nc(Check& c) {
    for (std::size_t n = 1; n <= 8; ++n) {
        auto parts = enumerate_nc(n);
        auto cat = binomial(2 * n, n) / (n + 1);
        c.expect(Integer(parts.size()) == cat, "|NC(" + std::to_string(n) + ")|");
        auto c_prev = binomial(2 * (n - 1), n - 1) / n;
        Integer sign = (n % 2 == 1) ? 1 : -1;
        c.expect(moebius(NoncrossingPartition::zero(n)) == sign * c_prev, "mu(0,1) n=" + std::to_string(n));
        if (n >= 2) {
            Integer sum = 0;
            for (const auto& p : parts) sum += moebius(p);
            c.expect(sum == 0, "mu row sum n=" + std::to_string(n));
        }
    }
    NoncrossingPartition pi(5, {{1, 4}, {2, 3}, {5}});
    std::vector<std::string> ops{"a1", "a2", "a3", "a4", "a5"};
    auto s = evaluate_nested<std::string>(
        pi, ops,
        [](const std::vector<std::string>& xs) {
            std::string in;
            for (const auto& x : xs) in += x;
            return "E(" + in + ")";
        },
        [](const std::string& a, const std::string& b) { return a + b; });
    c.expect(s == "E(a1E(a2a3)a4)E(a5)", "nested formula " + s);
}

void criterion_freeness(Check& c) {
    auto lg = load_fixture("one-vertex-2-loop.json");
    auto rep = check_freeness(lg, 1, 2, 4);
    c.expect(rep.free_to_order(), "nonzero mixed cumulant");
    c.expect(rep.tuples_checked == 280, "mixed tuple count " + std::to_string(rep.tuples_checked));
}

void criterion_fractaloid(Check& c) {
    auto verdict = [&](const std::string& name, bool expected) {
        auto lg = load_fixture(name);
        GraphAutomaton a(lg);
        auto v = a.is_fractaloid(4);
        c.expect(v.fractaloid == expected && v.depth == 4, name + " verdict");
        c.expect(expected == !v.witness.has_value(), name + " witness");
        for (VertexId root = 0; root < lg.graph().vertex_count(); ++root) {
            auto t = a.build_tree(root, 4);
            std::size_t deepest = 0;
            for (const auto& node : t.nodes) deepest = std::max(deepest, node.depth);
            c.expect(deepest == 4, name + " tree depth");
        }
    };
    verdict("circulant-3.json", true);
    verdict("one-vertex-1-loop.json", true);
    verdict("one-vertex-2-loop.json", true);
    verdict("one-vertex-3-loop.json", true);
    verdict("three-vertex.json", false);
    verdict("single-edge.json", false);
}

bool columns_vanish(const SparseOperator& m, const std::function<bool(std::size_t)>& keep) {
    for (Eigen::Index col = 0; col < m.outerSize(); ++col) {
        if (!keep(static_cast<std::size_t>(col))) continue;
        for (SparseOperator::InnerIterator it(m, col); it; ++it) {
            if (it.value() != 0) return false;
        }
    }
    return true;
}

void criterion_operators(Check& c) {
    constexpr std::size_t L = 4;
    for (const auto& name : core_fixtures()) {
        auto lg = load_fixture(name);
        const auto& g = lg.graph();
        auto basis = build_basis(g, L);
        for (Label k = 1; k <= lg.max_label(); ++k) {
            SparseOperator t = labeling_operator(lg, k, basis).matrix;
            SparseOperator adj = labeling_operator(lg, -k, basis).matrix;
            c.expect(SparseOperator(SparseOperator(t.transpose()) - adj).norm() == 0, name + " T_k adjoint");
        }
        SparseOperator tg = labeling_sum(lg, basis).matrix;
        c.expect(SparseOperator(SparseOperator(tg.transpose()) - tg).norm() == 0, name + " T_G symmetric");
        for (const auto& w : basis.elements()) {
            if (!w.is_path() || w.length() > 1) continue;
            SparseOperator r = right_mult(g, w, basis).matrix;
            SparseOperator rt = r.transpose();
            SparseOperator diff = SparseOperator(r * rt * r) - r;
            c.expect(columns_vanish(diff, [&](std::size_t col) { return basis[col].length() + 3 * w.length() <= L; }),
                     name + " partial isometry");
        }
    }
}

void criterion_lattice(Check& c) {
    for (unsigned n = 1; n <= 6; ++n) c.expect(count_axis_paths(1, 2 * n) == binomial(2 * n, n), "central column");
    for (Label big_n = 1; big_n <= 3; ++big_n) {
        for (std::size_t k = 1; k <= 8; ++k) {
            // brute: label words over {±1..±N} whose per-label signed counts all vanish
            std::uint64_t brute = 0, total = 1;
            for (std::size_t i = 0; i < k; ++i) total *= 2 * static_cast<std::uint64_t>(big_n);
            std::vector<int> counts(big_n + 1);
            for (std::uint64_t code = 0; code < total; ++code) {
                std::fill(counts.begin(), counts.end(), 0);
                auto x = code;
                for (std::size_t i = 0; i < k; ++i) {
                    auto d = static_cast<int>(x % (2 * big_n));
                    x /= 2 * big_n;
                    counts[d / 2 + 1] += (d % 2 == 0) ? 1 : -1;
                }
                bool zero = true;
                for (int v : counts) zero = zero && v == 0;
                brute += zero;
            }
            c.expect(count_axis_paths(big_n, k) == brute,
                     "N=" + std::to_string(big_n) + " k=" + std::to_string(k));
            if (k % 2 == 1) c.expect(count_axis_paths(big_n, k) == 0, "odd length");
        }
    }
}

EdgeWord random_walk(const ShadowedGraph& g, std::size_t length, std::mt19937& rng) {
    auto all = g.signed_edges();
    EdgeWord w{all[rng() % all.size()]};
    while (w.size() < length) {
        auto out = g.out_edges(g.target(w.back()));
        w.push_back(out[rng() % out.size()]);
    }
    return w;
}

EdgeWord random_order_cancel(EdgeWord w, std::mt19937& rng) {
    while (true) {
        std::vector<std::size_t> spots;
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            if (w[i + 1] == w[i].reversed()) spots.push_back(i);
        }
        if (spots.empty()) return w;
        auto i = static_cast<std::ptrdiff_t>(spots[rng() % spots.size()]);
        w.erase(w.begin() + i, w.begin() + i + 2);
    }
}

void criterion_properties(Check& c) {
    std::mt19937 rng(4242);
    for (const auto& name : core_fixtures()) {
        auto lg = load_fixture(name);
        const auto& g = lg.graph();
        std::size_t bad_reduce = 0, bad_assoc = 0;
        for (int trial = 0; trial < 10'000; ++trial) {
            auto w = random_walk(g, 1 + rng() % 12, rng);
            auto r = reduce(g, w);
            auto other = random_order_cancel(w, rng);
            auto expected = other.empty() ? GroupoidElement::vertex(g.source(w.front())) : reduce(g, other);
            if (r != expected || (r.is_path() && (word_of(r) != other || reduce(g, word_of(r)) != r))) ++bad_reduce;

            auto x = reduce(g, random_walk(g, 1 + rng() % 4, rng));
            auto y = reduce(g, random_walk(g, 1 + rng() % 4, rng));
            auto z = reduce(g, random_walk(g, 1 + rng() % 4, rng));
            if (concat(g, concat(g, x, y), z) != concat(g, x, concat(g, y, z))) ++bad_assoc;
        }
        c.expect(bad_reduce == 0, name + " reduce");
        c.expect(bad_assoc == 0, name + " associativity");
    }
    for (const std::string args : {"moments --graph " + fixture("three-vertex.json") + " --n 6 --json --words",
                                   "cumulants --graph " + fixture("one-vertex-2-loop.json") + " --n 4 --formula both --json",
                                   "fractaloid --graph " + fixture("three-vertex.json") + " --depth 4 --json",
                                   "tree --graph " + fixture("circulant-3.json") + " --depth 4"}) {
        auto a = run_cli(args);
        auto b = run_cli(args);
        auto serial = run_cli(args, "GROUPOID_LAB_THREADS=1");
        c.expect(a.status == 0 && !a.out.empty(), "run " + args);
        c.expect(a.out == b.out && a.out == serial.out, "byte-identical " + args);
    }
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
        {"three-vertex example moments", criterion_6_2},
        {"oracle equivalence", criterion_oracle},
        {"free-group moments", criterion_free_group},
        {"cumulants", criterion_cumulants},
        {"noncrossing partition machinery", criterion_nc},
        {"freeness", criterion_freeness},
        {"fractaloid verdicts", criterion_fractaloid},
        {"operator identities", criterion_operators},
        {"lattice counts", criterion_lattice},
        {"property suites", criterion_properties},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        try {
            criteria[i].second(c);
        } catch (const std::exception& e) {
            c.failures.push_back(std::string("exception: ") + e.what());
        }
        bool ok = c.failures.empty();
        failed += !ok;
        std::cout << (ok ? "PASS " : "FAIL ") << i + 1 << ". " << criteria[i].first;
        if (!ok) {
            std::cout << " (";
            for (std::size_t k = 0; k < c.failures.size() && k < 5; ++k) std::cout << (k ? "; " : "") << c.failures[k];
            std::cout << ")";
        }
        std::cout << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
