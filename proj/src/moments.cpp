#include "groupoid_lab/moments.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <mutex>

#include "groupoid_lab/parallel.hpp"

namespace groupoid_lab {

namespace {

// Depth-first walk over admissible words that maintains the free reduction
// of the current prefix incrementally.
class ReducingWalker {
public:
    using Allow = std::function<bool(std::size_t position, SignedEdge e)>;
    // Receives the full word and whether it reduces to a vertex; returns
    // false to stop.
    using Visit = std::function<bool(std::span<const SignedEdge> word, bool reduces_to_vertex)>;

    ReducingWalker(const ShadowedGraph& g, std::size_t n, Allow allow) : g_(g), n_(n), allow_(std::move(allow)) {
        word_.reserve(n);
        stack_.reserve(n);
    }

    bool run(SignedEdge first, const Visit& visit) {
        if (allow_ && !allow_(0, first)) return true;
        step(first);
        bool keep_going = descend(visit);
        undo();
        return keep_going;
    }

private:
    void step(SignedEdge e) {
        word_.push_back(e);
        if (!stack_.empty() && stack_.back() == e.reversed()) {
            popped_.push_back(stack_.back());
            stack_.pop_back();
            cancelled_.push_back(true);
        } else {
            stack_.push_back(e);
            cancelled_.push_back(false);
        }
    }

    void undo() {
        word_.pop_back();
        if (cancelled_.back()) {
            stack_.push_back(popped_.back());
            popped_.pop_back();
        } else {
            stack_.pop_back();
        }
        cancelled_.pop_back();
    }

    bool descend(const Visit& visit) {
        if (word_.size() == n_) return visit(word_, stack_.empty());
        // A prefix whose reduction is longer than the remaining length can
        // still be visited (balance mode needs every word), so no pruning.
        for (auto e : g_.out_edges(g_.target(word_.back()))) {
            if (allow_ && !allow_(word_.size(), e)) continue;
            step(e);
            bool keep_going = descend(visit);
            undo();
            if (!keep_going) return false;
        }
        return true;
    }

    const ShadowedGraph& g_;
    std::size_t n_;
    Allow allow_;
    EdgeWord word_;
    EdgeWord stack_;
    EdgeWord popped_;
    std::vector<bool> cancelled_;
};

// Tally of vertex-reducing words, keyed by source vertex.
MomentResult tally_reducing_words(const ShadowedGraph& g, std::size_t n, const ReducingWalker::Allow& allow,
                                  std::uint64_t max_words) {
    if (n == 0) throw std::invalid_argument("moment order must be at least 1");
    MomentResult result{DiagonalElement(g.vertex_count()), false};
    auto letters = g.signed_edges();

    if (count_admissible_words(g, n) <= max_words) {
        std::vector<DiagonalElement> partial(letters.size(), DiagonalElement(g.vertex_count()));
        parallel_for(letters.size(), [&](std::size_t i) {
            ReducingWalker walker(g, n, allow);
            walker.run(letters[i], [&](std::span<const SignedEdge> w, bool vertex) {
                if (vertex) partial[i][g.source(w.front())] += 1;
                return true;
            });
        });
        for (const auto& p : partial) result.value += p;
        return result;
    }

    std::uint64_t visited = 0;
    for (auto first : letters) {
        ReducingWalker walker(g, n, allow);
        bool finished = walker.run(first, [&](std::span<const SignedEdge> w, bool vertex) {
            if (visited++ >= max_words) return false;
            if (vertex) result.value[g.source(w.front())] += 1;
            return true;
        });
        if (!finished) {
            result.truncated = true;
            break;
        }
    }
    return result;
}

struct NcEntry {
    std::vector<NoncrossingPartition> partitions;
    std::vector<Integer> moebius;
};

const NcEntry& nc_with_moebius(std::size_t n, std::size_t nc_budget) {
    static std::mutex mutex;
    static std::map<std::size_t, NcEntry> cache;
    if (n > nc_budget) throw BudgetExceeded("NC(" + std::to_string(n) + ") exceeds budget " + std::to_string(nc_budget));
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) {
        NcEntry entry;
        entry.partitions = enumerate_nc(n, std::max(n, nc_budget));
        for (const auto& pi : entry.partitions) entry.moebius.push_back(moebius(pi));
        it = cache.emplace(n, std::move(entry)).first;
    }
    return it->second;
}

OperatorSum product(const ShadowedGraph& g, std::span<const OperatorSum> factors) {
    OperatorSum out = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) out = multiply(g, out, factors[i]);
    return out;
}

OperatorSum edge_sum(const ShadowedGraph& g, const std::vector<SignedEdge>& edges) {
    OperatorSum out;
    for (auto e : edges) out.add(GroupoidElement::reduced_path({e}, g.source(e), g.target(e)), 1);
    return out;
}

void check_label(const LabeledGraph& lg, Label k) {
    if (k == 0 || k > lg.max_label() || -k > lg.max_label()) {
        throw std::out_of_range("label index " + std::to_string(k) + " outside ±1..±" + std::to_string(lg.max_label()));
    }
}

}  // namespace

const char* to_string(WordSetMode mode) {
    return mode == WordSetMode::Reduction ? "reduction" : "balance";
}

DiagonalElement expectation_of_word(const ShadowedGraph& g, std::span<const SignedEdge> word) {
    auto reduced = reduce(g, word);
    if (reduced.is_vertex()) return DiagonalElement::unit(g.vertex_count(), reduced.source());
    return DiagonalElement::zero(g.vertex_count());
}

WordSetReport w_m_set(const LabeledGraph& lg, std::size_t n, WordSetMode mode, bool keep_words,
                      std::uint64_t max_words) {
    if (n == 0) throw std::invalid_argument("word length must be at least 1");
    const auto& g = lg.graph();
    WordSetReport report;
    report.n = n;
    report.mode = mode;
    report.tallies = DiagonalElement(g.vertex_count());

    std::uint64_t visited = 0;
    for (auto first : g.signed_edges()) {
        ReducingWalker walker(g, n, nullptr);
        bool finished = walker.run(first, [&](std::span<const SignedEdge> w, bool vertex) {
            if (visited++ >= max_words) return false;
            bool keep = false;
            if (mode == WordSetMode::Reduction) {
                keep = vertex;
            } else if (g.source(w.front()) == g.target(w.back())) {
                std::vector<Label> labels;
                for (auto e : w) labels.push_back(lg.label(e));
                keep = theta(labels).is_zero();
            }
            if (keep) {
                report.tallies[g.source(w.front())] += 1;
                report.word_count += 1;
                if (keep_words) report.words.emplace_back(w.begin(), w.end());
            }
            return true;
        });
        if (!finished) {
            report.truncated = true;
            break;
        }
    }
    return report;
}

MomentResult moment(const LabeledGraph& lg, std::size_t n, std::uint64_t max_words) {
    return tally_reducing_words(lg.graph(), n, nullptr, max_words);
}

MomentResult moment_avoiding_loop_edges(const LabeledGraph& lg, std::size_t n, std::uint64_t max_words) {
    const auto& g = lg.graph();
    return tally_reducing_words(g, n, [&](std::size_t, SignedEdge e) { return !g.is_loop_edge(e); }, max_words);
}

DiagonalElement moment_dp(const LabeledGraph& lg, std::size_t n) {
    if (n == 0) throw std::invalid_argument("moment order must be at least 1");
    const auto& g = lg.graph();
    DiagonalElement out(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        // reduced suffix -> number of words reaching it
        std::map<EdgeWord, Integer> states{{EdgeWord{}, Integer(1)}};
        for (std::size_t step = 0; step < n; ++step) {
            const std::size_t remaining = n - step - 1;
            std::map<EdgeWord, Integer> next;
            for (const auto& [reduced, count] : states) {
                VertexId at = reduced.empty() ? v : g.target(reduced.back());
                for (auto e : g.out_edges(at)) {
                    EdgeWord moved = reduced;
                    if (!moved.empty() && moved.back() == e.reversed()) {
                        moved.pop_back();
                    } else {
                        moved.push_back(e);
                    }
                    if (moved.size() > remaining) continue;  // cannot cancel back to v
                    next[std::move(moved)] += count;
                }
            }
            states = std::move(next);
        }
        if (auto it = states.find(EdgeWord{}); it != states.end()) out[v] = it->second;
    }
    return out;
}

DiagonalElement joint_moment(const LabeledGraph& lg, std::span<const Label> indices) {
    if (indices.empty()) throw std::invalid_argument("joint moment needs at least one index");
    for (auto k : indices) check_label(lg, k);
    const auto n = indices.size();
    const auto& g = lg.graph();
    // Path position p carries operator index n-1-p.
    auto allow = [&](std::size_t position, SignedEdge e) { return lg.label(e) == indices[n - 1 - position]; };
    return tally_reducing_words(g, n, allow, std::numeric_limits<std::uint64_t>::max()).value;
}

OperatorSum labeling_formal(const LabeledGraph& lg, Label k) {
    check_label(lg, k);
    return edge_sum(lg.graph(), lg.edges_with_label(k));
}

OperatorSum labeling_sum_formal(const LabeledGraph& lg) {
    const auto& all = lg.graph().signed_edges();
    return edge_sum(lg.graph(), std::vector<SignedEdge>(all.begin(), all.end()));
}

DiagonalElement partitioned_expectation(const ShadowedGraph& g, const NoncrossingPartition& pi,
                                        std::span<const OperatorSum> args) {
    auto block = [&](const std::vector<OperatorSum>& operands) {
        return OperatorSum::embed(expectation(product(g, operands), g.vertex_count()));
    };
    auto mul = [&](const OperatorSum& a, const OperatorSum& b) { return multiply(g, a, b); };
    return expectation(evaluate_nested(pi, args, block, mul), g.vertex_count());
}

DiagonalElement cumulant(const ShadowedGraph& g, std::span<const OperatorSum> args, std::size_t nc_budget) {
    if (args.empty()) throw std::invalid_argument("cumulant needs at least one argument");
    const auto& nc = nc_with_moebius(args.size(), nc_budget);
    DiagonalElement out(g.vertex_count());
    for (std::size_t i = 0; i < nc.partitions.size(); ++i) {
        out += nc.moebius[i] * partitioned_expectation(g, nc.partitions[i], args);
    }
    return out;
}

DiagonalElement cumulant_direct(const LabeledGraph& lg, std::size_t n, std::size_t nc_budget) {
    if (n == 0) throw std::invalid_argument("cumulant order must be at least 1");
    std::vector<OperatorSum> args(n, labeling_sum_formal(lg));
    return cumulant(lg.graph(), args, nc_budget);
}

DiagonalElement joint_cumulant(const LabeledGraph& lg, std::span<const Label> indices, std::size_t nc_budget) {
    if (indices.empty()) throw std::invalid_argument("joint cumulant needs at least one index");
    std::vector<OperatorSum> args;
    for (auto k : indices) args.push_back(labeling_formal(lg, k));
    return cumulant(lg.graph(), args, nc_budget);
}

Integer mu_w(const LabeledGraph& lg, std::span<const SignedEdge> path) {
    const auto& g = lg.graph();
    if (path.empty() || !is_admissible(g, path)) throw std::invalid_argument("mu_w: word is not admissible");
    auto target = expectation_of_word(g, path);
    if (target.is_zero()) return 0;  // empty qualification set

    // Operators in product order are R_{e1}, ..., R_{en} for w = e_n···e_1.
    std::vector<OperatorSum> ops;
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
        ops.push_back(OperatorSum::of(GroupoidElement::reduced_path({*it}, g.source(*it), g.target(*it))));
    }
    const auto& nc = nc_with_moebius(path.size(), std::max(path.size(), kDefaultNcBudget));
    Integer total = 0;
    for (std::size_t i = 0; i < nc.partitions.size(); ++i) {
        if (partitioned_expectation(g, nc.partitions[i], ops) == target) total += nc.moebius[i];
    }
    return total;
}

DiagonalElement cumulant_via_mu(const LabeledGraph& lg, std::size_t n, std::size_t nc_budget) {
    const auto& g = lg.graph();
    if (n > nc_budget) throw BudgetExceeded("cumulant order exceeds NC budget");
    auto words = w_m_set(lg, n).words;
    DiagonalElement out(g.vertex_count());
    for (const auto& w : words) out[g.source(w.front())] += mu_w(lg, w);
    return out;
}

CumulantComparison cumulant_via_wc(const LabeledGraph& lg, std::size_t n, std::size_t nc_budget) {
    const auto& g = lg.graph();
    if (n == 0) throw std::invalid_argument("cumulant order must be at least 1");
    if (n > nc_budget) throw BudgetExceeded("cumulant order exceeds NC budget");
    CumulantComparison cmp;
    cmp.via_wc = DiagonalElement(g.vertex_count());
    for_each_d_loop_word(g, n, [&](std::span<const SignedEdge> w) {
        if (reduce(g, w).is_vertex()) {
            cmp.via_wc[g.source(w.front())] += mu_w(lg, w);
            ++cmp.word_count;
        }
        return true;
    });
    cmp.direct = cumulant_direct(lg, n, nc_budget);
    cmp.difference = cmp.via_wc - cmp.direct;
    cmp.agrees = cmp.difference.is_zero();
    return cmp;
}

DiagonalElement moment_from_cumulants(const LabeledGraph& lg, std::size_t n, std::size_t nc_budget) {
    const auto& g = lg.graph();
    const auto& nc = nc_with_moebius(n, nc_budget);
    std::vector<OperatorSum> args(n, labeling_sum_formal(lg));
    auto block = [&](const std::vector<OperatorSum>& operands) {
        return OperatorSum::embed(cumulant(g, operands, nc_budget));
    };
    auto mul = [&](const OperatorSum& a, const OperatorSum& b) { return multiply(g, a, b); };
    DiagonalElement out(g.vertex_count());
    for (const auto& pi : nc.partitions) {
        out += expectation(evaluate_nested(pi, std::span<const OperatorSum>(args), block, mul), g.vertex_count());
    }
    return out;
}

FreenessReport check_freeness(const LabeledGraph& lg, Label family_a, Label family_b, std::size_t max_order,
                              std::size_t nc_budget) {
    if (family_a == family_b) throw std::invalid_argument("freeness check needs two distinct families");
    for (auto k : {family_a, family_b}) {
        if (k < 1 || k > lg.max_label()) throw std::out_of_range("family index outside 1..N");
    }
    FreenessReport report;
    report.family_a = family_a;
    report.family_b = family_b;
    report.max_order = max_order;

    const std::vector<Label> letters{family_a, -family_a, family_b, -family_b};
    const auto& g = lg.graph();
    for (std::size_t order = 2; order <= max_order; ++order) {
        std::vector<std::size_t> digits(order, 0);
        while (true) {
            std::vector<Label> indices;
            bool has_a = false;
            bool has_b = false;
            for (auto d : digits) {
                indices.push_back(letters[d]);
                (d < 2 ? has_a : has_b) = true;
            }
            if (has_a && has_b) {
                auto k = joint_cumulant(lg, indices, nc_budget);
                ++report.tuples_checked;
                auto m = k.max_abs();
                if (m > report.max_abs_coefficient) report.max_abs_coefficient = m;
                if (!k.is_zero() && !report.first_nonzero) report.first_nonzero = indices;
            }
            std::size_t pos = order;
            while (pos > 0 && ++digits[pos - 1] == letters.size()) digits[--pos] = 0;
            if (pos == 0) break;
        }
    }

    report.diagram_distinct = true;
    for (auto x : {family_a, -family_a}) {
        for (auto y : {family_b, -family_b}) {
            for (auto e : lg.edges_with_label(x)) {
                for (auto f : lg.edges_with_label(y)) {
                    auto a = GroupoidElement::reduced_path({e}, g.source(e), g.target(e));
                    auto b = GroupoidElement::reduced_path({f}, g.source(f), g.target(f));
                    if (!diagram_distinct(a, b)) report.diagram_distinct = false;
                }
            }
        }
    }
    return report;
}

}  // namespace groupoid_lab
