#include "groupoid_lab/groupoid.hpp"

#include <algorithm>

#include <boost/container_hash/hash.hpp>

namespace groupoid_lab {

GroupoidElement GroupoidElement::vertex(VertexId v) {
    GroupoidElement a;
    a.kind_ = Kind::Vertex;
    a.source_ = a.target_ = v;
    return a;
}

GroupoidElement GroupoidElement::reduced_path(EdgeWord word, VertexId source, VertexId target) {
    if (word.empty()) throw std::logic_error("reduced_path: empty word");
    GroupoidElement a;
    a.kind_ = Kind::Path;
    a.source_ = source;
    a.target_ = target;
    a.word_ = std::move(word);
    return a;
}

VertexId GroupoidElement::source() const {
    if (is_empty()) throw std::logic_error("source of the empty element");
    return source_;
}

VertexId GroupoidElement::target() const {
    if (is_empty()) throw std::logic_error("target of the empty element");
    return target_;
}

std::strong_ordering operator<=>(const GroupoidElement& a, const GroupoidElement& b) {
    if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
    switch (a.kind_) {
        case GroupoidElement::Kind::Empty:
            return std::strong_ordering::equal;
        case GroupoidElement::Kind::Vertex:
            return a.source_ <=> b.source_;
        case GroupoidElement::Kind::Path:
            break;
    }
    if (auto c = a.word_.size() <=> b.word_.size(); c != 0) return c;
    return std::lexicographical_compare_three_way(a.word_.begin(), a.word_.end(), b.word_.begin(), b.word_.end());
}

std::size_t GroupoidElementHash::operator()(const GroupoidElement& a) const noexcept {
    std::size_t seed = static_cast<std::size_t>(a.kind());
    if (a.is_vertex()) boost::hash_combine(seed, a.source());
    for (auto e : a.word()) boost::hash_combine(seed, e.key());
    return seed;
}

bool is_admissible(const ShadowedGraph& g, std::span<const SignedEdge> word) {
    for (std::size_t i = 1; i < word.size(); ++i) {
        if (g.target(word[i - 1]) != g.source(word[i])) return false;
    }
    return true;
}

bool is_loop(const ShadowedGraph& g, std::span<const SignedEdge> word) {
    return !word.empty() && is_admissible(g, word) && g.source(word.front()) == g.target(word.back());
}

GroupoidElement reduce(const ShadowedGraph& g, std::span<const SignedEdge> word) {
    if (word.empty() || !is_admissible(g, word)) return GroupoidElement::empty();
    EdgeWord stack;
    stack.reserve(word.size());
    for (auto e : word) {
        if (!stack.empty() && stack.back() == e.reversed()) {
            stack.pop_back();
        } else {
            stack.push_back(e);
        }
    }
    VertexId s = g.source(word.front());
    if (stack.empty()) return GroupoidElement::vertex(s);
    VertexId r = g.target(stack.back());
    return GroupoidElement::reduced_path(std::move(stack), s, r);
}

GroupoidElement concat(const ShadowedGraph& g, const GroupoidElement& a, const GroupoidElement& b) {
    if (a.is_empty() || b.is_empty() || a.target() != b.source()) return GroupoidElement::empty();
    if (a.is_vertex()) return b;
    if (b.is_vertex()) return a;
    EdgeWord joined = word_of(a);
    joined.insert(joined.end(), b.word().begin(), b.word().end());
    return reduce(g, joined);
}

EdgeWord inverse(std::span<const SignedEdge> word) {
    EdgeWord out;
    out.reserve(word.size());
    for (auto it = word.rbegin(); it != word.rend(); ++it) out.push_back(it->reversed());
    return out;
}

GroupoidElement inverse(const GroupoidElement& a) {
    if (!a.is_path()) return a;
    return GroupoidElement::reduced_path(inverse(a.word()), a.target(), a.source());
}

Integer count_admissible_words(const ShadowedGraph& g, std::size_t n) {
    if (n == 0) return 0;
    // walks[v] = number of admissible words of the current length ending at v
    std::vector<Integer> walks(g.vertex_count(), 0);
    for (auto e : g.signed_edges()) walks[g.target(e)] += 1;
    for (std::size_t step = 1; step < n; ++step) {
        std::vector<Integer> next(g.vertex_count(), 0);
        for (auto e : g.signed_edges()) next[g.target(e)] += walks[g.source(e)];
        walks = std::move(next);
    }
    Integer total = 0;
    for (const auto& w : walks) total += w;
    return total;
}

namespace {

bool extend(const ShadowedGraph& g, std::size_t n, EdgeWord& prefix, const WordVisitor& visit) {
    if (prefix.size() == n) return visit(prefix);
    for (auto e : g.out_edges(g.target(prefix.back()))) {
        prefix.push_back(e);
        bool keep_going = extend(g, n, prefix, visit);
        prefix.pop_back();
        if (!keep_going) return false;
    }
    return true;
}

}  // namespace

bool for_each_admissible_word(const ShadowedGraph& g, std::size_t n, SignedEdge first, const WordVisitor& visit) {
    if (n == 0) throw std::invalid_argument("word length must be at least 1");
    EdgeWord prefix;
    prefix.reserve(n);
    prefix.push_back(first);
    return extend(g, n, prefix, visit);
}

bool for_each_admissible_word(const ShadowedGraph& g, std::size_t n, const WordVisitor& visit) {
    for (auto e : g.signed_edges()) {
        if (!for_each_admissible_word(g, n, e, visit)) return false;
    }
    return true;
}

bool for_each_loop_word(const ShadowedGraph& g, std::size_t n, const WordVisitor& visit) {
    return for_each_admissible_word(g, n, [&](std::span<const SignedEdge> w) {
        return g.source(w.front()) != g.target(w.back()) || visit(w);
    });
}

bool for_each_d_loop_word(const ShadowedGraph& g, std::size_t n, const WordVisitor& visit) {
    if (n == 0) throw std::invalid_argument("word length must be at least 1");
    if (n >= 64) throw BudgetExceeded("d_loop words: length too large");
    // Letters are drawn from {e, e^-1} for one base edge at a time.
    EdgeWord word(n);
    for (EdgeIndex e = 0; e < g.base().edge_count(); ++e) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            for (std::size_t i = 0; i < n; ++i) word[i] = SignedEdge{e, ((mask >> (n - 1 - i)) & 1u) != 0};
            if (is_loop(g, word) && !visit(word)) return false;
        }
    }
    return true;
}

namespace {

template <typename Walker>
std::vector<EdgeWord> collect(Walker&& walk) {
    std::vector<EdgeWord> out;
    walk([&](std::span<const SignedEdge> w) {
        out.emplace_back(w.begin(), w.end());
        return true;
    });
    return out;
}

}  // namespace

std::vector<EdgeWord> admissible_words(const ShadowedGraph& g, std::size_t n) {
    return collect([&](const WordVisitor& v) { return for_each_admissible_word(g, n, v); });
}

std::vector<EdgeWord> loop_words(const ShadowedGraph& g, std::size_t n) {
    return collect([&](const WordVisitor& v) { return for_each_loop_word(g, n, v); });
}

std::vector<EdgeWord> d_loop_words(const ShadowedGraph& g, std::size_t n) {
    return collect([&](const WordVisitor& v) { return for_each_d_loop_word(g, n, v); });
}

Diagram diagram(const GroupoidElement& a) {
    if (a.is_empty()) throw std::invalid_argument("diagram of the empty element");
    Diagram d;
    for (auto e : a.word()) d.push_back(e.edge);
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    return d;
}

bool diagram_distinct(const GroupoidElement& a, const GroupoidElement& b) {
    if (a.is_empty() || b.is_empty()) throw std::invalid_argument("diagram_distinct: empty operand");
    return a != inverse(b) && diagram(a) != diagram(b);
}

}  // namespace groupoid_lab
