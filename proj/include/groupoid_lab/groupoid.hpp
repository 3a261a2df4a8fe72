#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "groupoid_lab/graph.hpp"
#include "groupoid_lab/integer.hpp"

namespace groupoid_lab {

/// Element of the graph groupoid: a vertex, a reduced path, or the empty
/// element. Paths cache their endpoints so no graph is needed to query them.
///
/// Ordering: Empty < vertices (by index) < paths by (length, word).
class GroupoidElement {
public:
    enum class Kind : std::uint8_t { Empty, Vertex, Path };

    GroupoidElement() = default;

    static GroupoidElement empty() { return {}; }
    static GroupoidElement vertex(VertexId v);
    /// `word` must be nonempty, admissible and free of (x, x^-1) pairs;
    /// use `reduce` for arbitrary words.
    static GroupoidElement reduced_path(EdgeWord word, VertexId source, VertexId target);

    Kind kind() const { return kind_; }
    bool is_empty() const { return kind_ == Kind::Empty; }
    bool is_vertex() const { return kind_ == Kind::Vertex; }
    bool is_path() const { return kind_ == Kind::Path; }

    /// s(a); throws std::logic_error on Empty.
    VertexId source() const;
    /// r(a); throws std::logic_error on Empty.
    VertexId target() const;

    /// Letters of a reduced path; empty span for vertices and Empty.
    std::span<const SignedEdge> word() const { return word_; }
    std::size_t length() const { return word_.size(); }

    friend bool operator==(const GroupoidElement&, const GroupoidElement&) = default;
    friend std::strong_ordering operator<=>(const GroupoidElement& a, const GroupoidElement& b);

private:
    Kind kind_ = Kind::Empty;
    VertexId source_ = 0;
    VertexId target_ = 0;
    EdgeWord word_;
};

struct GroupoidElementHash {
    std::size_t operator()(const GroupoidElement& a) const noexcept;
};

bool is_admissible(const ShadowedGraph& g, std::span<const SignedEdge> word);
/// Admissible and closed (first source equals last target).
bool is_loop(const ShadowedGraph& g, std::span<const SignedEdge> word);

/// Free reduction: non-admissible words map to Empty; otherwise adjacent
/// (x, x^-1) pairs are cancelled with a single stack pass. A fully cancelled
/// word yields the vertex at its source. The empty word yields Empty.
GroupoidElement reduce(const ShadowedGraph& g, std::span<const SignedEdge> word);

/// Partial groupoid product; Empty unless r(a) = s(b).
GroupoidElement concat(const ShadowedGraph& g, const GroupoidElement& a, const GroupoidElement& b);

GroupoidElement inverse(const GroupoidElement& a);
EdgeWord inverse(std::span<const SignedEdge> word);

/// Word of a groupoid element (empty for vertices).
inline EdgeWord word_of(const GroupoidElement& a) { return {a.word().begin(), a.word().end()}; }

/// Number of admissible words of length n (walks of length n in Ĝ).
Integer count_admissible_words(const ShadowedGraph& g, std::size_t n);

/// Visits the admissible length-n words in lexicographic signed-edge order.
/// The visitor returns false to stop early; the function returns false when
/// it was stopped.
using WordVisitor = std::function<bool(std::span<const SignedEdge>)>;
bool for_each_admissible_word(const ShadowedGraph& g, std::size_t n, const WordVisitor& visit);
/// Same as above, restricted to words starting with `first`.
bool for_each_admissible_word(const ShadowedGraph& g, std::size_t n, SignedEdge first, const WordVisitor& visit);
/// Admissible words with s = r.
bool for_each_loop_word(const ShadowedGraph& g, std::size_t n, const WordVisitor& visit);
/// Loop words whose letters all share a single base edge.
bool for_each_d_loop_word(const ShadowedGraph& g, std::size_t n, const WordVisitor& visit);

std::vector<EdgeWord> admissible_words(const ShadowedGraph& g, std::size_t n);
std::vector<EdgeWord> loop_words(const ShadowedGraph& g, std::size_t n);
std::vector<EdgeWord> d_loop_words(const ShadowedGraph& g, std::size_t n);

/// Base-edge support of a groupoid element, sorted. Orientation and
/// multiplicity are forgotten.
using Diagram = std::vector<EdgeIndex>;
Diagram diagram(const GroupoidElement& a);
/// (a != b^-1) and diagram(a) != diagram(b). Equal supports traversed in a
/// different order count as not distinct.
bool diagram_distinct(const GroupoidElement& a, const GroupoidElement& b);

}  // namespace groupoid_lab
