#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace groupoid_lab {

using VertexId = std::uint32_t;
using EdgeIndex = std::uint32_t;

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raw, unvalidated graph description as read from input.
struct GraphSpec {
    struct Edge {
        std::string id;
        std::string source;
        std::string target;
    };
    std::vector<std::string> vertices;
    std::vector<Edge> edges;
};

struct ValidationReport {
    std::vector<std::string> violations;

    bool valid() const { return violations.empty(); }
};

/// Lists every structural problem of `spec`: empty vertex set, duplicate ids,
/// dangling edges and disconnected components (weak connectivity, i.e.
/// connectivity of the shadowed graph).
ValidationReport validate_graph(const GraphSpec& spec);

struct Edge {
    std::string id;
    VertexId source;
    VertexId target;
};

/// Finite directed multigraph. Vertices and edges are indexed in sorted-id
/// order, so two loads of the same description produce identical indices.
/// Loops and parallel edges are allowed.
class DirectedGraph {
public:
    /// Throws GraphError on duplicate ids or dangling edges. Connectivity is
    /// not required here; see `load_valid`.
    explicit DirectedGraph(const GraphSpec& spec);

    /// Builds the graph and rejects anything `validate_graph` flags.
    static DirectedGraph load_valid(const GraphSpec& spec);

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    const std::string& vertex_name(VertexId v) const { return vertices_.at(v); }
    std::span<const std::string> vertex_names() const { return vertices_; }
    std::optional<VertexId> find_vertex(const std::string& name) const;
    VertexId vertex(const std::string& name) const;

    const Edge& edge(EdgeIndex e) const { return edges_.at(e); }
    std::span<const Edge> edges() const { return edges_; }
    std::optional<EdgeIndex> find_edge(const std::string& id) const;

    std::size_t out_degree(VertexId v) const;
    std::size_t in_degree(VertexId v) const;
    std::size_t degree(VertexId v) const { return out_degree(v) + in_degree(v); }

    /// Forward edges leaving `v`, in edge-index order.
    std::span<const EdgeIndex> out_edges(VertexId v) const { return out_.at(v); }

    bool is_connected() const;

    /// Description of this graph in sorted-id order.
    GraphSpec to_spec() const;

private:
    std::vector<std::string> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::vector<EdgeIndex>> out_;
    std::vector<std::size_t> in_degree_;
};

/// Largest raw out-degree over all vertices. Throws GraphError when the
/// graph has no edges.
std::size_t max_out_degree(const DirectedGraph& g);

/// An edge of the shadowed graph: a base edge or its reversed shadow.
struct SignedEdge {
    EdgeIndex edge = 0;
    bool inverse = false;

    constexpr SignedEdge reversed() const { return {edge, !inverse}; }
    /// Dense index 2*edge + inverse; also the canonical sort key.
    constexpr std::uint32_t key() const { return 2 * edge + (inverse ? 1u : 0u); }
    static constexpr SignedEdge from_key(std::uint32_t k) { return {k / 2, (k & 1u) != 0}; }

    friend constexpr bool operator==(SignedEdge, SignedEdge) = default;
    friend constexpr auto operator<=>(SignedEdge a, SignedEdge b) { return a.key() <=> b.key(); }
};

using EdgeWord = std::vector<SignedEdge>;

/// G together with its shadow G^-1. Signed edges are ordered by base edge
/// index with the forward orientation first.
class ShadowedGraph {
public:
    explicit ShadowedGraph(DirectedGraph g);

    const DirectedGraph& base() const { return graph_; }
    std::size_t vertex_count() const { return graph_.vertex_count(); }
    std::size_t signed_edge_count() const { return 2 * graph_.edge_count(); }

    VertexId source(SignedEdge e) const;
    VertexId target(SignedEdge e) const;
    bool is_loop_edge(SignedEdge e) const { return graph_.edge(e.edge).source == graph_.edge(e.edge).target; }

    /// All signed edges in canonical order.
    std::span<const SignedEdge> signed_edges() const { return signed_; }
    /// Signed edges leaving `v` in Ĝ, canonical order.
    std::span<const SignedEdge> out_edges(VertexId v) const { return out_.at(v); }

    std::size_t out_degree(VertexId v) const { return out_.at(v).size(); }
    std::size_t in_degree(VertexId v) const { return in_degree_.at(v); }
    std::size_t degree(VertexId v) const { return out_degree(v) + in_degree(v); }

    /// "e12:1" for forward edges, "~e12:1" for shadows.
    std::string name(SignedEdge e) const;
    std::optional<SignedEdge> parse_name(const std::string& name) const;

private:
    DirectedGraph graph_;
    std::vector<SignedEdge> signed_;
    std::vector<std::vector<SignedEdge>> out_;
    std::vector<std::size_t> in_degree_;
};

/// Builds Ĝ. Throws GraphError when `g` is not connected.
ShadowedGraph shadow(DirectedGraph g);

}  // namespace groupoid_lab
