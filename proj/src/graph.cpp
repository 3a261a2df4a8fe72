#include "groupoid_lab/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace groupoid_lab {

namespace {

// Union-find over vertex positions; used for weak connectivity.
class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace

ValidationReport validate_graph(const GraphSpec& spec) {
    ValidationReport report;
    if (spec.vertices.empty()) {
        report.violations.emplace_back("empty vertex set");
    }

    std::map<std::string, std::size_t> position;
    for (const auto& v : spec.vertices) {
        if (!position.emplace(v, position.size()).second) {
            report.violations.push_back("duplicate vertex id '" + v + "'");
        }
    }
    std::set<std::string> edge_ids;
    DisjointSets components(position.size());
    for (const auto& e : spec.edges) {
        if (!edge_ids.insert(e.id).second) {
            report.violations.push_back("duplicate edge id '" + e.id + "'");
        }
        auto s = position.find(e.source);
        auto t = position.find(e.target);
        if (s == position.end() || t == position.end()) {
            report.violations.push_back("dangling edge '" + e.id + "' (" + e.source + " -> " + e.target + ")");
            continue;
        }
        components.unite(s->second, t->second);
    }

    std::set<std::size_t> roots;
    for (std::size_t i = 0; i < position.size(); ++i) roots.insert(components.find(i));
    if (roots.size() > 1) {
        report.violations.push_back("disconnected: " + std::to_string(roots.size()) + " components");
    }
    return report;
}

DirectedGraph::DirectedGraph(const GraphSpec& spec) : vertices_(spec.vertices) {
    std::sort(vertices_.begin(), vertices_.end());
    if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end()) {
        throw GraphError("duplicate vertex id");
    }

    std::vector<GraphSpec::Edge> sorted = spec.edges;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i].id == sorted[i - 1].id) throw GraphError("duplicate edge id '" + sorted[i].id + "'");
    }

    out_.resize(vertices_.size());
    in_degree_.assign(vertices_.size(), 0);
    edges_.reserve(sorted.size());
    for (const auto& e : sorted) {
        auto s = find_vertex(e.source);
        auto t = find_vertex(e.target);
        if (!s || !t) throw GraphError("dangling edge '" + e.id + "'");
        auto index = static_cast<EdgeIndex>(edges_.size());
        edges_.push_back({e.id, *s, *t});
        out_[*s].push_back(index);
        ++in_degree_[*t];
    }
}

DirectedGraph DirectedGraph::load_valid(const GraphSpec& spec) {
    auto report = validate_graph(spec);
    if (!report.valid()) {
        std::string message = "invalid graph:";
        for (const auto& v : report.violations) message += " " + v + ";";
        throw GraphError(message);
    }
    return DirectedGraph(spec);
}

std::optional<VertexId> DirectedGraph::find_vertex(const std::string& name) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), name);
    if (it == vertices_.end() || *it != name) return std::nullopt;
    return static_cast<VertexId>(it - vertices_.begin());
}

VertexId DirectedGraph::vertex(const std::string& name) const {
    auto v = find_vertex(name);
    if (!v) throw GraphError("unknown vertex '" + name + "'");
    return *v;
}

std::optional<EdgeIndex> DirectedGraph::find_edge(const std::string& id) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), id,
                               [](const Edge& e, const std::string& key) { return e.id < key; });
    if (it == edges_.end() || it->id != id) return std::nullopt;
    return static_cast<EdgeIndex>(it - edges_.begin());
}

std::size_t DirectedGraph::out_degree(VertexId v) const {
    if (v >= vertices_.size()) throw GraphError("unknown vertex index");
    return out_[v].size();
}

std::size_t DirectedGraph::in_degree(VertexId v) const {
    if (v >= vertices_.size()) throw GraphError("unknown vertex index");
    return in_degree_[v];
}

bool DirectedGraph::is_connected() const {
    DisjointSets components(vertices_.size());
    for (const auto& e : edges_) components.unite(e.source, e.target);
    for (std::size_t i = 1; i < vertices_.size(); ++i) {
        if (components.find(i) != components.find(0)) return false;
    }
    return !vertices_.empty();
}

GraphSpec DirectedGraph::to_spec() const {
    GraphSpec spec;
    spec.vertices = vertices_;
    for (const auto& e : edges_) spec.edges.push_back({e.id, vertices_[e.source], vertices_[e.target]});
    return spec;
}

std::size_t max_out_degree(const DirectedGraph& g) {
    if (g.edge_count() == 0) throw GraphError("graph has no edges; no labeling set exists");
    std::size_t best = 0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) best = std::max(best, g.out_degree(v));
    return best;
}

ShadowedGraph::ShadowedGraph(DirectedGraph g) : graph_(std::move(g)) {
    out_.resize(graph_.vertex_count());
    in_degree_.assign(graph_.vertex_count(), 0);
    for (EdgeIndex e = 0; e < graph_.edge_count(); ++e) {
        for (bool inv : {false, true}) {
            SignedEdge se{e, inv};
            signed_.push_back(se);
            out_[source(se)].push_back(se);
            ++in_degree_[target(se)];
        }
    }
}

VertexId ShadowedGraph::source(SignedEdge e) const {
    const auto& edge = graph_.edge(e.edge);
    return e.inverse ? edge.target : edge.source;
}

VertexId ShadowedGraph::target(SignedEdge e) const {
    const auto& edge = graph_.edge(e.edge);
    return e.inverse ? edge.source : edge.target;
}

std::string ShadowedGraph::name(SignedEdge e) const {
    return (e.inverse ? "~" : "") + graph_.edge(e.edge).id;
}

std::optional<SignedEdge> ShadowedGraph::parse_name(const std::string& name) const {
    bool inverse = !name.empty() && name.front() == '~';
    auto index = graph_.find_edge(inverse ? name.substr(1) : name);
    if (!index) return std::nullopt;
    return SignedEdge{*index, inverse};
}

ShadowedGraph shadow(DirectedGraph g) {
    if (!g.is_connected()) throw GraphError("shadow: graph is not connected");
    return ShadowedGraph(std::move(g));
}

}  // namespace groupoid_lab
