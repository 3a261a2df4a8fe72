#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "groupoid_lab/algebra.hpp"
#include "groupoid_lab/graph.hpp"
#include "groupoid_lab/labeling.hpp"

namespace groupoid_lab {

/// Input failure carrying the process exit code the CLI reports:
/// 2 for IO, 3 for parse/schema, 4 for validation.
class InputError : public std::runtime_error {
public:
    InputError(int exit_code, const std::string& message) : std::runtime_error(message), exit_code_(exit_code) {}
    int exit_code() const { return exit_code_; }

private:
    int exit_code_;
};

/// Contents of a graph file:
/// {"vertices": [...], "edges": [{"id", "src", "dst", "label"?}, ...]}
struct GraphFile {
    GraphSpec spec;
    std::vector<std::optional<Label>> labels;  // parallel to spec.edges

    bool fully_labeled() const;
};

GraphFile parse_graph_json(std::string_view text);
GraphFile read_graph_file(const std::filesystem::path& path);

/// Validates the graph, shadows it and runs the weighting process. With no
/// mode, explicit labels are used when every edge carries one and the
/// per-vertex labeling otherwise.
LabeledGraph load_labeled_graph(const GraphFile& file, std::optional<LabelingMode> mode = std::nullopt);

/// {"v1": "3", ...}: coefficients as decimal strings, vertices in index order.
nlohmann::ordered_json diagonal_to_json(const DiagonalElement& d, const DirectedGraph& g);
nlohmann::ordered_json word_to_json(std::span<const SignedEdge> word, const ShadowedGraph& g);

}  // namespace groupoid_lab
