#include "groupoid_lab/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace groupoid_lab {

using nlohmann::json;

bool GraphFile::fully_labeled() const {
    for (const auto& l : labels) {
        if (!l) return false;
    }
    return !labels.empty();
}

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
    throw InputError(3, "schema error at " + path + ": " + what);
}

const json& require(const json& object, const std::string& key, const std::string& path) {
    auto it = object.find(key);
    if (it == object.end()) schema_error(path, "missing key \"" + key + "\"");
    return *it;
}

std::string require_string(const json& object, const std::string& key, const std::string& path) {
    const auto& value = require(object, key, path);
    if (!value.is_string()) schema_error(path + "/" + key, "expected a string");
    return value.get<std::string>();
}

}  // namespace

GraphFile parse_graph_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(3, std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) schema_error("/", "expected an object");

    GraphFile file;
    const auto& vertices = require(doc, "vertices", "/");
    if (!vertices.is_array()) schema_error("/vertices", "expected an array");
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (!vertices[i].is_string()) schema_error("/vertices/" + std::to_string(i), "expected a string");
        file.spec.vertices.push_back(vertices[i].get<std::string>());
    }

    const auto& edges = require(doc, "edges", "/");
    if (!edges.is_array()) schema_error("/edges", "expected an array");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const std::string path = "/edges/" + std::to_string(i);
        const auto& e = edges[i];
        if (!e.is_object()) schema_error(path, "expected an object");
        file.spec.edges.push_back({require_string(e, "id", path), require_string(e, "src", path),
                                   require_string(e, "dst", path)});
        std::optional<Label> label;
        if (auto it = e.find("label"); it != e.end()) {
            if (!it->is_number_integer()) schema_error(path + "/label", "expected an integer");
            label = it->get<Label>();
        }
        file.labels.push_back(label);
    }
    return file;
}

GraphFile read_graph_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError(2, "cannot open graph file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw InputError(2, "cannot read graph file '" + path.string() + "'");
    return parse_graph_json(buffer.str());
}

LabeledGraph load_labeled_graph(const GraphFile& file, std::optional<LabelingMode> mode) {
    auto report = validate_graph(file.spec);
    if (!report.valid()) {
        std::string message = "invalid graph:";
        for (const auto& v : report.violations) message += " " + v + ";";
        throw InputError(4, message);
    }
    try {
        DirectedGraph g(file.spec);
        auto chosen = mode.value_or(file.fully_labeled() ? LabelingMode::Explicit : LabelingMode::PerVertex);

        std::optional<std::vector<std::optional<Label>>> labels;
        if (chosen == LabelingMode::Explicit) {
            std::map<std::string, std::optional<Label>> by_id;
            for (std::size_t i = 0; i < file.spec.edges.size(); ++i) by_id[file.spec.edges[i].id] = file.labels[i];
            labels.emplace();
            for (const auto& e : g.edges()) labels->push_back(by_id.at(e.id));
        }
        return assign_weights(shadow(std::move(g)), chosen, std::move(labels));
    } catch (const GraphError& e) {
        throw InputError(4, e.what());
    } catch (const LabelingError& e) {
        throw InputError(4, e.what());
    }
}

nlohmann::ordered_json diagonal_to_json(const DiagonalElement& d, const DirectedGraph& g) {
    nlohmann::ordered_json out = nlohmann::ordered_json::object();
    for (VertexId v = 0; v < d.size(); ++v) out[g.vertex_name(v)] = d[v].str();
    return out;
}

nlohmann::ordered_json word_to_json(std::span<const SignedEdge> word, const ShadowedGraph& g) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (auto e : word) out.push_back(g.name(e));
    return out;
}

}  // namespace groupoid_lab
