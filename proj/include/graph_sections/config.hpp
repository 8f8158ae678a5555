#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "graph_sections/graph.hpp"
#include "graph_sections/operator.hpp"
#include "graph_sections/scalar.hpp"

namespace graph_sections {

inline constexpr int config_schema_version = 1;

struct GraphSpec {
    std::string family;
    int degree = 3;
    std::vector<std::pair<std::string, std::string>> edges;
    std::vector<std::string> vertices;
    bool undirected = true;
    std::string name;
    bool named = false;
    std::vector<GraphSpec> components;
};

struct OperatorSpec {
    std::string kind = "laplacian";
    std::map<std::string, std::string> lambda;
    std::string lambda_const = "0";
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> rows;
    std::size_t radius = 1;
    std::optional<std::string> fallback;
    std::size_t principle_radius = 0;
};

/// Everything a run depends on. Identical configs give identical reports.
struct RunConfig {
    int schema_version = config_schema_version;
    GraphSpec graph;
    OperatorSpec op;
    ScalarMode scalar = ScalarMode::rational;
    std::optional<double> epsilon;
    std::vector<std::string> roots;
    std::optional<std::size_t> k;
    std::vector<std::size_t> ladder;
    std::uint64_t seed = 0;
    std::optional<std::pair<std::size_t, std::uint64_t>> falsify;
    std::size_t stability = 2;
    /// Inline right-hand side table, or a path resolved against `base_dir`.
    std::optional<nlohmann::json> rhs;
    std::optional<std::string> rhs_path;
    std::filesystem::path base_dir;
    /// Source line of each key, for error messages.
    std::map<std::string, std::size_t> lines;

    std::size_t line_of(const std::string& key) const;
};

/// Parses the `key = <JSON value>` config format (see docs/config-format.md).
/// Values may span lines; `#` starts a comment outside strings. Errors are
/// ConfigError naming line and field.
RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

Graph build_graph(const GraphSpec& spec);
Operator build_operator(const RunConfig& config, const Graph& g);
std::vector<VertexKey> build_roots(const RunConfig& config, const Graph& g);

/// Reads a `{"<vertexkey>": "p/q", ...}` table. `field` names the source in
/// errors.
FunctionOnV parse_function_table(const nlohmann::json& table, ScalarMode mode, const Graph& g,
                                 const std::string& field, std::size_t line = 0);

/// Right-hand side from the config (inline or file), empty when absent.
FunctionOnV load_rhs(const RunConfig& config, const Graph& g);

} // namespace graph_sections
