#include "graph_sections/config.hpp"

#include <cctype>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "graph_sections/errors.hpp"

namespace graph_sections {

using nlohmann::json;

std::size_t RunConfig::line_of(const std::string& key) const
{
    auto it = lines.find(key);
    return it == lines.end() ? 0 : it->second;
}

namespace {

const std::set<std::string> graph_keys{"family", "degree", "edges", "vertices", "undirected", "union", "name"};
const std::set<std::string> top_level_keys{
    "schema_version", "family", "degree",  "edges",  "vertices", "undirected", "union",     "name",
    "op",             "lambda", "lambda_const", "rows", "radius", "default",  "principle_radius",
    "scalar",         "epsilon", "roots",  "k",      "ladder",   "seed",       "falsify",   "stability", "rhs"};

std::string trim(const std::string& s)
{
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return s.substr(b, e - b);
}

// Strips a trailing `#` comment (outside strings) and tracks nesting so the
// caller knows when a multi-line value is complete.
struct Scanner {
    int depth = 0;
    bool in_string = false;
    bool escaped = false;

    std::string feed(const std::string& line)
    {
        std::string out;
        for (char c : line) {
            if (in_string) {
                out.push_back(c);
                if (escaped)
                    escaped = false;
                else if (c == '\\')
                    escaped = true;
                else if (c == '"')
                    in_string = false;
                continue;
            }
            if (c == '#')
                break;
            if (c == '"')
                in_string = true;
            else if (c == '[' || c == '{')
                ++depth;
            else if (c == ']' || c == '}')
                --depth;
            out.push_back(c);
        }
        return out;
    }

    bool complete() const { return depth <= 0 && !in_string; }
};

template <typename T>
T get_as(const json& value, const std::string& field, std::size_t line, const char* expected)
{
    try {
        return value.get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("expected ") + expected + ", got " + value.dump(), line, field);
    }
}

std::size_t get_count(const json& value, const std::string& field, std::size_t line, bool positive)
{
    if (!value.is_number_integer() || value.get<long long>() < (positive ? 1 : 0))
        throw ConfigError(std::string("expected a ") + (positive ? "positive" : "nonnegative") + " integer, got " +
                              value.dump(),
                          line, field);
    return value.get<std::size_t>();
}

std::string get_scalar_text(const json& value, const std::string& field, std::size_t line)
{
    if (value.is_string())
        return value.get<std::string>();
    if (value.is_number_integer())
        return std::to_string(value.get<long long>());
    throw ConfigError("expected a rational string \"p/q\", got " + value.dump(), line, field);
}

using LineOf = std::function<std::size_t(const std::string&)>;

// `where` is the dotted path of this spec ("" at top level); `line_of` maps
// a top-level key to its source line.
GraphSpec graph_from_json(const json& obj, const std::string& where, const LineOf& line_of)
{
    const std::string prefix = where.empty() ? "" : where + ".";
    auto field = [&](const std::string& k) { return prefix + k; };
    auto line = [&](const std::string& k) { return line_of(where.empty() ? k : "union"); };

    if (!obj.is_object())
        throw ConfigError("graph spec must be an object, got " + obj.dump(), line_of("union"), where);
    GraphSpec spec;
    for (const auto& [key, value] : obj.items())
        if (!graph_keys.count(key))
            throw ConfigError("unknown graph field", line(key), field(key));

    if (obj.contains("union")) {
        const auto& parts = obj.at("union");
        if (!parts.is_array() || parts.empty())
            throw ConfigError("expected a nonempty list of graph specs", line("union"), field("union"));
        if (obj.contains("family") && obj.at("family") != "union")
            throw ConfigError("`union` cannot be combined with family " + obj.at("family").dump(), line("family"),
                              field("family"));
        spec.family = "union";
        for (std::size_t i = 0; i < parts.size(); ++i) {
            GraphSpec part = graph_from_json(parts[i], field("union") + "[" + std::to_string(i) + "]", line_of);
            if (!part.named)
                part.name = "g" + std::to_string(i);
            spec.components.push_back(std::move(part));
        }
    } else {
        if (!obj.contains("family"))
            throw ConfigError("missing graph family", line("family"), field("family"));
        spec.family = get_as<std::string>(obj.at("family"), field("family"), line("family"), "a string");
    }

    if (obj.contains("name")) {
        spec.name = get_as<std::string>(obj.at("name"), field("name"), line("name"), "a string");
        spec.named = true;
    }
    if (obj.contains("degree"))
        spec.degree = static_cast<int>(get_count(obj.at("degree"), field("degree"), line("degree"), true));
    if (obj.contains("undirected"))
        spec.undirected = get_as<bool>(obj.at("undirected"), field("undirected"), line("undirected"), "true or false");
    if (obj.contains("edges")) {
        const auto& edges = obj.at("edges");
        if (!edges.is_array())
            throw ConfigError("expected a list of [\"a\", \"b\"] pairs", line("edges"), field("edges"));
        for (const auto& e : edges) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
                throw ConfigError("expected an edge [\"a\", \"b\"], got " + e.dump(), line("edges"), field("edges"));
            spec.edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
        }
    }
    if (obj.contains("vertices"))
        spec.vertices =
            get_as<std::vector<std::string>>(obj.at("vertices"), field("vertices"), line("vertices"), "a list of strings");

    static const std::set<std::string> families{"zline", "zsquare", "tree", "ray", "explicit", "union"};
    if (!families.count(spec.family))
        throw ConfigError("unknown family \"" + spec.family + "\" (expected zline, zsquare, tree, ray, explicit)",
                          line("family"), field("family"));
    if (spec.family == "explicit" && spec.edges.empty() && spec.vertices.empty())
        throw ConfigError("explicit graph needs `edges` or `vertices`", line("edges"), field("edges"));
    if (spec.family == "tree" && spec.degree < 2)
        throw ConfigError("tree degree must be at least 2", line("degree"), field("degree"));
    return spec;
}

VertexKey parse_key(const std::string& text, const std::string& field, std::size_t line)
{
    try {
        return VertexKey::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(e.what(), line, field);
    }
}

} // namespace

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir)
{
    RunConfig config;
    config.base_dir = base_dir;
    std::map<std::string, json> values;

    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    std::string key;
    std::string pending;
    std::size_t key_line = 0;
    Scanner scanner;

    auto finish = [&]() {
        json value;
        try {
            value = json::parse(pending);
        } catch (const json::parse_error& e) {
            throw ConfigError(std::string("malformed value: ") + e.what(), key_line, key);
        }
        if (values.count(key))
            throw ConfigError("duplicate key", key_line, key);
        values.emplace(key, std::move(value));
        config.lines[key] = key_line;
        key.clear();
        pending.clear();
    };

    while (std::getline(in, raw)) {
        ++line_no;
        if (!key.empty()) {
            pending += "\n" + scanner.feed(raw);
            if (scanner.complete())
                finish();
            continue;
        }
        std::string stripped = trim(Scanner{}.feed(raw));
        if (stripped.empty())
            continue;
        auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected `key = value`", line_no, "");
        key = trim(stripped.substr(0, eq));
        key_line = line_no;
        if (key.empty())
            throw ConfigError("missing key before `=`", line_no, "");
        if (!top_level_keys.count(key))
            throw ConfigError("unknown key", line_no, key);
        scanner = Scanner{};
        pending = scanner.feed(trim(raw.substr(raw.find('=') + 1)));
        if (trim(pending).empty())
            throw ConfigError("missing value", line_no, key);
        if (scanner.complete())
            finish();
    }
    if (!key.empty())
        throw ConfigError("unterminated value", key_line, key);

    auto line = [&](const std::string& k) { return config.line_of(k); };

    if (values.count("schema_version")) {
        config.schema_version = static_cast<int>(get_count(values.at("schema_version"), "schema_version",
                                                           line("schema_version"), true));
        if (config.schema_version != config_schema_version)
            throw ConfigError("unsupported schema version " + std::to_string(config.schema_version), line("schema_version"),
                              "schema_version");
    }

    json graph_obj = json::object();
    for (const auto& k : graph_keys)
        if (values.count(k))
            graph_obj[k] = values.at(k);
    if (graph_obj.empty())
        throw ConfigError("missing graph spec", 0, "family");
    config.graph = graph_from_json(graph_obj, "", line);

    if (values.count("op")) {
        config.op.kind = get_as<std::string>(values.at("op"), "op", line("op"), "a string");
        static const std::set<std::string> kinds{"laplacian", "laplacian_plus_lambda", "adjacency", "custom"};
        if (!kinds.count(config.op.kind))
            throw ConfigError("unknown operator \"" + config.op.kind + "\"", line("op"), "op");
    }
    if (values.count("lambda")) {
        const auto& t = values.at("lambda");
        if (!t.is_object())
            throw ConfigError("expected a table {\"<vertex>\": \"p/q\"}", line("lambda"), "lambda");
        for (const auto& [k, v] : t.items())
            config.op.lambda[k] = get_scalar_text(v, "lambda", line("lambda"));
    }
    if (values.count("lambda_const"))
        config.op.lambda_const = get_scalar_text(values.at("lambda_const"), "lambda_const", line("lambda_const"));
    if (values.count("rows")) {
        const auto& t = values.at("rows");
        if (!t.is_object())
            throw ConfigError("expected a table {\"<vertex>\": [[\"<vertex>\", \"p/q\"], ...]}", line("rows"), "rows");
        for (const auto& [k, list] : t.items()) {
            if (!list.is_array())
                throw ConfigError("row \"" + k + "\" must be a list of [vertex, value] pairs", line("rows"), "rows");
            auto& row = config.op.rows[k];
            for (const auto& entry : list) {
                if (!entry.is_array() || entry.size() != 2 || !entry[0].is_string())
                    throw ConfigError("malformed coefficient " + entry.dump() + " in row \"" + k + "\"", line("rows"),
                                      "rows");
                row.emplace_back(entry[0].get<std::string>(), get_scalar_text(entry[1], "rows", line("rows")));
            }
        }
    }
    if (values.count("radius"))
        config.op.radius = get_count(values.at("radius"), "radius", line("radius"), false);
    if (values.count("default"))
        config.op.fallback = get_as<std::string>(values.at("default"), "default", line("default"), "a string");
    if (values.count("principle_radius"))
        config.op.principle_radius =
            get_count(values.at("principle_radius"), "principle_radius", line("principle_radius"), false);

    if (values.count("scalar")) {
        try {
            config.scalar = parse_scalar_mode(get_as<std::string>(values.at("scalar"), "scalar", line("scalar"),
                                                                  "a string"));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what(), line("scalar"), "scalar");
        }
    }
    if (values.count("epsilon")) {
        const auto& v = values.at("epsilon");
        if (v.is_number())
            config.epsilon = v.get<double>();
        else if (v.is_string())
            try {
                config.epsilon = std::stod(v.get<std::string>());
            } catch (const std::exception&) {
                throw ConfigError("malformed epsilon " + v.dump(), line("epsilon"), "epsilon");
            }
        else
            throw ConfigError("expected a number", line("epsilon"), "epsilon");
        if (!(*config.epsilon >= 0))
            throw ConfigError("epsilon must be nonnegative", line("epsilon"), "epsilon");
    }

    if (!values.count("roots"))
        throw ConfigError("missing required field", 0, "roots");
    config.roots = get_as<std::vector<std::string>>(values.at("roots"), "roots", line("roots"), "a list of vertex keys");
    if (config.roots.empty())
        throw ConfigError("at least one root is required", line("roots"), "roots");

    if (values.count("k"))
        config.k = get_count(values.at("k"), "k", line("k"), true);
    if (values.count("ladder")) {
        const auto& l = values.at("ladder");
        if (!l.is_array() || l.empty())
            throw ConfigError("expected a nonempty list of positive integers", line("ladder"), "ladder");
        for (const auto& v : l)
            config.ladder.push_back(get_count(v, "ladder", line("ladder"), true));
    }
    if (values.count("seed"))
        config.seed = get_count(values.at("seed"), "seed", line("seed"), false);
    if (values.count("falsify")) {
        const auto& f = values.at("falsify");
        if (!f.is_array() || f.size() != 2)
            throw ConfigError("expected [trials, seed]", line("falsify"), "falsify");
        config.falsify = std::make_pair(get_count(f[0], "falsify", line("falsify"), true),
                                        static_cast<std::uint64_t>(get_count(f[1], "falsify", line("falsify"), false)));
    }
    if (values.count("stability"))
        config.stability = get_count(values.at("stability"), "stability", line("stability"), true);
    if (values.count("rhs")) {
        const auto& r = values.at("rhs");
        if (r.is_string())
            config.rhs_path = r.get<std::string>();
        else if (r.is_object())
            config.rhs = r;
        else
            throw ConfigError("expected a file path or a table {\"<vertex>\": \"p/q\"}", line("rhs"), "rhs");
    }
    return config;
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file " + path.string(), 0, "--config");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), path.parent_path());
}

Graph build_graph(const GraphSpec& spec)
{
    if (spec.family == "zline")
        return Graph::zline();
    if (spec.family == "zsquare")
        return Graph::zsquare();
    if (spec.family == "tree")
        return Graph::regular_tree(spec.degree);
    if (spec.family == "ray")
        return Graph::directed_ray();
    if (spec.family == "explicit") {
        std::vector<std::pair<VertexKey, VertexKey>> edges;
        for (const auto& [a, b] : spec.edges)
            edges.emplace_back(parse_key(a, "edges", 0), parse_key(b, "edges", 0));
        std::vector<VertexKey> isolated;
        for (const auto& v : spec.vertices)
            isolated.push_back(parse_key(v, "vertices", 0));
        try {
            return Graph::explicit_finite(edges, spec.undirected, isolated);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what(), 0, "edges");
        }
    }
    std::vector<std::pair<std::string, Graph>> parts;
    for (const auto& c : spec.components)
        parts.emplace_back(c.name, build_graph(c));
    try {
        return Graph::disjoint_union(std::move(parts));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what(), 0, "union");
    }
}

namespace {

Scalar parse_value(const std::string& text, ScalarMode mode, const std::string& field, std::size_t line)
{
    try {
        return Scalar::parse(text, mode);
    } catch (const std::exception& e) {
        throw ConfigError(e.what(), line, field);
    }
}

VertexKey checked_key(const std::string& text, const Graph& g, const std::string& field, std::size_t line)
{
    VertexKey v = parse_key(text, field, line);
    if (!g.contains(v))
        throw ConfigError("\"" + text + "\" is not a vertex of " + g.describe(), line, field);
    return v;
}

Operator builtin(const std::string& kind, const RunConfig& config, const Graph& g)
{
    const auto mode = config.scalar;
    if (kind == "laplacian")
        return laplacian(g, mode);
    if (kind == "adjacency")
        return adjacency(g, mode);
    if (kind == "laplacian_plus_lambda") {
        Potential lambda;
        Scalar background = parse_value(config.op.lambda_const, ScalarMode::rational, "lambda_const",
                                         config.line_of("lambda_const"));
        lambda.background = background.rational();
        for (const auto& [k, v] : config.op.lambda)
            lambda.table.set(checked_key(k, g, "lambda", config.line_of("lambda")),
                             parse_value(v, ScalarMode::rational, "lambda", config.line_of("lambda")));
        return laplacian_plus_lambda(g, std::move(lambda), mode);
    }
    throw ConfigError("\"" + kind + "\" is not a built-in operator", config.line_of("default"), "default");
}

} // namespace

Operator build_operator(const RunConfig& config, const Graph& g)
{
    const auto& spec = config.op;
    std::optional<Operator> op;
    if (spec.kind != "custom") {
        op = builtin(spec.kind, config, g);
    } else {
        RowTable table;
        for (const auto& [v, coeffs] : spec.rows) {
            auto key = checked_key(v, g, "rows", config.line_of("rows"));
            auto& row = table[key];
            for (const auto& [w, c] : coeffs)
                row.emplace_back(checked_key(w, g, "rows", config.line_of("rows")),
                                 parse_value(c, config.scalar, "rows", config.line_of("rows")));
        }
        std::optional<Operator> fallback;
        if (spec.fallback)
            fallback = builtin(*spec.fallback, config, g);
        try {
            op = custom_operator(g, table, spec.radius, std::move(fallback), config.scalar);
        } catch (const SupportOutsideBall& e) {
            throw ConfigError(e.what(), config.line_of("rows"), "rows");
        }
    }
    return op->with_principle_radius(spec.principle_radius);
}

std::vector<VertexKey> build_roots(const RunConfig& config, const Graph& g)
{
    std::vector<VertexKey> roots;
    std::set<VertexKey> seen;
    for (const auto& r : config.roots) {
        auto v = checked_key(r, g, "roots", config.line_of("roots"));
        if (!seen.insert(v).second)
            throw ConfigError("duplicate root \"" + r + "\"", config.line_of("roots"), "roots");
        roots.push_back(std::move(v));
    }
    return roots;
}

FunctionOnV parse_function_table(const nlohmann::json& table, ScalarMode mode, const Graph& g,
                                 const std::string& field, std::size_t line)
{
    if (!table.is_object())
        throw ConfigError("expected a table {\"<vertex>\": \"p/q\"}", line, field);
    FunctionOnV f;
    for (const auto& [k, v] : table.items())
        f.set(checked_key(k, g, field, line), parse_value(get_scalar_text(v, field, line), mode, field, line));
    return f;
}

FunctionOnV load_rhs(const RunConfig& config, const Graph& g)
{
    if (config.rhs)
        return parse_function_table(*config.rhs, config.scalar, g, "rhs", config.line_of("rhs"));
    if (!config.rhs_path)
        return {};
    std::filesystem::path path(*config.rhs_path);
    if (path.is_relative())
        path = config.base_dir / path;
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open rhs file " + path.string(), config.line_of("rhs"), "rhs");
    json table;
    try {
        table = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed rhs file: ") + e.what(), 0, path.string());
    }
    return parse_function_table(table, config.scalar, g, path.string());
}

} // namespace graph_sections
