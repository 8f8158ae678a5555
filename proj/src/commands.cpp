#include "graph_sections/commands.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

#include "graph_sections/errors.hpp"
#include "graph_sections/maxprinciple.hpp"
#include "graph_sections/sections.hpp"
#include "graph_sections/solver.hpp"

namespace graph_sections {

namespace {

const char* const tool_version = "1.0.0";

std::string kind_of(const std::exception& e)
{
    if (dynamic_cast<const SingularSection*>(&e))
        return "SingularSection";
    if (dynamic_cast<const PremiseFailed*>(&e))
        return "PremiseFailed";
    if (dynamic_cast<const ConfigError*>(&e))
        return "ConfigError";
    if (dynamic_cast<const FloatModeUnsupported*>(&e))
        return "FloatModeUnsupported";
    if (dynamic_cast<const InvalidKey*>(&e))
        return "InvalidKey";
    if (dynamic_cast<const DirectedGraph*>(&e))
        return "DirectedGraph";
    if (dynamic_cast<const ZeroDegree*>(&e))
        return "ZeroDegree";
    if (dynamic_cast<const NegativeLambda*>(&e))
        return "NegativeLambda";
    if (dynamic_cast<const SupportOutsideBall*>(&e))
        return "SupportOutsideBall";
    if (dynamic_cast<const NoOffDiagonal*>(&e))
        return "NoOffDiagonal";
    if (dynamic_cast<const EnumerationTooShort*>(&e))
        return "EnumerationTooShort";
    if (dynamic_cast<const ContractError*>(&e))
        return "ContractError";
    return "InternalError";
}

ordered_json kernel_json(const std::vector<std::vector<Scalar>>& kernel, const Enumeration& e)
{
    ordered_json out = ordered_json::array();
    for (const auto& v : kernel) {
        ordered_json table = ordered_json::object();
        for (std::size_t j = 0; j < v.size(); ++j)
            table[e.at(j).to_string()] = v[j].to_string();
        out.push_back(std::move(table));
    }
    return out;
}

ordered_json error_json(const std::exception& e)
{
    ordered_json err{{"kind", kind_of(e)}, {"message", e.what()}};
    if (const auto* c = dynamic_cast<const ConfigError*>(&e)) {
        err["line"] = c->line();
        err["field"] = c->field();
    }
    if (const auto* s = dynamic_cast<const SingularSection*>(&e))
        err["k"] = s->k();
    return err;
}

ordered_json base_report(Command command)
{
    return {{"schema_version", report_schema_version}, {"command", to_string(command)}, {"status", "ok"}};
}

void finish(ordered_json& report, const std::vector<std::string>& summary)
{
    report["summary"] = summary;
    report["metadata"] = {{"tool", "graph-sections"}, {"version", tool_version}};
}

struct Context {
    RunConfig config;
    Graph graph;
    Operator op;
    std::vector<VertexKey> roots;
};

std::size_t require_k(const RunConfig& config)
{
    if (!config.k)
        throw ConfigError("missing required field (or pass --k)", 0, "k");
    return *config.k;
}

void write_matrix(const std::optional<std::filesystem::path>& path, const Matrix& m)
{
    if (!path)
        return;
    std::ofstream out(*path);
    if (!out)
        throw ConfigError("cannot write matrix dump " + path->string(), 0, "--dump-matrix");
    out << "# rows=" << m.rows() << " cols=" << m.cols() << "\n" << to_triplets(m);
}

ordered_json config_echo(const Context& ctx)
{
    ordered_json out{{"graph", ctx.graph.describe()},
                     {"operator", ctx.op.name()},
                     {"scalar", to_string(ctx.config.scalar)}};
    if (!is_exact(ctx.config.scalar))
        out["epsilon"] = Scalar::epsilon();
    ordered_json roots = ordered_json::array();
    for (const auto& r : ctx.roots)
        roots.push_back(r.to_string());
    out["roots"] = roots;
    if (ctx.config.k)
        out["k"] = *ctx.config.k;
    if (!ctx.config.ladder.empty())
        out["ladder"] = ctx.config.ladder;
    out["seed"] = ctx.config.seed;
    if (ctx.op.principle_radius() > 0)
        out["principle_radius"] = ctx.op.principle_radius();
    return out;
}

int cmd_enumerate(const Context& ctx, ordered_json& results, std::vector<std::string>& summary)
{
    auto k = require_k(ctx.config);
    auto e = enumerate(ctx.graph, ctx.roots, k);
    results["entries"] = to_json(e);
    results["window_exhausted"] = e.exhausted;
    results["window_connected"] = window_connected(ctx.graph, e);
    summary.push_back("enumerated " + std::to_string(e.size()) + " of " + std::to_string(k) + " requested vertices of " +
                      ctx.graph.describe());
    if (e.exhausted)
        summary.push_back("window exhausted: only " + std::to_string(e.size()) + " vertices reachable from the roots");
    return exit_code::ok;
}

int cmd_maxcheck(const Context& ctx, ordered_json& results, std::vector<std::string>& summary)
{
    auto k = require_k(ctx.config);
    auto e = enumerate(ctx.graph, ctx.roots, k);
    ordered_json vertices = ordered_json::array();
    std::map<std::string, std::size_t> counts;
    for (std::size_t j = 0; j < e.size(); ++j) {
        auto cert = check_structural(ctx.op, e.at(j));
        ordered_json entry{{"position", j + 1}};
        if (cert.status == PrincipleStatus::unknown && ctx.config.falsify) {
            try {
                auto witness = falsify(ctx.op, e.at(j), ctx.config.falsify->first, ctx.config.falsify->second);
                if (witness) {
                    cert.status = PrincipleStatus::falsified;
                    cert.witness = std::move(witness);
                }
            } catch (const NoOffDiagonal& ex) {
                entry["falsifier"] = ex.what();
            }
        }
        ++counts[to_string(cert.status)];
        entry.update(to_json(cert));
        vertices.push_back(std::move(entry));
    }
    results["vertices"] = std::move(vertices);
    results["window_exhausted"] = e.exhausted;
    for (const auto& [status, n] : counts)
        summary.push_back(std::to_string(n) + "x " + status);
    return exit_code::ok;
}

int cmd_certify(const Context& ctx, ordered_json& results, std::vector<std::string>& summary,
                const Overrides& overrides)
{
    auto K = require_k(ctx.config);
    auto e = enumerate(ctx.graph, ctx.roots, K);
    if (e.exhausted)
        throw EnumerationTooShort("only " + std::to_string(e.size()) + " vertices reachable; cannot certify up to k=" +
                                  std::to_string(K));
    const bool exact = is_exact(ctx.op.mode());
    ordered_json per_k = ordered_json::array();
    bool all_ok = true;
    std::optional<std::size_t> first_singular;

    for (std::size_t k = 1; k <= K; ++k) {
        auto section = build_section(ctx.op, e, k);
        if (k == K)
            write_matrix(overrides.dump_matrix, section.entries);
        ordered_json entry{{"k", k}};
        if (!exact) {
            double det = float_determinant(section.entries);
            entry["determinant"] = Scalar(det).to_string();
            entry["is_injective"] = is_injective(section);
            entry["heuristic"] = true;
            entry["rows_independent"] = "unsupported";
            entry["propagation"] = "unsupported";
            per_k.push_back(std::move(entry));
            continue;
        }

        auto det = determinant(section);
        bool injective = !det.is_zero();
        bool independent = rows_independent(ctx.op, e, k);
        entry["determinant"] = to_json(det);
        entry["is_injective"] = injective;
        entry["rows_independent"] = independent;
        std::optional<bool> propagated;
        try {
            auto cert = propagation_certificate(ctx.op, e, k);
            propagated = cert.certified;
            entry["propagation"] = to_json(cert, e);
        } catch (const PremiseFailed& ex) {
            entry["propagation"] = {{"error", "PremiseFailed"}, {"message", ex.what()}};
        }
        bool agree = propagated && *propagated == injective && independent == injective;
        entry["agree"] = agree;
        if (!injective) {
            entry["kernel"] = kernel_json(kernel_basis(section), e);
            if (!first_singular)
                first_singular = k;
        }
        all_ok = all_ok && injective && independent && propagated.value_or(false);
        per_k.push_back(std::move(entry));
    }
    results["sections"] = std::move(per_k);
    results["window_connected"] = window_connected(ctx.graph, e);

    if (!exact) {
        summary.push_back("float mode: injectivity verdicts are heuristic (|det| > epsilon); rows_independent and "
                          "propagation certificates need an exact scalar mode");
        return exit_code::unsupported;
    }
    std::string scope = ctx.graph.finite() ? " (finite graph: window-only certificate)" : "";
    if (all_ok) {
        summary.push_back("surjectivity evidence: sections 1.." + std::to_string(K) +
                          " injective; certificate is for the window only - the theorem's conclusion requires the "
                          "hypotheses for all v" +
                          scope);
        results["verdict"] = "certified";
        return exit_code::ok;
    }
    results["verdict"] = "not certified";
    if (first_singular)
        summary.push_back("section k=" + std::to_string(*first_singular) + " is singular; kernel attached");
    summary.push_back("surjectivity evidence not established for sections 1.." + std::to_string(K) + scope);
    return exit_code::failure;
}

int cmd_solve(const Context& ctx, ordered_json& results, std::vector<std::string>& summary, const Overrides& overrides)
{
    RunConfig config = ctx.config;
    if (overrides.rhs_path) {
        config.rhs.reset();
        config.rhs_path = overrides.rhs_path;
        config.base_dir.clear();
    }
    FunctionOnV g = load_rhs(config, ctx.graph);

    if (overrides.verify_path) {
        std::ifstream in(*overrides.verify_path);
        if (!in)
            throw ConfigError("cannot open solution file " + overrides.verify_path->string(), 0, "--verify");
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& ex) {
            throw ConfigError(std::string("malformed solution file: ") + ex.what(), 0, "--verify");
        }
        nlohmann::json table = doc;
        std::optional<std::size_t> k = config.k;
        if (doc.contains("results") && doc["results"].contains("solution")) {
            table = doc["results"]["solution"];
            k = doc["results"].value("k", k.value_or(0));
        }
        if (!k || *k == 0)
            throw ConfigError("window size unknown: pass --k or a solution report", 0, "k");
        FunctionOnV f = parse_function_table(table, config.scalar, ctx.graph, overrides.verify_path->string());
        auto e = enumerate(ctx.graph, ctx.roots, *k);
        std::vector<std::size_t> positions(e.size());
        std::iota(positions.begin(), positions.end(), std::size_t{0});
        auto residuals = verify(ctx.op, f, g, e, positions);
        results["k"] = *k;
        results["audit"] = to_json(residuals);
        bool ok = all_zero(residuals);
        summary.push_back(std::string("residual audit on ") + std::to_string(positions.size()) + " positions: " +
                          (ok ? "all zero" : "NONZERO residuals"));
        return ok ? exit_code::ok : exit_code::failure;
    }

    std::vector<std::size_t> ladder = config.ladder;
    if (ladder.empty())
        ladder.push_back(require_k(config));
    const std::size_t width = *std::max_element(ladder.begin(), ladder.end());
    auto e = enumerate(ctx.graph, ctx.roots, width);

    try {
        if (ladder.size() == 1) {
            auto sol = solve_section(ctx.op, e, g, ladder.front());
            write_matrix(overrides.dump_matrix, build_section(ctx.op, e, sol.k).entries);
            std::vector<std::size_t> positions(sol.k);
            std::iota(positions.begin(), positions.end(), std::size_t{0});
            results.update(to_json(sol));
            results["audit"] = to_json(verify(ctx.op, sol.f, g, e, positions));
            summary.push_back("solved k=" + std::to_string(sol.k) + " section exactly; determinant " +
                              sol.determinant.to_string() + "; residual audit all zero");
        } else {
            auto [solutions, report] = solve_progressive(ctx.op, e, g, ladder, std::min(config.stability, ladder.size()));
            write_matrix(overrides.dump_matrix, build_section(ctx.op, e, ladder.back()).entries);
            ordered_json sols = ordered_json::array();
            for (const auto& s : solutions) {
                std::vector<std::size_t> positions(s.k);
                std::iota(positions.begin(), positions.end(), std::size_t{0});
                auto entry = to_json(s);
                entry["audit"] = to_json(verify(ctx.op, s.f, g, e, positions));
                sols.push_back(std::move(entry));
            }
            results["solutions"] = std::move(sols);
            results["stabilization"] = to_json(report, e);
            std::size_t stable = std::count(report.stable.begin(), report.stable.end(), true);
            summary.push_back("solved " + std::to_string(solutions.size()) + " sections exactly; " +
                              std::to_string(stable) + " positions stable over the last " +
                              std::to_string(report.window) + " entries (traces need not converge)");
        }
    } catch (const SingularSection& s) {
        results["kernel"] = kernel_json(s.kernel(), e);
        throw;
    }
    return exit_code::ok;
}

} // namespace

std::optional<Command> parse_command(const std::string& name)
{
    if (name == "enumerate")
        return Command::enumerate;
    if (name == "maxcheck")
        return Command::maxcheck;
    if (name == "certify")
        return Command::certify;
    if (name == "solve")
        return Command::solve;
    return std::nullopt;
}

std::string to_string(Command c)
{
    switch (c) {
    case Command::enumerate:
        return "enumerate";
    case Command::maxcheck:
        return "maxcheck";
    case Command::certify:
        return "certify";
    case Command::solve:
        return "solve";
    }
    return "?";
}

int exit_code_for(const std::exception& e)
{
    if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const ContractError*>(&e))
        return exit_code::config;
    if (dynamic_cast<const CertificateFailure*>(&e))
        return exit_code::failure;
    if (dynamic_cast<const FloatModeUnsupported*>(&e))
        return exit_code::unsupported;
    return exit_code::internal;
}

CommandResult run_command(Command command, RunConfig config, const Overrides& overrides)
{
    CommandResult out{base_report(command), exit_code::ok};
    std::vector<std::string> summary;
    ordered_json results = ordered_json::object();

    if (overrides.k)
        config.k = overrides.k;
    if (!overrides.ladder.empty())
        config.ladder = overrides.ladder;
    if (overrides.seed)
        config.seed = *overrides.seed;
    if (overrides.falsify)
        config.falsify = overrides.falsify;
    if (overrides.epsilon)
        config.epsilon = overrides.epsilon;
    Scalar::set_epsilon(config.epsilon.value_or(1e-9));

    std::optional<Context> ctx;
    try {
        Graph g = build_graph(config.graph);
        Operator op = build_operator(config, g);
        auto roots = build_roots(config, g);
        ctx.emplace(Context{config, g, op, roots});
        out.report["config"] = config_echo(*ctx);

        switch (command) {
        case Command::enumerate:
            out.exit_code = cmd_enumerate(*ctx, results, summary);
            break;
        case Command::maxcheck:
            out.exit_code = cmd_maxcheck(*ctx, results, summary);
            break;
        case Command::certify:
            out.exit_code = cmd_certify(*ctx, results, summary, overrides);
            break;
        case Command::solve:
            out.exit_code = cmd_solve(*ctx, results, summary, overrides);
            break;
        }
        if (out.exit_code == exit_code::failure)
            out.report["status"] = "failed";
        else if (out.exit_code == exit_code::unsupported)
            out.report["status"] = "unsupported";
    } catch (const Error& e) {
        out.exit_code = exit_code_for(e);
        out.report["status"] = "error";
        out.report["error"] = error_json(e);
        summary.push_back(std::string("error: ") + e.what());
    }
    out.report["results"] = std::move(results);
    finish(out.report, summary);
    return out;
}

CommandResult run_command_file(Command command, const std::filesystem::path& config_path, const Overrides& overrides)
{
    try {
        return run_command(command, load_config(config_path), overrides);
    } catch (const ConfigError& e) {
        CommandResult out{base_report(command), exit_code::config};
        out.report["status"] = "error";
        out.report["error"] = error_json(e);
        out.report["results"] = ordered_json::object();
        finish(out.report, {std::string("error: ") + e.what()});
        return out;
    }
}

} // namespace graph_sections
