// graph-sections: certify and solve finite sections of hopping-range operators.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "graph_sections/commands.hpp"

namespace gs = graph_sections;

namespace {

std::vector<std::size_t> parse_ladder(const std::string& text)
{
    std::vector<std::size_t> out;
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, ',')) {
        std::size_t used = 0;
        long long v = std::stoll(part, &used);
        if (used != part.size() || v <= 0)
            throw CLI::ValidationError("--ladder", "expected positive integers a,b,c");
        out.push_back(static_cast<std::size_t>(v));
    }
    if (out.empty())
        throw CLI::ValidationError("--ladder", "empty ladder");
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact finite sections of hopping-range operators on locally finite graphs"};
    app.require_subcommand(1, 1);

    std::string config_path;
    std::optional<std::size_t> k;
    std::string ladder;
    std::optional<std::uint64_t> seed;
    std::vector<std::uint64_t> falsify;
    std::optional<double> epsilon;
    std::string out_path;
    std::string rhs_path;
    std::string verify_path;
    std::string dump_path;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "Run configuration file")->required();
        sub->add_option("--k", k, "Window size / largest section");
        sub->add_option("--ladder", ladder, "Ascending section sizes a,b,c");
        sub->add_option("--seed", seed, "Seed for randomized steps");
        sub->add_option("--epsilon", epsilon, "Float-mode comparison tolerance");
        sub->add_option("--out", out_path, "Write the JSON report here instead of stdout");
    };

    auto* enumerate = app.add_subcommand("enumerate", "List the BFS enumeration of the window");
    auto* maxcheck = app.add_subcommand("maxcheck", "Check the pointwise maximum principle per vertex");
    auto* certify = app.add_subcommand("certify", "Certify injectivity of sections 1..k three ways");
    auto* solve = app.add_subcommand("solve", "Solve sections exactly for a right-hand side");
    for (auto* sub : {enumerate, maxcheck, certify, solve})
        add_common(sub);
    maxcheck->add_option("--falsify", falsify, "Run the falsifier on Unknown vertices: TRIALS SEED")->expected(2);
    certify->add_option("--dump-matrix", dump_path, "Write the k-section as sparse triplets");
    solve->add_option("--dump-matrix", dump_path, "Write the (largest) section as sparse triplets");
    solve->add_option("--rhs", rhs_path, "Right-hand side table file");
    solve->add_option("--verify", verify_path, "Audit an existing solution report instead of solving");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : gs::exit_code::config;
    }

    gs::Overrides overrides;
    overrides.k = k;
    overrides.seed = seed;
    overrides.epsilon = epsilon;
    try {
        if (!ladder.empty())
            overrides.ladder = parse_ladder(ladder);
    } catch (const std::exception& e) {
        std::cerr << "error: invalid --ladder: " << e.what() << "\n";
        return gs::exit_code::config;
    }
    if (falsify.size() == 2)
        overrides.falsify = std::make_pair(static_cast<std::size_t>(falsify[0]), falsify[1]);
    if (!rhs_path.empty())
        overrides.rhs_path = rhs_path;
    if (!verify_path.empty())
        overrides.verify_path = verify_path;
    if (!dump_path.empty())
        overrides.dump_matrix = dump_path;

    auto* sub = app.get_subcommands().front();
    auto command = gs::parse_command(sub->get_name());

    gs::CommandResult result;
    try {
        result = gs::run_command_file(*command, config_path, overrides);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return gs::exit_code::internal;
    }

    const std::string text = result.report.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return gs::exit_code::config;
        }
        out << text;
    }
    for (const auto& line : result.report["summary"])
        std::cerr << line.get<std::string>() << "\n";
    return result.exit_code;
}
