#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>

#include <CLI11.hpp>

#include "weyl_scope/run.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Numerical checks for abstract M-functions and their examples"};
    app.require_subcommand(1, 1);
    std::string config_path, out_path;
    std::uint64_t seed = weyl::kDefaultSeed;
    double tol = 0.0;
    const std::pair<const char*, const char*> commands[] = {
        {"check", "residual suite over synthetic or loaded triples (JSON)"},
        {"scan", "M-function scan of a model over a grid (CSV)"},
        {"eig", "eigenvalues in a region (JSON)"},
        {"contour", "detection spaces and contour residuals (JSON)"},
        {"example", "one of the perturbed multiplication operator examples (JSON)"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "JSON config file")->required();
        sub->add_option("--out", out_path, "output path (stdout when omitted)");
        sub->add_option("--seed", seed, "random seed");
        sub->add_option("--tol", tol, "override every check tolerance");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    weyl::RunOptions opts;
    opts.seed = seed;
    if (app.get_subcommands().front()->count("--tol")) opts.tol = tol;
    opts.base_dir = std::filesystem::path(config_path).parent_path().string();
    try {
        const weyl::RunOutput result = weyl::run_command(command, weyl::read_json_file(config_path), opts);
        if (out_path.empty()) {
            std::cout << result.text;
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) {
                std::cerr << "cannot write " << out_path << "\n";
                return 2;
            }
            out << result.text;
        }
        return result.exit_code;
    } catch (const weyl::Error& e) {
        std::cerr << e.what() << "\n";
        return weyl::exit_code_for(e);
    }
}
