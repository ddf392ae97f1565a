#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "carlab/report.hpp"

namespace {

int run(const std::string& subcommand, const std::string& config_path,
        const carlab::RunOptions& opts) {
    carlab::json cfg;
    if (!config_path.empty()) {
        std::ifstream f(config_path);
        if (!f) {
            std::cerr << "error: cannot open config " << config_path << "\n";
            return 2;
        }
        try {
            f >> cfg;
        } catch (const std::exception& e) {
            std::cerr << "error: config parse failed: " << e.what() << "\n";
            return 2;
        }
    } else {
        cfg = carlab::default_config(subcommand);
    }
    try {
        return carlab::run_subcommand(subcommand, cfg, opts);
    } catch (const carlab::json::exception& e) {
        std::cerr << "error: bad config: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: bad config: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"carlab: numerical checks for a weighted unique-continuation estimate"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    carlab::RunOptions opts;
    app.add_option("--config", config_path, "JSON config file (defaults are built in)");
    app.add_option("--out", opts.out_dir, "output directory");
    app.add_option("--seed", opts.seed, "seed for randomized sample points");
    app.add_option("--jobs", opts.jobs, "worker thread count (0: library default)");

    for (const char* name :
         {"verify-identities", "carleman-sweep", "vanishing-order", "uc-demo"})
        app.add_subcommand(name);

    CLI11_PARSE(app, argc, argv);
    const std::string sub = app.get_subcommands().front()->get_name();
    return run(sub, config_path, opts);
}
