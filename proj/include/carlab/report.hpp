#pragma once

// Batch driver behind the CLI: JSON-configured subcommands that run the
// verification suites and emit results.csv, summary.json and plot.gp.
// Outputs are byte-stable for a fixed config and seed.

#include <cstdint>
#include <string>

#include "carlab/uc.hpp"

namespace carlab {

struct RunOptions {
    std::string out_dir = "out";
    std::uint64_t seed = 1234;
    int jobs = 0;  // 0: leave the OpenMP default
};

// Exit status: 0 all enabled checks pass, 1 check failure (outputs written,
// failures listed in summary.json), 2 config error (nothing written).
int run_verify_identities(const json& cfg, const RunOptions& opts);
int run_carleman_sweep(const json& cfg, const RunOptions& opts);
int run_vanishing_order(const json& cfg, const RunOptions& opts);
int run_uc_demo(const json& cfg, const RunOptions& opts);

// Dispatch on subcommand name; config may be empty (built-in defaults).
int run_subcommand(const std::string& name, const json& cfg, const RunOptions& opts);

json default_config(const std::string& subcommand);

// Shared helpers (also used by the acceptance suite).
std::string format_double(double x);
AlmostComplexStructure acs_from_json(const json& j);
CylinderGrid grid_from_json(const json& j);

}  // namespace carlab
