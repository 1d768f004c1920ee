#pragma once

#include <cstdint>
#include <string>

#include "crystalline/types.hpp"

namespace crystalline {

/// One CLI invocation. phi_spec / psi_spec hold either a DSL expression or
/// the path of a polynomial JSON file; psi_spec may also be "dphi" for
/// psi := phi'.
struct RunConfig {
    std::string command;  // zeros | spectrum | measure | verify | example1 | scan-ap
    std::string phi_spec;
    std::string psi_spec;
    Interval window{-50.5, 50.5};
    double cutoff = 20.0;
    double tolerance = 1e-6;
    std::string out_path;        // empty writes to stdout
    std::string format = "csv";  // csv | json (zeros and spectrum commands)
    std::uint64_t seed = kDefaultSeed;

    std::string gaussians = "1:0";  // verify: "a:x0[,a:x0...]"
    double delta = 0.5;             // example1
    std::string zeros_path;         // scan-ap input CSV
    int min_len = 5;                // scan-ap
    double min_diff = 0.5;          // scan-ap
    double ap_tol = 1e-6;           // scan-ap
    std::string plot_prefix;        // measure: also emit plot CSVs
};

/// Execute one command. Returns 0 on success, 1 when a verification
/// failed, 2 on input errors; diagnostics go to stderr. The
/// CRYSTALLINE_SEED environment variable overrides cfg.seed.
int run(const RunConfig& cfg);

}  // namespace crystalline
