#include <CLI11.hpp>

#include "crystalline/run.hpp"

using crystalline::RunConfig;

namespace {

void add_window(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option_function<std::vector<double>>(
           "--window",
           [&cfg](const std::vector<double>& v) { cfg.window = {v[0], v[1]}; },
           "window of real parts: A B")
        ->expected(2);
}

void add_seed(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--seed", cfg.seed, "perturbation seed (CRYSTALLINE_SEED overrides)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"crystalline: summation formulas from exponential polynomial pairs"};
    app.require_subcommand(1);

    RunConfig cfg;

    CLI::App* zeros = app.add_subcommand("zeros", "locate the zeros of phi in a window");
    zeros->add_option("--phi", cfg.phi_spec, "phi as DSL text or JSON path")->required();
    add_window(zeros, cfg);
    zeros->get_option("--window")->required();
    zeros->add_option("--out", cfg.out_path, "output path (default: stdout)");
    zeros->add_option("--format", cfg.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    add_seed(zeros, cfg);

    CLI::App* spectrum = app.add_subcommand("spectrum", "compute the Fourier-side data");
    spectrum->add_option("--phi", cfg.phi_spec)->required();
    spectrum->add_option("--psi", cfg.psi_spec, "psi as DSL/JSON, or 'dphi' for phi'")
        ->required();
    spectrum->add_option("--cutoff", cfg.cutoff, "frequency cutoff F")->required();
    spectrum->add_option("--out", cfg.out_path);
    spectrum->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "json"}));
    add_seed(spectrum, cfg);

    CLI::App* measure = app.add_subcommand("measure", "assemble the measure pair");
    measure->add_option("--phi", cfg.phi_spec)->required();
    measure->add_option("--psi", cfg.psi_spec)->required();
    add_window(measure, cfg);
    measure->get_option("--window")->required();
    measure->add_option("--cutoff", cfg.cutoff)->required();
    measure->add_option("--out", cfg.out_path)->required();
    measure->add_option("--plot-data", cfg.plot_prefix,
                        "also write <prefix>.atoms.csv and <prefix>.spectral.csv");
    add_seed(measure, cfg);

    CLI::App* verify = app.add_subcommand("verify", "check the summation formula");
    verify->add_option("--phi", cfg.phi_spec)->required();
    verify->add_option("--psi", cfg.psi_spec)->required();
    add_window(verify, cfg);
    verify->add_option("--cutoff", cfg.cutoff);
    verify->add_option("--tol", cfg.tolerance, "pass tolerance");
    verify->add_option("--gaussians", cfg.gaussians, "test functions: a:x0[,a:x0...]");
    verify->add_option("--out", cfg.out_path);
    add_seed(verify, cfg);

    CLI::App* example1 = app.add_subcommand("example1",
                                            "diagnostics for sin(pi*z)+delta*sin(z)");
    example1->add_option("--delta", cfg.delta, "0 < delta <= 1/2")->required();
    add_window(example1, cfg);
    example1->get_option("--window")->required();
    example1->add_option("--out", cfg.out_path);
    add_seed(example1, cfg);

    CLI::App* scan = app.add_subcommand("scan-ap", "arithmetic-progression scan of a zeros CSV");
    scan->add_option("--zeros", cfg.zeros_path, "zeros CSV path")->required();
    scan->add_option("--min-len", cfg.min_len, "minimum progression length");
    scan->add_option("--min-diff", cfg.min_diff, "minimum common difference");
    scan->add_option("--tol", cfg.ap_tol, "matching tolerance");
    scan->add_option("--out", cfg.out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    return crystalline::run(cfg);
}
