#include "crystalline/run.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "crystalline/dsl.hpp"
#include "crystalline/serialize.hpp"

namespace crystalline {

namespace {

ExpPoly load_poly(const std::string& spec) {
    if (std::filesystem::exists(spec)) {
        return poly_from_json(json::parse(read_file(spec)));
    }
    return parse_poly_dsl(spec);
}

ExpPoly resolve_psi(const std::string& psi_spec, const ExpPoly& phi) {
    if (psi_spec == "dphi") return phi.derivative();
    return load_poly(psi_spec);
}

void emit(const RunConfig& cfg, const std::string& content) {
    if (cfg.out_path.empty()) {
        std::cout << content;
    } else {
        write_file(cfg.out_path, content);
    }
}

std::vector<Gaussian> parse_gaussians(const std::string& text) {
    std::vector<Gaussian> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string item =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        const std::size_t colon = item.find(':');
        if (colon == std::string::npos) {
            throw std::invalid_argument("gaussian spec must be a:x0, got '" + item + "'");
        }
        out.push_back({std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1))});
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw std::invalid_argument("no gaussians given");
    return out;
}

int dispatch(const RunConfig& cfg) {
    FindOptions opts;
    opts.count.seed = cfg.seed;

    if (cfg.command == "zeros") {
        const ZeroSet zs = find_zeros(load_poly(cfg.phi_spec), cfg.window, opts);
        emit(cfg, cfg.format == "json" ? zeros_to_json(zs).dump(2) + "\n" : zeros_to_csv(zs));
        return 0;
    }
    if (cfg.command == "spectrum") {
        const ExpPoly phi = load_poly(cfg.phi_spec);
        const ExpPoly psi = resolve_psi(cfg.psi_spec, phi);
        const SpectrumSide lower = expand_lower(psi, phi, cfg.cutoff);
        const SpectrumSide upper = expand_upper(psi, phi, cfg.cutoff);
        Spectrum merged = merge_spectrum(lower, upper);
        growth_profile(merged, {cfg.cutoff / 8.0, cfg.cutoff / 4.0, cfg.cutoff / 2.0, cfg.cutoff});
        emit(cfg, cfg.format == "json" ? spectrum_to_json(merged, lower, upper).dump(2) + "\n"
                                       : spectrum_to_csv(merged, lower, upper));
        return 0;
    }
    if (cfg.command == "measure") {
        const ExpPoly phi = load_poly(cfg.phi_spec);
        const ExpPoly psi = resolve_psi(cfg.psi_spec, phi);
        CrystallineMeasurePair pair =
            build_measure_pair(psi, phi, cfg.window, cfg.cutoff, opts);
        pair.phi_source = cfg.phi_spec;
        pair.psi_source = cfg.psi_spec;
        emit(cfg, measure_to_json(pair).dump(2) + "\n");
        if (!cfg.plot_prefix.empty()) emit_plot_data(pair, cfg.plot_prefix);
        return 0;
    }
    if (cfg.command == "verify") {
        const ExpPoly phi = load_poly(cfg.phi_spec);
        const ExpPoly psi = resolve_psi(cfg.psi_spec, phi);
        const std::vector<VerificationReport> reports = verify_suite(
            psi, phi, parse_gaussians(cfg.gaussians), cfg.window, cfg.cutoff,
            cfg.tolerance, opts);
        emit(cfg, reports_to_json(reports).dump(2) + "\n");
        bool all_pass = true;
        for (const VerificationReport& r : reports) all_pass = all_pass && r.pass;
        return all_pass ? 0 : 1;
    }
    if (cfg.command == "example1") {
        const Example1Report report = example1_analysis(cfg.delta, cfg.window, opts);
        emit(cfg, example1_to_json(report).dump(2) + "\n");
        return 0;
    }
    if (cfg.command == "scan-ap") {
        const std::vector<cplx> zeros = zeros_from_csv(read_file(cfg.zeros_path));
        const std::vector<ProgressionFinding> findings =
            progression_scan(zeros, cfg.min_len, cfg.min_diff, cfg.ap_tol);
        emit(cfg, findings_to_json(findings).dump(2) + "\n");
        return 0;
    }
    std::cerr << "unknown command: " << cfg.command << "\n";
    return 2;
}

}  // namespace

int run(const RunConfig& cfg) {
    RunConfig effective = cfg;
    if (const char* env = std::getenv("CRYSTALLINE_SEED")) {
        effective.seed = std::strtoull(env, nullptr, 10);
    }
    try {
        return dispatch(effective);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace crystalline
