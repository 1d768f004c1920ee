#include "crystalline/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace crystalline {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json poly_to_json(const ExpPoly& p) {
    json terms = json::array();
    for (const Term& t : p.terms()) {
        terms.push_back({{"alpha", t.alpha}, {"b_re", t.b.real()}, {"b_im", t.b.imag()}});
    }
    return json{{"terms", terms}};
}

ExpPoly poly_from_json(const json& j) {
    if (!j.contains("terms") || !j["terms"].is_array()) {
        throw IoError("polynomial JSON needs a 'terms' array");
    }
    std::vector<Term> terms;
    for (const json& t : j["terms"]) {
        terms.push_back({t.at("alpha").get<double>(),
                         cplx(t.at("b_re").get<double>(), t.at("b_im").get<double>())});
    }
    return ExpPoly::make(std::move(terms));
}

std::string zeros_to_csv(const ZeroSet& zs) {
    const ExpPoly dp = zs.poly.derivative();
    std::string out = "re,im,abs_phi,abs_dphi\n";
    for (std::size_t i = 0; i < zs.zeros.size(); ++i) {
        const cplx z = zs.zeros[i];
        out += format_g17(z.real()) + "," + format_g17(z.imag()) + "," +
               format_g17(std::abs(zs.poly.evaluate(z))) + "," +
               format_g17(std::abs(dp.evaluate(z))) + "\n";
    }
    return out;
}

json zeros_to_json(const ZeroSet& zs) {
    const ExpPoly dp = zs.poly.derivative();
    json zeros = json::array();
    for (cplx z : zs.zeros) {
        zeros.push_back({{"re", z.real()},
                         {"im", z.imag()},
                         {"abs_phi", std::abs(zs.poly.evaluate(z))},
                         {"abs_dphi", std::abs(dp.evaluate(z))}});
    }
    return json{{"phi", poly_to_json(zs.poly)},
                {"window", {zs.window.lo, zs.window.hi}},
                {"zeros", zeros},
                {"min_separation", zs.min_separation},
                {"min_abs_derivative", zs.min_abs_derivative},
                {"certified_count", zs.certified_count},
                {"strip", {{"r_plus", zs.strip.r_plus}, {"r_minus", zs.strip.r_minus}}}};
}

std::vector<cplx> zeros_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty zeros CSV");
    if (line.rfind("re,im", 0) != 0) throw IoError("zeros CSV must start with a header row");
    std::vector<cplx> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double re = 0.0, im = 0.0;
        if (std::sscanf(line.c_str(), "%lf,%lf", &re, &im) != 2) {
            throw IoError("malformed zeros CSV row: " + line);
        }
        out.push_back({re, im});
    }
    return out;
}

namespace {

void append_entries(std::string& out, const std::vector<SpectrumEntry>& entries,
                    const char* side) {
    for (const SpectrumEntry& e : entries) {
        out += format_g17(e.s) + "," + format_g17(e.a.real()) + "," +
               format_g17(e.a.imag()) + "," + side + "\n";
    }
}

json entries_to_json(const std::vector<SpectrumEntry>& entries) {
    json arr = json::array();
    for (const SpectrumEntry& e : entries) {
        arr.push_back({{"s", e.s}, {"a_re", e.a.real()}, {"a_im", e.a.imag()}});
    }
    return arr;
}

}  // namespace

std::string spectrum_to_csv(const Spectrum& merged, const SpectrumSide& lower,
                            const SpectrumSide& upper) {
    std::string out = "s,a_re,a_im,side\n";
    append_entries(out, merged.entries, "merged");
    append_entries(out, upper.entries, "upper");
    append_entries(out, lower.entries, "lower");
    return out;
}

json spectrum_to_json(const Spectrum& merged, const SpectrumSide& lower,
                      const SpectrumSide& upper) {
    json growth = json::array();
    for (const auto& [r, n] : merged.growth.counts) growth.push_back({{"r", r}, {"count", n}});
    return json{{"cutoff", merged.cutoff},
                {"entries", entries_to_json(merged.entries)},
                {"sup_coeff", merged.sup_coeff},
                {"growth", growth},
                {"m_hat", merged.growth.m_hat},
                {"upper",
                 {{"threshold", upper.threshold},
                  {"expansion_order", upper.expansion_order},
                  {"entries", entries_to_json(upper.entries)}}},
                {"lower",
                 {{"threshold", lower.threshold},
                  {"expansion_order", lower.expansion_order},
                  {"entries", entries_to_json(lower.entries)}}}};
}

json measure_to_json(const CrystallineMeasurePair& pair) {
    json atoms = json::array();
    for (const MeasureAtom& a : pair.atoms) {
        atoms.push_back({{"re", a.position.real()},
                         {"im", a.position.imag()},
                         {"c_re", a.weight.real()},
                         {"c_im", a.weight.imag()}});
    }
    return json{{"phi", poly_to_json(pair.phi)},
                {"psi", poly_to_json(pair.psi)},
                {"phi_source", pair.phi_source},
                {"psi_source", pair.psi_source},
                {"window", {pair.window.lo, pair.window.hi}},
                {"cutoff", pair.cutoff},
                {"atoms", atoms},
                {"spectral_atoms", entries_to_json(pair.spectral_atoms)}};
}

CrystallineMeasurePair measure_from_json(const json& j) {
    CrystallineMeasurePair pair{poly_from_json(j.at("psi")), poly_from_json(j.at("phi"))};
    pair.phi_source = j.value("phi_source", "");
    pair.psi_source = j.value("psi_source", "");
    pair.window = {j.at("window").at(0).get<double>(), j.at("window").at(1).get<double>()};
    pair.cutoff = j.at("cutoff").get<double>();
    for (const json& a : j.at("atoms")) {
        pair.atoms.push_back({cplx(a.at("re").get<double>(), a.at("im").get<double>()),
                              cplx(a.at("c_re").get<double>(), a.at("c_im").get<double>())});
    }
    for (const json& e : j.at("spectral_atoms")) {
        pair.spectral_atoms.push_back(
            {e.at("s").get<double>(), cplx(e.at("a_re").get<double>(), e.at("a_im").get<double>())});
    }
    return pair;
}

json example1_to_json(const Example1Report& report) {
    json per_k = json::array();
    for (const Example1Entry& e : report.per_k) {
        per_k.push_back(
            {{"k", e.k}, {"delta_k", e.delta_k}, {"abs_sin_pi_delta_k", e.abs_sin_pi_delta}});
    }
    json findings = json::array();
    for (const ProgressionFinding& f : report.ap_findings) {
        findings.push_back({{"start", f.start}, {"diff", f.diff}, {"length", f.length}});
    }
    return json{{"delta", report.delta},
                {"gamma", report.gamma},
                {"window", {report.window.lo, report.window.hi}},
                {"zero_count", report.zeros.zeros.size()},
                {"min_separation", report.zeros.min_separation},
                {"min_abs_derivative", report.zeros.min_abs_derivative},
                {"per_k", per_k},
                {"projection", report.projection},
                {"distinct_projection_count", report.distinct_projection_count},
                {"ap_findings", findings}};
}

json reports_to_json(const std::vector<VerificationReport>& reports) {
    json arr = json::array();
    for (const VerificationReport& r : reports) {
        arr.push_back({{"a", r.f.a},
                       {"x0", r.f.x0},
                       {"lhs_re", r.lhs.real()},
                       {"lhs_im", r.lhs.imag()},
                       {"rhs_re", r.rhs.real()},
                       {"rhs_im", r.rhs.imag()},
                       {"residual", r.residual},
                       {"lhs_tail", r.lhs_tail},
                       {"rhs_tail", r.rhs_tail},
                       {"pass", r.pass},
                       {"status", r.status}});
    }
    return json{{"reports", arr}};
}

json findings_to_json(const std::vector<ProgressionFinding>& findings) {
    json arr = json::array();
    for (const ProgressionFinding& f : findings) {
        arr.push_back({{"start", f.start}, {"diff", f.diff}, {"length", f.length}});
    }
    return json{{"findings", arr}};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << content;
    if (!out) throw IoError("write failed for " + path);
}

void emit_plot_data(const CrystallineMeasurePair& pair, const std::string& prefix) {
    std::string atoms = "re,im,c_re,c_im\n";
    for (const MeasureAtom& a : pair.atoms) {
        atoms += format_g17(a.position.real()) + "," + format_g17(a.position.imag()) + "," +
                 format_g17(a.weight.real()) + "," + format_g17(a.weight.imag()) + "\n";
    }
    std::string spectral = "s,a_re,a_im\n";
    for (const SpectrumEntry& e : pair.spectral_atoms) {
        spectral += format_g17(e.s) + "," + format_g17(e.a.real()) + "," +
                    format_g17(e.a.imag()) + "\n";
    }
    write_file(prefix + ".atoms.csv", atoms);
    write_file(prefix + ".spectral.csv", spectral);
}

}  // namespace crystalline
