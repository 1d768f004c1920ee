#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "crystalline/measure.hpp"
#include "crystalline/spectrum.hpp"
#include "crystalline/verify.hpp"
#include "crystalline/zerofind.hpp"

namespace crystalline {

using json = nlohmann::json;

/// 17-significant-digit decimal formatting used by every CSV writer.
std::string format_g17(double v);

json poly_to_json(const ExpPoly& p);
ExpPoly poly_from_json(const json& j);

std::string zeros_to_csv(const ZeroSet& zs);
json zeros_to_json(const ZeroSet& zs);
std::vector<cplx> zeros_from_csv(const std::string& text);

std::string spectrum_to_csv(const Spectrum& merged, const SpectrumSide& lower,
                            const SpectrumSide& upper);
json spectrum_to_json(const Spectrum& merged, const SpectrumSide& lower,
                      const SpectrumSide& upper);

json measure_to_json(const CrystallineMeasurePair& pair);
CrystallineMeasurePair measure_from_json(const json& j);

json example1_to_json(const Example1Report& report);
json reports_to_json(const std::vector<VerificationReport>& reports);
json findings_to_json(const std::vector<ProgressionFinding>& findings);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// Write <prefix>.atoms.csv and <prefix>.spectral.csv for plotting.
void emit_plot_data(const CrystallineMeasurePair& pair, const std::string& prefix);

}  // namespace crystalline
