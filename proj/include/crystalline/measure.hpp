#pragma once

#include <string>
#include <vector>

#include "crystalline/spectrum.hpp"
#include "crystalline/zerofind.hpp"

namespace crystalline {

struct MeasureAtom {
    cplx position{0.0, 0.0};
    cplx weight{0.0, 0.0};
};

/// A crystalline measure restricted to a window, together with the
/// truncated spectrum of its Fourier transform.
struct CrystallineMeasurePair {
    ExpPoly psi;
    ExpPoly phi;
    std::string psi_source{};
    std::string phi_source{};
    Interval window{};
    double cutoff = 0.0;
    std::vector<MeasureAtom> atoms{};
    std::vector<SpectrumEntry> spectral_atoms{};
};

/// Window-limited test of the condition that the zeros of phi are not all
/// zeros of psi: true iff some zero carries |psi| above 1e-8 of the local
/// scale of psi. A true answer certifies the condition; a false one only
/// says no witness lies in the window.
bool check_subs(const ExpPoly& psi, const ExpPoly& phi, const ZeroSet& zs);

/// Atom weights psi(lambda)/phi'(lambda), in the order of zs.zeros.
/// Throws SubsViolated when check_subs fails and DerivativeUnderflow when
/// |phi'| < 1e-14 at a zero.
std::vector<cplx> atom_coefficients(const ExpPoly& psi, const ExpPoly& phi,
                                    const ZeroSet& zs);

CrystallineMeasurePair build_measure_pair(const ExpPoly& psi, const ExpPoly& phi,
                                          Interval window, double cutoff,
                                          const FindOptions& opts = {});

struct ProgressionFinding {
    double start = 0.0;
    double diff = 0.0;
    int length = 0;
};

/// Exhaustive scan for arithmetic progressions among real zeros: every pair
/// with difference >= min_diff is extended while the next predicted term
/// matches a zero within tol; maximal progressions of length >= min_len are
/// returned. Throws ComplexZeros when some zero has |Im| > tol.
std::vector<ProgressionFinding> progression_scan(const std::vector<cplx>& zeros,
                                                 int min_len, double min_diff,
                                                 double tol);
std::vector<ProgressionFinding> progression_scan(const ZeroSet& zs, int min_len,
                                                 double min_diff, double tol);

struct Example1Entry {
    long k = 0;
    double delta_k = 0.0;
    double abs_sin_pi_delta = 0.0;
};

/// Diagnostics for the family sin(pi z) + delta sin(z), 0 < delta <= 1/2.
struct Example1Report {
    double delta = 0.0;
    double gamma = 0.0;  // sin(pi*gamma) = delta
    Interval window{};
    ZeroSet zeros;
    std::vector<Example1Entry> per_k{};
    std::vector<double> projection{};  // zeros mod 1, reduced to [-1/2, 1/2)
    long distinct_projection_count = 0;
    std::vector<ProgressionFinding> ap_findings{};
};

Example1Report example1_analysis(double delta, Interval window,
                                 const FindOptions& opts = {});

}  // namespace crystalline
