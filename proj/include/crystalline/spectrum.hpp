#pragma once

#include <utility>
#include <vector>

#include "crystalline/exppoly.hpp"
#include "crystalline/types.hpp"

namespace crystalline {

enum class Side { Lower, Upper };

struct SpectrumEntry {
    double s = 0.0;
    cplx a{0.0, 0.0};
};

/// One half-plane expansion of psi/phi, truncated at the frequency cutoff.
/// Upper side: psi(z)/phi(z) = sum p_s e^{2 pi i s z} for Im z >= threshold,
/// with all s >= beta_1 - alpha_1. Lower side: the mirror expansion in
/// e^{-2 pi i s z} valid for Im z <= -threshold, with all
/// s >= alpha_m - beta_l.
struct SpectrumSide {
    Side side = Side::Upper;
    double threshold = 0.0;
    double cutoff = 0.0;
    int expansion_order = 0;
    ExpPoly psi;
    ExpPoly phi;
    std::vector<SpectrumEntry> entries{};
};

struct GrowthProfile {
    std::vector<std::pair<double, long>> counts{};
    double m_hat = 0.0;  // least-squares slope of log count vs log radius
};

/// The merged Fourier-side data (S, a_s) of the summation formula.
struct Spectrum {
    std::vector<SpectrumEntry> entries{};
    double cutoff = 0.0;
    double sup_coeff = 0.0;
    GrowthProfile growth{};
};

SpectrumSide expand_upper(const ExpPoly& psi, const ExpPoly& phi, double cutoff);
SpectrumSide expand_lower(const ExpPoly& psi, const ExpPoly& phi, double cutoff);

/// a_s = q_s/(2 pi i) on S_-, a_s = -p_s/(2 pi i) on -S_+; coinciding
/// frequencies are summed, entries below 1e-14 of the largest dropped.
Spectrum merge_spectrum(const SpectrumSide& lower, const SpectrumSide& upper);

/// Counts of entries with |s| < r for each radius (radii must increase),
/// plus the empirical growth exponent; recorded into sp.
GrowthProfile growth_profile(Spectrum& sp, const std::vector<double>& radii);

/// sup |a_s| of the merged spectrum recomputed at each cutoff.
std::vector<std::pair<double, double>> coeff_sup_profile(
    const ExpPoly& psi, const ExpPoly& phi, const std::vector<double>& cutoffs);

}  // namespace crystalline
