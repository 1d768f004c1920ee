#include "crystalline/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace crystalline {

namespace {

constexpr double kSubsTol = 1e-8;
constexpr double kDerivUnderflow = 1e-14;

}  // namespace

bool check_subs(const ExpPoly& psi, const ExpPoly& phi, const ZeroSet& zs) {
    (void)phi;
    for (cplx z : zs.zeros) {
        if (std::abs(psi.evaluate(z)) > kSubsTol * psi.term_abs_sum(z)) return true;
    }
    return false;
}

std::vector<cplx> atom_coefficients(const ExpPoly& psi, const ExpPoly& phi,
                                    const ZeroSet& zs) {
    if (!check_subs(psi, phi, zs)) {
        throw SubsViolated("every zero of phi in the window is a zero of psi");
    }
    const ExpPoly dphi = phi.derivative();
    std::vector<cplx> out;
    out.reserve(zs.zeros.size());
    for (cplx z : zs.zeros) {
        const cplx d = dphi.evaluate(z);
        if (std::abs(d) < kDerivUnderflow) {
            throw DerivativeUnderflow("|phi'| below 1e-14 at a zero");
        }
        out.push_back(psi.evaluate(z) / d);
    }
    return out;
}

CrystallineMeasurePair build_measure_pair(const ExpPoly& psi, const ExpPoly& phi,
                                          Interval window, double cutoff,
                                          const FindOptions& opts) {
    const ZeroSet zs = find_zeros(phi, window, opts);
    const std::vector<cplx> cs = atom_coefficients(psi, phi, zs);

    Spectrum sp =
        merge_spectrum(expand_lower(psi, phi, cutoff), expand_upper(psi, phi, cutoff));

    CrystallineMeasurePair pair{psi, phi};
    pair.window = window;
    pair.cutoff = cutoff;
    pair.atoms.reserve(zs.zeros.size());
    for (std::size_t i = 0; i < zs.zeros.size(); ++i) {
        pair.atoms.push_back({zs.zeros[i], cs[i]});
    }
    pair.spectral_atoms = std::move(sp.entries);
    return pair;
}

std::vector<ProgressionFinding> progression_scan(const std::vector<cplx>& zeros,
                                                 int min_len, double min_diff,
                                                 double tol) {
    if (min_len < 3) {
        throw std::invalid_argument("min_len must be at least 3");
    }
    for (cplx z : zeros) {
        if (std::abs(z.imag()) > tol) {
            throw ComplexZeros("progression scan needs real zeros");
        }
    }
    std::vector<double> xs;
    xs.reserve(zeros.size());
    for (cplx z : zeros) xs.push_back(z.real());
    std::sort(xs.begin(), xs.end());

    auto match = [&](double target) {
        auto it = std::lower_bound(xs.begin(), xs.end(), target);
        if (it != xs.end() && std::abs(*it - target) <= tol) return true;
        if (it != xs.begin() && std::abs(*(it - 1) - target) <= tol) return true;
        return false;
    };

    std::vector<ProgressionFinding> out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
            const double d = xs[j] - xs[i];
            if (d < min_diff) continue;
            if (match(xs[i] - d)) continue;  // part of a progression found earlier
            int len = 2;
            while (match(xs[i] + static_cast<double>(len) * d)) ++len;
            if (len >= min_len) out.push_back({xs[i], d, len});
        }
    }
    return out;
}

std::vector<ProgressionFinding> progression_scan(const ZeroSet& zs, int min_len,
                                                 double min_diff, double tol) {
    return progression_scan(zs.zeros, min_len, min_diff, tol);
}

Example1Report example1_analysis(double delta, Interval window, const FindOptions& opts) {
    if (!(delta > 0.0 && delta <= 0.5)) {
        throw std::invalid_argument("delta must lie in (0, 1/2]");
    }
    const ExpPoly phi =
        from_trig(TrigKind::Sin, std::numbers::pi) + from_trig(TrigKind::Sin, 1.0, delta);

    Example1Report report{delta, std::asin(delta) / std::numbers::pi, window,
                          find_zeros(phi, window, opts)};

    report.per_k.reserve(report.zeros.zeros.size());
    report.projection.reserve(report.zeros.zeros.size());
    for (cplx z : report.zeros.zeros) {
        const double x = z.real();
        const long k = std::lround(x);
        const double dk = x - static_cast<double>(k);
        report.per_k.push_back({k, dk, std::abs(std::sin(std::numbers::pi * dk))});
        report.projection.push_back(x - std::floor(x + 0.5));
    }

    std::vector<double> sorted = report.projection;
    std::sort(sorted.begin(), sorted.end());
    long distinct = sorted.empty() ? 0 : 1;
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i] - sorted[i - 1] > 1e-6) ++distinct;
    }
    report.distinct_projection_count = distinct;

    report.ap_findings = progression_scan(report.zeros, 5, 0.5, 1e-6);
    return report;
}

}  // namespace crystalline
