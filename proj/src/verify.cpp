#include "crystalline/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace crystalline {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRealZeroTol = 1e-9;

struct PreparedPair {
    ZeroSet zs;
    std::vector<cplx> coeffs;
    Spectrum spectrum;
    bool real_zeros = false;
    double envelope_slope = 0.0;      // fitted d log|a_s| / ds
    double envelope_intercept = 0.0;  // at s = 0
};

PreparedPair prepare(const ExpPoly& psi, const ExpPoly& phi, Interval window,
                     double cutoff, const FindOptions& opts) {
    PreparedPair prep{find_zeros(phi, window, opts), {}, {}};
    prep.coeffs = atom_coefficients(psi, phi, prep.zs);
    prep.spectrum =
        merge_spectrum(expand_lower(psi, phi, cutoff), expand_upper(psi, phi, cutoff));

    prep.real_zeros = std::all_of(prep.zs.zeros.begin(), prep.zs.zeros.end(), [](cplx z) {
        return std::abs(z.imag()) <= kRealZeroTol;
    });

    if (!prep.real_zeros) {
        // log-linear envelope of |a_s| for the exponential-growth case
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        long n = 0;
        for (const SpectrumEntry& e : prep.spectrum.entries) {
            const double mag = std::abs(e.a);
            if (mag <= 0.0) continue;
            const double x = e.s, y = std::log(mag);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++n;
        }
        if (n >= 2) {
            const double denom = n * sxx - sx * sx;
            prep.envelope_slope = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
            prep.envelope_intercept = (sy - prep.envelope_slope * sx) / n;
        }
    }
    return prep;
}

VerificationReport report_for(const PreparedPair& prep, const Gaussian& f,
                              Interval window, double cutoff, double tolerance,
                              bool throw_on_tail) {
    VerificationReport rep;
    rep.f = f;
    rep.window = window;
    rep.cutoff = cutoff;
    rep.tolerance = tolerance;
    rep.atom_count = prep.zs.zeros.size();
    rep.spectral_count = prep.spectrum.entries.size();

    cplx lhs = 0.0;
    for (std::size_t i = 0; i < prep.zs.zeros.size(); ++i) {
        lhs += prep.coeffs[i] * eval_test(f, prep.zs.zeros[i]);
    }
    cplx rhs = 0.0;
    for (const SpectrumEntry& e : prep.spectrum.entries) {
        rhs += e.a * transform_test(f, e.s);
    }
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.residual = std::abs(lhs - rhs);

    // window tail: max|c| * atom density * Gaussian mass beyond the nearer
    // window edge
    double max_c = 0.0;
    for (cplx c : prep.coeffs) max_c = std::max(max_c, std::abs(c));
    const double density =
        static_cast<double>(prep.zs.zeros.size()) / std::max(window.length(), 1e-300);
    const double x_edge = std::min(f.x0 - window.lo, window.hi - f.x0);
    rep.lhs_tail =
        max_c * density * std::erfc(std::sqrt(kPi * f.a) * x_edge) / std::sqrt(f.a);

    // spectral tail: |a_s| envelope at the cutoff times the transform mass
    // beyond it; constant envelope for real zero sets, log-linear otherwise
    const double envelope =
        prep.real_zeros
            ? prep.spectrum.sup_coeff
            : std::exp(prep.envelope_intercept + std::abs(prep.envelope_slope) * cutoff);
    rep.rhs_tail = envelope * std::erfc(std::sqrt(kPi / f.a) * cutoff);

    if (rep.lhs_tail > tolerance || rep.rhs_tail > tolerance) {
        if (throw_on_tail) {
            throw TailDominates(
                "tail bound exceeds the tolerance: window or cutoff too small");
        }
        rep.pass = false;
        rep.status = "tail_dominates";
        return rep;
    }
    rep.pass = rep.residual <= tolerance + rep.lhs_tail + rep.rhs_tail;
    return rep;
}

}  // namespace

cplx eval_test(const Gaussian& f, cplx z) {
    const cplx w = z - cplx(f.x0);
    const cplx exponent = -kPi * f.a * w * w;
    // a very negative real part just underflows to zero
    if (exponent.real() > kOverflowExponent) {
        throw Overflow("Gaussian exponent exceeds double range");
    }
    return std::exp(exponent);
}

cplx transform_test(const Gaussian& f, double s) {
    const cplx phase = std::exp(cplx(0.0, -2.0 * kPi * s * f.x0));
    return phase * std::exp(-kPi * s * s / f.a) / std::sqrt(f.a);
}

VerificationReport verify_formula(const ExpPoly& psi, const ExpPoly& phi,
                                  const Gaussian& f, Interval window, double cutoff,
                                  double tolerance, const FindOptions& opts) {
    const PreparedPair prep = prepare(psi, phi, window, cutoff, opts);
    return report_for(prep, f, window, cutoff, tolerance, /*throw_on_tail=*/true);
}

std::vector<VerificationReport> verify_suite(const ExpPoly& psi, const ExpPoly& phi,
                                             const std::vector<Gaussian>& fs,
                                             Interval window, double cutoff,
                                             double tolerance, const FindOptions& opts) {
    if (fs.empty()) return {};
    const PreparedPair prep = prepare(psi, phi, window, cutoff, opts);
    std::vector<VerificationReport> out;
    out.reserve(fs.size());
    for (const Gaussian& f : fs) {
        try {
            out.push_back(
                report_for(prep, f, window, cutoff, tolerance, /*throw_on_tail=*/false));
        } catch (const Overflow& e) {
            VerificationReport rep;
            rep.f = f;
            rep.window = window;
            rep.cutoff = cutoff;
            rep.tolerance = tolerance;
            rep.pass = false;
            rep.status = std::string("overflow: ") + e.what();
            out.push_back(rep);
        }
    }
    return out;
}

}  // namespace crystalline
