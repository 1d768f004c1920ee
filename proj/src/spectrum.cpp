#include "crystalline/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

namespace crystalline {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kBlowupLimit = 1e300;
constexpr std::size_t kMaxLatticeNodes = 5'000'000;

void check_magnitude(cplx c) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()) ||
        std::abs(c) > kBlowupLimit) {
        throw BlowupGuard("expansion coefficient exceeded 1e300");
    }
}

// Coefficients T(f) of the formal series 1/(1+h) = sum_k (-h)^k on the
// additive frequency lattice generated by the offsets of h, truncated at
// f <= bound. Computed by the recurrence T(0) = 1,
// T(f) = -sum_j h_j T(f - g_j), walking the lattice in ascending frequency
// order; this keeps every intermediate bounded by the result scale, which
// the explicit powers of h do not (their multinomial coefficients overflow
// the accuracy long before the summed series does).
std::vector<SpectrumEntry> inverse_series(const std::vector<SpectrumEntry>& h,
                                          double bound) {
    using Node = std::pair<double, cplx>;
    auto cmp = [](const Node& a, const Node& b) { return a.first > b.first; };
    std::priority_queue<Node, std::vector<Node>, decltype(cmp)> heap(cmp);
    heap.push({0.0, cplx(1.0)});

    std::vector<SpectrumEntry> out;
    std::size_t processed = 0;
    while (!heap.empty()) {
        const double f = heap.top().first;
        cplx acc = 0.0;
        while (!heap.empty() && heap.top().first
                 <= f + kFreqTol) {
            acc += heap.top().second;
            heap.pop();
        }
        check_magnitude(acc);
        if (acc == cplx(0.0)) continue;
        out.push_back({f, acc});
        if (++processed > kMaxLatticeNodes) {
            throw BlowupGuard("expansion lattice exceeded the node limit");
        }
        for (const auto& [g, r] : h) {
            const double fc = f + g;
            if (fc <= bound + kFreqTol) heap.push({fc, -r * acc});
        }
    }
    return out;
}

// Sort by frequency and merge clusters within kFreqTol, keeping the
// smallest frequency of each cluster.
std::vector<SpectrumEntry> cluster(std::vector<SpectrumEntry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.s < b.s; });
    std::vector<SpectrumEntry> out;
    out.reserve(entries.size());
    for (const SpectrumEntry& e : entries) {
        if (!out.empty() && e.s - out.back().s <= kFreqTol) {
            out.back().a += e.a;
        } else {
            out.push_back(e);
        }
    }
    std::erase_if(out, [](const SpectrumEntry& e) { return std::abs(e.a) < 1e-300; });
    return out;
}

}  // namespace

SpectrumSide expand_upper(const ExpPoly& psi, const ExpPoly& phi, double cutoff) {
    if (phi.size() < 2) {
        throw SingleTerm("expansion needs at least two phi terms");
    }
    const double s_min = psi.alpha(0) - phi.alpha(0);
    if (cutoff < s_min - kFreqTol) {
        throw CutoffTooSmall("cutoff " + std::to_string(cutoff) +
                             " lies below the lowest frequency " + std::to_string(s_min));
    }
    const double f_int = cutoff - s_min;

    std::vector<SpectrumEntry> h;
    h.reserve(phi.size() - 1);
    for (std::size_t j = 1; j < phi.size(); ++j) {
        const cplx ratio = phi.coeff(j) / phi.coeff(0);
        check_magnitude(ratio);
        h.push_back({phi.alpha(j) - phi.alpha(0), ratio});
    }
    const double g_min = h.front().s;
    const int order = static_cast<int>(std::ceil(f_int / g_min)) + 1;

    const std::vector<SpectrumEntry> inv = inverse_series(h, f_int);

    std::vector<SpectrumEntry> entries;
    entries.reserve(inv.size() * psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) {
        const double shift = psi.alpha(i) - phi.alpha(0);
        const cplx scale = psi.coeff(i) / phi.coeff(0);
        for (const SpectrumEntry& t : inv) {
            const double s = shift + t.s;
            if (s > cutoff + kFreqTol) break;  // inv is sorted ascending
            entries.push_back({s, scale * t.a});
        }
    }
    entries = cluster(std::move(entries));
    for (const SpectrumEntry& e : entries) check_magnitude(e.a);

    return SpectrumSide{Side::Upper, strip_bounds(phi).r_plus, cutoff,
                        order,       psi,                      phi,
                        std::move(entries)};
}

SpectrumSide expand_lower(const ExpPoly& psi, const ExpPoly& phi, double cutoff) {
    SpectrumSide side = expand_upper(psi.mirrored(), phi.mirrored(), cutoff);
    side.side = Side::Lower;
    side.psi = psi;
    side.phi = phi;
    // threshold of the mirrored upper half-plane == r_minus of phi
    return side;
}

Spectrum merge_spectrum(const SpectrumSide& lower, const SpectrumSide& upper) {
    if (lower.side != Side::Lower || upper.side != Side::Upper) {
        throw std::invalid_argument("merge_spectrum needs one lower and one upper side");
    }
    if (std::abs(lower.cutoff - upper.cutoff) > kFreqTol) {
        throw CutoffMismatch("sides computed at different cutoffs");
    }
    if (!lower.psi.same_terms(upper.psi) || !lower.phi.same_terms(upper.phi)) {
        throw std::invalid_argument("sides computed from different polynomials");
    }

    const cplx two_pi_i(0.0, kTwoPi);
    std::vector<SpectrumEntry> merged;
    merged.reserve(lower.entries.size() + upper.entries.size());
    for (const SpectrumEntry& e : lower.entries) merged.push_back({e.s, e.a / two_pi_i});
    for (const SpectrumEntry& e : upper.entries) merged.push_back({-e.s, -e.a / two_pi_i});
    merged = cluster(std::move(merged));

    double sup = 0.0;
    for (const SpectrumEntry& e : merged) sup = std::max(sup, std::abs(e.a));
    std::erase_if(merged,
                  [&](const SpectrumEntry& e) { return std::abs(e.a) < kCoeffRelTol * sup; });

    return Spectrum{std::move(merged), lower.cutoff, sup};
}

GrowthProfile growth_profile(Spectrum& sp, const std::vector<double>& radii) {
    for (std::size_t i = 1; i < radii.size(); ++i) {
        if (radii[i] <= radii[i - 1]) {
            throw std::invalid_argument("radii must be strictly increasing");
        }
    }
    GrowthProfile profile;
    for (double r : radii) {
        long n = 0;
        for (const SpectrumEntry& e : sp.entries) {
            if (std::abs(e.s) < r) ++n;
        }
        profile.counts.push_back({r, n});
    }

    // least squares slope of log(count) on log(r), positive counts only
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    long n_pts = 0;
    for (const auto& [r, n] : profile.counts) {
        if (n < 1 || r <= 0.0) continue;
        const double x = std::log(r), y = std::log(static_cast<double>(n));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n_pts;
    }
    if (n_pts >= 2) {
        const double denom = n_pts * sxx - sx * sx;
        profile.m_hat = denom != 0.0 ? (n_pts * sxy - sx * sy) / denom : 0.0;
    }
    sp.growth = profile;
    return profile;
}

std::vector<std::pair<double, double>> coeff_sup_profile(
    const ExpPoly& psi, const ExpPoly& phi, const std::vector<double>& cutoffs) {
    for (std::size_t i = 1; i < cutoffs.size(); ++i) {
        if (cutoffs[i] <= cutoffs[i - 1]) {
            throw std::invalid_argument("cutoffs must be strictly increasing");
        }
    }
    std::vector<std::pair<double, double>> out;
    out.reserve(cutoffs.size());
    for (double f : cutoffs) {
        const Spectrum sp = merge_spectrum(expand_lower(psi, phi, f), expand_upper(psi, phi, f));
        out.push_back({f, sp.sup_coeff});
    }
    return out;
}

}  // namespace crystalline
