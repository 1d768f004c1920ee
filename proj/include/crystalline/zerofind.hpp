#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "crystalline/exppoly.hpp"
#include "crystalline/types.hpp"

namespace crystalline {

struct Rect {
    double x_min = 0.0, x_max = 0.0;
    double y_min = 0.0, y_max = 0.0;

    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    cplx center() const { return {0.5 * (x_min + x_max), 0.5 * (y_min + y_max)}; }
    bool contains(cplx z, double slack = 0.0) const {
        return z.real() >= x_min - slack && z.real() <= x_max + slack &&
               z.imag() >= y_min - slack && z.imag() <= y_max + slack;
    }
};

struct CountOptions {
    std::uint64_t seed = kDefaultSeed;
    int max_perturbations = 8;
};

struct FindOptions {
    CountOptions count{};
    double margin = 0.5;    // strip-bound dominance margin
    double pad = 0.1;       // extra height beyond the strip bounds
    double min_box = 1e-6;  // below this an unsplittable box means a multiple zero
};

/// Zeros of one polynomial on a window of the strip, with the certificates
/// and diagnostics attached. certified_count is the argument-principle
/// count over the rectangle actually walked (it can exceed zeros.size()
/// only if that rectangle had to be inflated past the window).
struct ZeroSet {
    ExpPoly poly;
    Interval window{};
    std::vector<cplx> zeros{};
    StripBounds strip{};
    double min_separation = std::numeric_limits<double>::infinity();
    double min_abs_derivative = std::numeric_limits<double>::infinity();
    std::vector<double> newton_residuals{};
    long certified_count = 0;
};

/// Absolute tolerance below which |p(z)| counts as zero near z, scaled to
/// the polynomial and to the height of the strip.
double zero_tolerance(const ExpPoly& p, cplx z);

/// Number of zeros of p inside r, computed as the winding number of p over
/// the boundary with adaptive phase tracking (every accepted step changes
/// arg p by less than pi/2). If the |p| lower-bound certificate fails on
/// the boundary, the rectangle is inflated by a seeded pseudo-random factor
/// in [1%, 5%] and the walk retried, up to max_perturbations times; then
/// BoundaryTooClose is thrown.
long count_zeros_rect(const ExpPoly& p, const Rect& r, const CountOptions& opts = {});

/// All zeros of p with real part in the closed window. The search rectangle
/// is window x [-r_minus - pad, r_plus + pad]; it is subdivided until every
/// piece holds at most one zero (counts certified by the argument principle,
/// split lines nudged deterministically away from zeros), then each zero is
/// polished by Newton iteration. Throws NonSimpleZero when a multiple zero
/// blocks subdivision below min_box.
ZeroSet find_zeros(const ExpPoly& p, Interval window, const FindOptions& opts = {});

/// Newton polish from z0: iterate until |p(z)| <= zero_tolerance or 50
/// steps. Throws NewtonDivergence when an iterate leaves the unit disk
/// around z0 or the iteration fails to converge, DerivativeUnderflow when
/// |p'| < 1e-14 at an iterate.
cplx refine_zero(const ExpPoly& p, cplx z0, int max_steps = 50);

/// Minimum of |p'| over the zeros; recorded into zs.
double min_abs_derivative(const ExpPoly& p, ZeroSet& zs);

/// Minimum pairwise distance of the zeros (+infinity for fewer than two).
double separation(const ZeroSet& zs);

}  // namespace crystalline
