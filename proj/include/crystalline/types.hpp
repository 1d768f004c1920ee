#pragma once

#include <complex>

namespace crystalline {

using cplx = std::complex<double>;

/// Frequencies closer than this are treated as equal everywhere
/// (term canonicalization, spectrum merging, lattice clustering).
inline constexpr double kFreqTol = 1e-9;

/// Coefficients below this fraction of the largest one are dropped
/// during canonicalization and spectrum merging.
inline constexpr double kCoeffRelTol = 1e-14;

/// |exponent| beyond this would overflow exp() in double precision.
inline constexpr double kOverflowExponent = 709.0;

/// Seed for the deterministic rectangle perturbations; the CLI and the
/// CRYSTALLINE_SEED environment variable can override it.
inline constexpr std::uint64_t kDefaultSeed = 1729;

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    bool contains(double x) const { return x >= lo && x <= hi; }
};

}  // namespace crystalline
