#pragma once

#include <string>
#include <vector>

#include "crystalline/measure.hpp"

namespace crystalline {

/// Gaussian test function e^{-pi a (x - x0)^2}; entire in z, with
/// transform a^{-1/2} e^{-2 pi i s x0} e^{-pi s^2 / a} under the
/// convention f_hat(s) = integral f(x) e^{-2 pi i s x} dx.
struct Gaussian {
    double a = 1.0;
    double x0 = 0.0;
};

cplx eval_test(const Gaussian& f, cplx z);
cplx transform_test(const Gaussian& f, double s);

struct VerificationReport {
    Gaussian f{};
    cplx lhs{0.0, 0.0};
    cplx rhs{0.0, 0.0};
    double residual = 0.0;
    double lhs_tail = 0.0;
    double rhs_tail = 0.0;
    std::size_t atom_count = 0;
    std::size_t spectral_count = 0;
    Interval window{};
    double cutoff = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string status = "ok";
};

/// Evaluate both sides of the summation formula
/// sum c_lambda f(lambda) = sum a_s f_hat(s) over the window / cutoff
/// truncations. A pass requires residual <= tolerance + both tail bounds;
/// TailDominates is thrown when either tail bound alone exceeds the
/// tolerance (the truncation is too coarse to decide).
VerificationReport verify_formula(const ExpPoly& psi, const ExpPoly& phi,
                                  const Gaussian& f, Interval window, double cutoff,
                                  double tolerance, const FindOptions& opts = {});

/// verify_formula over a list of test functions, sharing one zero set and
/// spectrum. Per-entry tail errors are recorded in the report status
/// instead of aborting the remaining entries.
std::vector<VerificationReport> verify_suite(const ExpPoly& psi, const ExpPoly& phi,
                                             const std::vector<Gaussian>& fs,
                                             Interval window, double cutoff,
                                             double tolerance,
                                             const FindOptions& opts = {});

}  // namespace crystalline
