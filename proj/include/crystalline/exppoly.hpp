#pragma once

#include <vector>

#include "crystalline/errors.hpp"
#include "crystalline/types.hpp"

namespace crystalline {

/// One exponential term b * e^{2*pi*i*alpha*z}. Frequencies are measured
/// in cycles per unit length, so sin(pi*z) has alpha = +-1/2.
struct Term {
    double alpha = 0.0;
    cplx b{0.0, 0.0};
};

/// A finite sum of exponential terms with real frequencies and complex
/// coefficients, kept in canonical form: frequencies strictly increasing,
/// duplicates (within kFreqTol) merged, relatively negligible coefficients
/// dropped. Values are immutable after construction and safe to share
/// across threads.
class ExpPoly {
public:
    /// Canonicalize an arbitrary term list. Throws EmptyPolynomial when the
    /// input is empty or every coefficient cancels.
    static ExpPoly make(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    double alpha(std::size_t j) const { return terms_[j].alpha; }
    const cplx& coeff(std::size_t j) const { return terms_[j].b; }

    /// Evaluate at a complex point. Terms are accumulated in ascending
    /// magnitude order. Throws Overflow when |2*pi*alpha*Im z| exceeds the
    /// double-precision exponent range.
    cplx evaluate(cplx z) const;

    /// Termwise derivative. A constant term drops out; differentiating a
    /// lone constant throws EmptyPolynomial.
    ExpPoly derivative() const;

    /// Multiply every coefficient by c (c == 0 throws EmptyPolynomial).
    ExpPoly scaled(cplx c) const;

    /// z -> -z, i.e. every frequency negated.
    ExpPoly mirrored() const;

    double max_abs_coeff() const;
    double max_abs_alpha() const;

    /// Sum of the term magnitudes |b_j e^{2*pi*i*alpha_j*z}|; the natural
    /// local scale for zero tolerances and boundary certificates.
    double term_abs_sum(cplx z) const;

    bool same_terms(const ExpPoly& other, double tol = 1e-12) const;

private:
    explicit ExpPoly(std::vector<Term> terms) : terms_(std::move(terms)) {}

    std::vector<Term> terms_;
};

ExpPoly operator+(const ExpPoly& p, const ExpPoly& q);
ExpPoly operator-(const ExpPoly& p, const ExpPoly& q);
ExpPoly operator*(cplx c, const ExpPoly& p);

enum class TrigKind { Sin, Cos };

/// Build scale*sin(rate*z) or scale*cos(rate*z) as a two-term polynomial.
/// The angular rate is converted to cycles: sin(rate*z) has frequencies
/// +-rate/(2*pi).
ExpPoly from_trig(TrigKind kind, double angular_rate, cplx scale = cplx(1.0));

/// Heights beyond which a single term of the polynomial dominates all the
/// others with the given ratio. All zeros lie in the open strip
/// -r_minus < Im z < r_plus.
struct StripBounds {
    double r_plus = 0.0;
    double r_minus = 0.0;
    double margin = 0.5;
};

/// Smallest y >= 0 with sum_{j>=2} |d_j/d_1| e^{-2*pi*(alpha_j-alpha_1)*y}
/// <= margin (bisection to 1e-12), and symmetrically below with the last
/// term dominant. Requires at least two terms (SingleTerm otherwise) and
/// 0 < margin < 1.
StripBounds strip_bounds(const ExpPoly& p, double margin = 0.5);

}  // namespace crystalline
