#include "crystalline/exppoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace crystalline {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

ExpPoly ExpPoly::make(std::vector<Term> terms) {
    if (terms.empty()) {
        throw EmptyPolynomial("no terms given");
    }
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.alpha < b.alpha; });

    // Merge runs of frequencies within kFreqTol of the first frequency of
    // each run; the run keeps that smallest frequency.
    std::vector<Term> merged;
    merged.reserve(terms.size());
    for (const Term& t : terms) {
        if (!merged.empty() && t.alpha - merged.back().alpha <= kFreqTol) {
            merged.back().b += t.b;
        } else {
            merged.push_back(t);
        }
    }

    double max_abs = 0.0;
    for (const Term& t : merged) max_abs = std::max(max_abs, std::abs(t.b));
    const double drop = kCoeffRelTol * max_abs;

    std::vector<Term> kept;
    kept.reserve(merged.size());
    for (const Term& t : merged) {
        if (std::abs(t.b) > drop) kept.push_back(t);
    }
    if (kept.empty()) {
        throw EmptyPolynomial("all coefficients cancel");
    }
    return ExpPoly(std::move(kept));
}

cplx ExpPoly::evaluate(cplx z) const {
    const double y = z.imag();
    std::vector<cplx> values(terms_.size());
    for (std::size_t j = 0; j < terms_.size(); ++j) {
        const double exponent = kTwoPi * terms_[j].alpha * y;
        if (std::abs(exponent) > kOverflowExponent) {
            throw Overflow("exponent magnitude " + std::to_string(exponent) +
                           " exceeds double range");
        }
        values[j] = terms_[j].b * std::exp(cplx(0.0, kTwoPi * terms_[j].alpha) * z);
    }
    // Accumulate small terms first.
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(values[a]) < std::abs(values[b]);
    });
    cplx sum = 0.0;
    for (std::size_t j : order) sum += values[j];
    return sum;
}

ExpPoly ExpPoly::derivative() const {
    if (terms_.size() == 1 && std::abs(terms_[0].alpha) <= kFreqTol) {
        throw EmptyPolynomial("derivative of a constant");
    }
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const Term& t : terms_) {
        out.push_back({t.alpha, t.b * cplx(0.0, kTwoPi * t.alpha)});
    }
    return make(std::move(out));
}

ExpPoly ExpPoly::scaled(cplx c) const {
    if (c == cplx(0.0)) {
        throw EmptyPolynomial("scaling by zero");
    }
    std::vector<Term> out = terms_;
    for (Term& t : out) t.b *= c;
    return ExpPoly(std::move(out));
}

ExpPoly ExpPoly::mirrored() const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        out.push_back({-it->alpha, it->b});
    }
    return ExpPoly(std::move(out));
}

double ExpPoly::max_abs_coeff() const {
    double m = 0.0;
    for (const Term& t : terms_) m = std::max(m, std::abs(t.b));
    return m;
}

double ExpPoly::max_abs_alpha() const {
    double m = 0.0;
    for (const Term& t : terms_) m = std::max(m, std::abs(t.alpha));
    return m;
}

double ExpPoly::term_abs_sum(cplx z) const {
    const double y = z.imag();
    double sum = 0.0;
    for (const Term& t : terms_) {
        const double exponent = -kTwoPi * t.alpha * y;
        if (std::abs(exponent) > kOverflowExponent) {
            throw Overflow("exponent magnitude " + std::to_string(exponent) +
                           " exceeds double range");
        }
        sum += std::abs(t.b) * std::exp(exponent);
    }
    return sum;
}

bool ExpPoly::same_terms(const ExpPoly& other, double tol) const {
    if (terms_.size() != other.terms_.size()) return false;
    for (std::size_t j = 0; j < terms_.size(); ++j) {
        if (std::abs(terms_[j].alpha - other.terms_[j].alpha) > tol) return false;
        if (std::abs(terms_[j].b - other.terms_[j].b) > tol * (1.0 + std::abs(terms_[j].b))) {
            return false;
        }
    }
    return true;
}

ExpPoly operator+(const ExpPoly& p, const ExpPoly& q) {
    std::vector<Term> all = p.terms();
    all.insert(all.end(), q.terms().begin(), q.terms().end());
    return ExpPoly::make(std::move(all));
}

ExpPoly operator-(const ExpPoly& p, const ExpPoly& q) {
    return p + q.scaled(cplx(-1.0));
}

ExpPoly operator*(cplx c, const ExpPoly& p) { return p.scaled(c); }

ExpPoly from_trig(TrigKind kind, double angular_rate, cplx scale) {
    if (!(angular_rate > 0.0)) {
        throw std::invalid_argument("angular_rate must be positive");
    }
    const double alpha = angular_rate / kTwoPi;
    const cplx half = 0.5 * scale;
    std::vector<Term> terms;
    if (kind == TrigKind::Sin) {
        terms = {{-alpha, cplx(0.0, 1.0) * half}, {alpha, cplx(0.0, -1.0) * half}};
    } else {
        terms = {{-alpha, half}, {alpha, half}};
    }
    return ExpPoly::make(std::move(terms));
}

namespace {

// Dominance ratio of all terms against the anchor term at height y;
// gaps[] holds the positive frequency offsets, ratios[] the |d_j/d_anchor|.
double dominance_ratio(const std::vector<double>& gaps,
                       const std::vector<double>& ratios, double y) {
    double sum = 0.0;
    for (std::size_t j = 0; j < gaps.size(); ++j) {
        sum += ratios[j] * std::exp(-kTwoPi * gaps[j] * y);
    }
    return sum;
}

double solve_height(const std::vector<double>& gaps, const std::vector<double>& ratios,
                    double margin) {
    if (dominance_ratio(gaps, ratios, 0.0) <= margin) return 0.0;
    double lo = 0.0, hi = 1.0;
    while (dominance_ratio(gaps, ratios, hi) > margin) {
        hi *= 2.0;
        if (hi > 1e6) throw Error("strip bound exceeds 1e6");
    }
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (dominance_ratio(gaps, ratios, mid) <= margin ? hi : lo) = mid;
    }
    return hi;
}

}  // namespace

StripBounds strip_bounds(const ExpPoly& p, double margin) {
    if (p.size() < 2) {
        throw SingleTerm("strip bounds need at least two terms");
    }
    if (!(margin > 0.0 && margin < 1.0)) {
        throw std::invalid_argument("margin must lie in (0,1)");
    }
    const std::size_t m = p.size();
    std::vector<double> gaps, ratios;

    for (std::size_t j = 1; j < m; ++j) {
        gaps.push_back(p.alpha(j) - p.alpha(0));
        ratios.push_back(std::abs(p.coeff(j) / p.coeff(0)));
    }
    const double r_plus = solve_height(gaps, ratios, margin);

    gaps.clear();
    ratios.clear();
    for (std::size_t j = 0; j + 1 < m; ++j) {
        gaps.push_back(p.alpha(m - 1) - p.alpha(j));
        ratios.push_back(std::abs(p.coeff(j) / p.coeff(m - 1)));
    }
    const double r_minus = solve_height(gaps, ratios, margin);

    return StripBounds{r_plus, r_minus, margin};
}

}  // namespace crystalline
