#include "crystalline/zerofind.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>

namespace crystalline {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPi = std::numbers::pi;

// Accepted phase step; strictly below pi/2.
constexpr double kMaxPhaseStep = 0.999 * (kPi / 2.0);
constexpr int kMaxHalvings = 48;
constexpr double kDerivUnderflow = 1e-14;

// Certificate: boundary samples must satisfy |p| >= 10 * (local evaluation
// error bound); the error bound is taken as 8*m*eps times the term-magnitude
// sum.
double certificate_floor(const ExpPoly& p, cplx z) {
    const double eps = std::numeric_limits<double>::epsilon();
    return 10.0 * 8.0 * static_cast<double>(p.size()) * eps * p.term_abs_sum(z);
}

class PhaseWalker {
public:
    explicit PhaseWalker(const ExpPoly& p) : p_(p) {
        max_alpha_ = std::max(p.max_abs_alpha(), 1e-9);
    }

    // Winding number of p over the rectangle boundary, or nullopt when the
    // certificate fails somewhere on it.
    std::optional<long> winding(const Rect& r) const {
        const cplx c0{r.x_min, r.y_min}, c1{r.x_max, r.y_min};
        const cplx c2{r.x_max, r.y_max}, c3{r.x_min, r.y_max};
        double total = 0.0;
        for (const auto& [a, b] :
             {std::pair{c0, c1}, {c1, c2}, {c2, c3}, {c3, c0}}) {
            auto d = edge(a, b);
            if (!d) return std::nullopt;
            total += *d;
        }
        const double w = total / kTwoPi;
        const long n = std::lround(w);
        if (std::abs(w - static_cast<double>(n)) > 0.05 || n < 0) return std::nullopt;
        return n;
    }

private:
    std::optional<cplx> checked_eval(cplx z) const {
        const cplx f = p_.evaluate(z);
        if (std::abs(f) < certificate_floor(p_, z)) return std::nullopt;
        return f;
    }

    // Phase change along one straight segment with shared endpoint values.
    bool segment(cplx za, cplx fa, cplx zb, cplx fb, int depth, double& acc) const {
        const double dtheta = std::remainder(std::arg(fb) - std::arg(fa), kTwoPi);
        if (std::abs(dtheta) < kMaxPhaseStep) {
            acc += dtheta;
            return true;
        }
        if (depth >= kMaxHalvings) return false;
        const cplx zm = 0.5 * (za + zb);
        const auto fm = checked_eval(zm);
        if (!fm) return false;
        return segment(za, fa, zm, *fm, depth + 1, acc) &&
               segment(zm, *fm, zb, fb, depth + 1, acc);
    }

    std::optional<double> edge(cplx a, cplx b) const {
        const double len = std::abs(b - a);
        const double h0 = std::min(len / 4.0, 1.0 / (8.0 * max_alpha_));
        const int n0 = std::max(1, static_cast<int>(std::ceil(len / h0)));
        double acc = 0.0;
        cplx z_prev = a;
        auto f_prev = checked_eval(a);
        if (!f_prev) return std::nullopt;
        for (int i = 1; i <= n0; ++i) {
            const cplx z = a + (b - a) * (static_cast<double>(i) / n0);
            const auto f = checked_eval(z);
            if (!f) return std::nullopt;
            if (!segment(z_prev, *f_prev, z, *f, 0, acc)) return std::nullopt;
            z_prev = z;
            f_prev = f;
        }
        return acc;
    }

    const ExpPoly& p_;
    double max_alpha_;
};

Rect inflate(const Rect& r, double factor) {
    const double cx = 0.5 * (r.x_min + r.x_max), cy = 0.5 * (r.y_min + r.y_max);
    const double hw = 0.5 * r.width() * factor, hh = 0.5 * r.height() * factor;
    return Rect{cx - hw, cx + hw, cy - hh, cy + hh};
}

// Subdivision driver. Splits are nudged (deterministically, from the seeded
// generator) until both halves certify and their counts add up, so the
// halves always tile their parent exactly.
class Subdivider {
public:
    Subdivider(const ExpPoly& p, const ExpPoly& dp, const FindOptions& opts)
        : p_(p), dp_(dp), opts_(opts), walker_(p), rng_(opts.count.seed) {}

    std::optional<long> try_count(const Rect& r) const { return walker_.winding(r); }

    long count_with_inflation(Rect& r) {
        for (int attempt = 0; attempt <= opts_.count.max_perturbations; ++attempt) {
            if (attempt > 0) r = inflate(r, 1.0 + random_fraction());
            if (auto n = try_count(r)) return *n;
        }
        throw BoundaryTooClose("boundary certificate failed after " +
                               std::to_string(opts_.count.max_perturbations) +
                               " perturbations");
    }

    void solve(const Rect& r, long n, std::vector<cplx>& out) {
        if (n == 0) return;
        if (n == 1) {
            out.push_back(locate(r));
            return;
        }
        if (std::max(r.width(), r.height()) < opts_.min_box) {
            throw NonSimpleZero("rectangle below minimum size still holds " +
                                std::to_string(n) + " zeros");
        }
        auto parts = split(r, n);
        solve(parts.first.first, parts.first.second, out);
        solve(parts.second.first, parts.second.second, out);
    }

private:
    double random_fraction() {
        std::uniform_real_distribution<double> mag(0.01, 0.05);
        return mag(rng_);
    }

    double signed_fraction() {
        const double f = random_fraction();
        return (rng_() & 1u) ? f : -f;
    }

    using Piece = std::pair<Rect, long>;

    // Split r into two certified pieces whose counts sum to n.
    std::pair<Piece, Piece> split(const Rect& r, long n) {
        const bool wide = r.width() >= r.height();
        for (int pass = 0; pass < 2; ++pass) {
            const bool along_x = (pass == 0) ? wide : !wide;
            for (int attempt = 0; attempt <= opts_.count.max_perturbations; ++attempt) {
                const double frac = (attempt == 0) ? 0.5 : 0.5 + signed_fraction();
                Rect a = r, b = r;
                if (along_x) {
                    const double xm = r.x_min + frac * r.width();
                    a.x_max = xm;
                    b.x_min = xm;
                } else {
                    const double ym = r.y_min + frac * r.height();
                    a.y_max = ym;
                    b.y_min = ym;
                }
                const auto na = try_count(a);
                if (!na) continue;
                const auto nb = try_count(b);
                if (!nb) continue;
                if (*na + *nb != n) continue;
                return {{a, *na}, {b, *nb}};
            }
        }
        throw BoundaryTooClose("no zero-free split line found");
    }

    // r holds exactly one zero; shrink it until Newton from the center
    // converges inside it.
    cplx locate(Rect r) {
        const Rect owner = r;
        for (;;) {
            if (auto z = newton_in(r, owner)) return *z;
            if (std::max(r.width(), r.height()) < opts_.min_box) {
                const cplx c = r.center();
                if (std::abs(p_.evaluate(c)) <= zero_tolerance(p_, c)) return c;
                throw NewtonDivergence("Newton failed inside an isolation box");
            }
            auto parts = split(r, 1);
            r = (parts.first.second == 1) ? parts.first.first : parts.second.first;
        }
    }

    std::optional<cplx> newton_in(const Rect& r, const Rect& owner) const {
        const Rect trust = inflate(owner, 2.0);
        cplx z = r.center();
        for (int step = 0; step < 50; ++step) {
            const cplx f = p_.evaluate(z);
            if (std::abs(f) <= zero_tolerance(p_, z)) {
                // one extra step squares the residual
                const cplx d = dp_.evaluate(z);
                if (std::abs(d) >= kDerivUnderflow) {
                    const cplx polished = z - f / d;
                    if (trust.contains(polished)) z = polished;
                }
                const double slack = 1e-9 * (1.0 + std::max(owner.width(), owner.height()));
                if (owner.contains(z, slack)) return z;
                return std::nullopt;  // converged to a zero outside the box
            }
            const cplx d = dp_.evaluate(z);
            if (std::abs(d) < kDerivUnderflow) return std::nullopt;
            z -= f / d;
            if (!trust.contains(z)) return std::nullopt;
        }
        return std::nullopt;
    }

    const ExpPoly& p_;
    const ExpPoly& dp_;
    FindOptions opts_;
    PhaseWalker walker_;
    std::mt19937_64 rng_;
};

double pairwise_min_distance(const std::vector<cplx>& zs) {
    if (zs.size() < 2) return std::numeric_limits<double>::infinity();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < zs.size(); ++i) {
        for (std::size_t j = i + 1; j < zs.size(); ++j) {
            best = std::min(best, std::abs(zs[i] - zs[j]));
        }
    }
    return best;
}

}  // namespace

double zero_tolerance(const ExpPoly& p, cplx z) {
    return 1e-11 * p.max_abs_coeff() *
           std::exp(kTwoPi * p.max_abs_alpha() * std::abs(z.imag()));
}

long count_zeros_rect(const ExpPoly& p, const Rect& r, const CountOptions& opts) {
    if (!(r.x_min < r.x_max && r.y_min < r.y_max)) {
        throw std::invalid_argument("degenerate rectangle");
    }
    const ExpPoly dp = p.size() > 1 ? p.derivative() : p;
    FindOptions fopts;
    fopts.count = opts;
    Subdivider sub(p, dp, fopts);
    Rect used = r;
    return sub.count_with_inflation(used);
}

ZeroSet find_zeros(const ExpPoly& p, Interval window, const FindOptions& opts) {
    if (p.size() < 2) {
        throw SingleTerm("a single exponential term has no zeros");
    }
    if (!(window.lo < window.hi)) {
        throw std::invalid_argument("empty window");
    }
    const StripBounds strip = strip_bounds(p, opts.margin);
    Rect top{window.lo, window.hi, -(strip.r_minus + opts.pad), strip.r_plus + opts.pad};

    const ExpPoly dp = p.derivative();
    Subdivider sub(p, dp, opts);
    const long total = sub.count_with_inflation(top);

    std::vector<cplx> zeros;
    zeros.reserve(static_cast<std::size_t>(total));
    sub.solve(top, total, zeros);

    std::sort(zeros.begin(), zeros.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    // The walked rectangle can only exceed the window after an inflation
    // retry; keep the zeros the caller asked for.
    std::erase_if(zeros, [&](cplx z) { return !window.contains(z.real()); });

    ZeroSet zs{p, window, std::move(zeros), strip};
    zs.certified_count = total;
    zs.newton_residuals.reserve(zs.zeros.size());
    for (cplx z : zs.zeros) zs.newton_residuals.push_back(std::abs(p.evaluate(z)));
    zs.min_separation = pairwise_min_distance(zs.zeros);
    min_abs_derivative(p, zs);
    return zs;
}

cplx refine_zero(const ExpPoly& p, cplx z0, int max_steps) {
    const ExpPoly dp = p.derivative();
    cplx z = z0;
    for (int step = 0; step < max_steps; ++step) {
        const cplx f = p.evaluate(z);
        if (std::abs(f) <= zero_tolerance(p, z)) {
            const cplx d = dp.evaluate(z);
            if (std::abs(d) >= kDerivUnderflow && std::abs(z - f / d - z0) <= 1.0) {
                z -= f / d;
            }
            return z;
        }
        const cplx d = dp.evaluate(z);
        if (std::abs(d) < kDerivUnderflow) {
            throw DerivativeUnderflow("|p'| below 1e-14 at " + std::to_string(z.real()) +
                                      "+" + std::to_string(z.imag()) + "i");
        }
        z -= f / d;
        if (std::abs(z - z0) > 1.0) {
            throw NewtonDivergence("iterate left the unit disk around the start point");
        }
    }
    throw NewtonDivergence("no convergence within the step limit");
}

double min_abs_derivative(const ExpPoly& p, ZeroSet& zs) {
    const ExpPoly dp = p.derivative();
    double best = std::numeric_limits<double>::infinity();
    for (cplx z : zs.zeros) best = std::min(best, std::abs(dp.evaluate(z)));
    zs.min_abs_derivative = best;
    return best;
}

double separation(const ZeroSet& zs) { return pairwise_min_distance(zs.zeros); }

}  // namespace crystalline
