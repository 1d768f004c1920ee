#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "crystalline/spectrum.hpp"

using namespace crystalline;

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kTwoPiI{0.0, 2.0 * kPi};

ExpPoly sin_pi_z() { return from_trig(TrigKind::Sin, kPi); }
ExpPoly cos_pi_scaled() { return from_trig(TrigKind::Cos, kPi, kPi); }  // pi cos(pi z)

ExpPoly example1_poly(double delta) {
    return from_trig(TrigKind::Sin, kPi) + from_trig(TrigKind::Sin, 1.0, delta);
}

ExpPoly two_plus_e() { return ExpPoly::make({{0.0, cplx(2.0)}, {1.0, cplx(1.0)}}); }

const SpectrumEntry* entry_at(const std::vector<SpectrumEntry>& entries, double s) {
    for (const SpectrumEntry& e : entries) {
        if (std::abs(e.s - s) <= 1e-9) return &e;
    }
    return nullptr;
}

// brute-force enumeration of { n*g2 + m*g3 : n,m >= 0 } up to the bound
std::vector<double> semigroup_two(double g2, double g3, double bound) {
    std::vector<double> out;
    for (int n = 0; n * g2 <= bound + 1e-9; ++n) {
        for (int m = 0; n * g2 + m * g3 <= bound + 1e-9; ++m) {
            out.push_back(n * g2 + m * g3);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("upper expansion of the cotangent pair") {
    // pi cos(pi z)/sin(pi z) = -i pi (1 + 2 sum_{k>=1} w^k), w = e^{2 pi i z};
    // oracle: the geometric series of -2i pi w/(1-w) plus -i pi
    const SpectrumSide up = expand_upper(cos_pi_scaled(), sin_pi_z(), 3.5);
    REQUIRE(up.entries.size() == 4);
    CHECK(std::abs(up.entries[0].s - 0.0) < 1e-12);
    CHECK(std::abs(up.entries[0].a - cplx(0.0, -kPi)) < 1e-12);
    for (int k = 1; k <= 3; ++k) {
        CHECK(std::abs(up.entries[static_cast<std::size_t>(k)].s - k) < 1e-12);
        CHECK(std::abs(up.entries[static_cast<std::size_t>(k)].a - cplx(0.0, -2.0 * kPi)) <
              1e-12);
    }
    CHECK(up.side == Side::Upper);
    CHECK(up.threshold == doctest::Approx(std::log(2.0) / (2.0 * kPi)));
}

TEST_CASE("lower expansion of the cotangent pair") {
    const SpectrumSide low = expand_lower(cos_pi_scaled(), sin_pi_z(), 3.5);
    REQUIRE(low.entries.size() == 4);
    CHECK(std::abs(low.entries[0].a - cplx(0.0, kPi)) < 1e-12);
    for (int k = 1; k <= 3; ++k) {
        CHECK(std::abs(low.entries[static_cast<std::size_t>(k)].a - cplx(0.0, 2.0 * kPi)) <
              1e-12);
    }

    // mirror consistency: the lower side is the upper side of the mirrors
    const SpectrumSide mirrored =
        expand_upper(cos_pi_scaled().mirrored(), sin_pi_z().mirrored(), 3.5);
    REQUIRE(mirrored.entries.size() == low.entries.size());
    for (std::size_t i = 0; i < low.entries.size(); ++i) {
        CHECK(low.entries[i].s == mirrored.entries[i].s);
        CHECK(low.entries[i].a == mirrored.entries[i].a);
    }
}

TEST_CASE("expansions of 1/(2+w) and w/(2+w)") {
    // psi = 1: 1/(2+w) = sum_k (-1)^k w^k / 2^{k+1}, S+ starts at 0
    const ExpPoly one = ExpPoly::make({{0.0, cplx(1.0)}});
    const SpectrumSide up1 = expand_upper(one, two_plus_e(), 3.5);
    REQUIRE(up1.entries.size() == 4);
    for (int k = 0; k <= 3; ++k) {
        const double oracle = (k % 2 == 0 ? 1.0 : -1.0) / std::pow(2.0, k + 1);
        CHECK(std::abs(up1.entries[static_cast<std::size_t>(k)].s - k) < 1e-12);
        CHECK(std::abs(up1.entries[static_cast<std::size_t>(k)].a - cplx(oracle)) < 1e-15);
    }

    // psi = e(1): w/(2+w) = sum_{k>=1} (-1)^{k-1} w^k / 2^k
    const ExpPoly w = ExpPoly::make({{1.0, cplx(1.0)}});
    const SpectrumSide upw = expand_upper(w, two_plus_e(), 3.5);
    REQUIRE(upw.entries.size() == 3);
    for (int k = 1; k <= 3; ++k) {
        const double oracle = (k % 2 == 1 ? 1.0 : -1.0) / std::pow(2.0, k);
        CHECK(std::abs(upw.entries[static_cast<std::size_t>(k - 1)].s - k) < 1e-12);
        CHECK(std::abs(upw.entries[static_cast<std::size_t>(k - 1)].a - cplx(oracle)) < 1e-15);
    }

    // lower side, psi = 1: 1/(2+w) = sum_{k>=1} (-2)^{k-1} w^{-k}, S- starts at 1
    const SpectrumSide low1 = expand_lower(one, two_plus_e(), 3.5);
    REQUIRE(low1.entries.size() == 3);
    for (int k = 1; k <= 3; ++k) {
        const double oracle = std::pow(-2.0, k - 1);
        CHECK(std::abs(low1.entries[static_cast<std::size_t>(k - 1)].s - k) < 1e-12);
        CHECK(std::abs(low1.entries[static_cast<std::size_t>(k - 1)].a - cplx(oracle)) < 1e-12);
    }
}

TEST_CASE("claim-2 lower bounds hold for every entry") {
    const ExpPoly psi = cos_pi_scaled();
    const ExpPoly phi = example1_poly(0.5);
    const SpectrumSide up = expand_upper(psi, phi, 10.0);
    const double s_min_up = psi.alpha(0) - phi.alpha(0);
    for (const SpectrumEntry& e : up.entries) CHECK(e.s >= s_min_up - kFreqTol);

    const SpectrumSide low = expand_lower(psi, phi, 10.0);
    const double s_min_low = phi.alpha(phi.size() - 1) - psi.alpha(psi.size() - 1);
    for (const SpectrumEntry& e : low.entries) CHECK(e.s >= s_min_low - kFreqTol);
}

TEST_CASE("expansion guards") {
    const ExpPoly e5 = ExpPoly::make({{5.0, cplx(1.0)}});
    CHECK_THROWS_AS(expand_upper(e5, sin_pi_z(), 1.0), CutoffTooSmall);
    CHECK_THROWS_AS(expand_upper(e5, ExpPoly::make({{0.0, cplx(1.0)}}), 10.0), SingleTerm);

    // tiny leading coefficient: the inverse-series values reach 1e300
    const ExpPoly spread = ExpPoly::make({{0.0, cplx(1e-13)}, {0.1, cplx(1.0)}});
    CHECK_THROWS_AS(expand_upper(ExpPoly::make({{0.0, cplx(1.0)}}), spread, 2.5),
                    BlowupGuard);
}

TEST_CASE("merged spectrum of the cotangent pair is the Dirac comb") {
    const Spectrum sp = merge_spectrum(expand_lower(cos_pi_scaled(), sin_pi_z(), 10.0),
                                       expand_upper(cos_pi_scaled(), sin_pi_z(), 10.0));
    REQUIRE(sp.entries.size() == 21);
    for (int s = -10; s <= 10; ++s) {
        const SpectrumEntry* e = entry_at(sp.entries, s);
        REQUIRE(e != nullptr);
        CHECK(std::abs(e->a - cplx(1.0)) <= 1e-9);
    }
    // no spurious frequencies
    for (const SpectrumEntry& e : sp.entries) {
        CHECK(std::abs(e.s - std::round(e.s)) < 1e-9);
        CHECK(std::abs(e.a) > 1e-12);
    }
    CHECK(sp.sup_coeff == doctest::Approx(1.0));
}

TEST_CASE("merge sums coinciding frequencies and concatenates disjoint ones") {
    // cotangent pair: a_0 = 1/2 + 1/2 from the two sides
    const SpectrumSide low = expand_lower(cos_pi_scaled(), sin_pi_z(), 3.5);
    const SpectrumSide up = expand_upper(cos_pi_scaled(), sin_pi_z(), 3.5);
    const Spectrum sp = merge_spectrum(low, up);
    const SpectrumEntry* zero = entry_at(sp.entries, 0.0);
    REQUIRE(zero != nullptr);
    CHECK(std::abs(zero->a - cplx(1.0)) < 1e-12);
    CHECK(std::abs(low.entries[0].a / kTwoPiI - cplx(0.5)) < 1e-12);

    // strip pair with psi = phi': S- starts at 0, -S+ ends at -1, no overlap
    const ExpPoly phi = two_plus_e();
    const ExpPoly psi = phi.derivative();
    const SpectrumSide low2 = expand_lower(psi, phi, 5.5);
    const SpectrumSide up2 = expand_upper(psi, phi, 5.5);
    const Spectrum sp2 = merge_spectrum(low2, up2);
    CHECK(sp2.entries.size() == low2.entries.size() + up2.entries.size());
}

TEST_CASE("merge validates its inputs") {
    const SpectrumSide low = expand_lower(cos_pi_scaled(), sin_pi_z(), 10.0);
    const SpectrumSide up = expand_upper(cos_pi_scaled(), sin_pi_z(), 20.0);
    CHECK_THROWS_AS(merge_spectrum(low, up), CutoffMismatch);
    CHECK_THROWS_AS(merge_spectrum(low, low), std::invalid_argument);
}

TEST_CASE("growth profile") {
    Spectrum comb = merge_spectrum(expand_lower(cos_pi_scaled(), sin_pi_z(), 10.0),
                                   expand_upper(cos_pi_scaled(), sin_pi_z(), 10.0));
    const GrowthProfile gp = growth_profile(comb, {2.0, 4.0, 8.0});
    REQUIRE(gp.counts.size() == 3);
    CHECK(gp.counts[0].second == 3);
    CHECK(gp.counts[1].second == 7);
    CHECK(gp.counts[2].second == 15);
    CHECK(comb.growth.m_hat == doctest::Approx(gp.m_hat));

    CHECK_THROWS_AS(growth_profile(comb, {4.0, 2.0}), std::invalid_argument);
}

TEST_CASE("example-family growth matches the generator semigroup") {
    const ExpPoly phi = example1_poly(0.5);
    const ExpPoly psi = phi.derivative();
    Spectrum sp = merge_spectrum(expand_lower(psi, phi, 12.0), expand_upper(psi, phi, 12.0));

    const double g2 = phi.alpha(1) - phi.alpha(0);
    const double g3 = phi.alpha(2) - phi.alpha(0);
    // the third gap is g2 + g3, so two generators span the whole lattice
    CHECK(phi.alpha(3) - phi.alpha(0) == doctest::Approx(g2 + g3).epsilon(1e-15));

    const std::vector<double> lattice = semigroup_two(g2, g3, 12.0);
    const std::vector<double> radii{1.5, 3.0, 6.0, 12.0};
    const GrowthProfile gp = growth_profile(sp, radii);
    for (std::size_t i = 0; i < radii.size(); ++i) {
        long predicted = 0;
        for (double s : lattice) {
            if (s < radii[i]) predicted += (s == 0.0) ? 1 : 2;  // +-s
        }
        CHECK(gp.counts[i].second == predicted);
    }
    CHECK(gp.m_hat <= 3.0);

    // every computed frequency is a lattice point
    for (const SpectrumEntry& e : sp.entries) {
        const double s = std::abs(e.s);
        const bool member = std::any_of(lattice.begin(), lattice.end(),
                                        [&](double t) { return std::abs(t - s) < 1e-7; });
        CHECK(member);
    }
}

TEST_CASE("coefficient sup profiles") {
    // Dirac comb: constant 1
    for (const auto& [f, sup] :
         coeff_sup_profile(cos_pi_scaled(), sin_pi_z(), {5.0, 10.0, 20.0})) {
        CHECK(sup == doctest::Approx(1.0).epsilon(1e-12));
    }

    // example family: bounded (the real-zero case)
    const ExpPoly phi = example1_poly(0.5);
    const auto prof = coeff_sup_profile(phi.derivative(), phi, {8.0, 16.0});
    CHECK(std::abs(prof[1].second - prof[0].second) <= 0.05 * prof[0].second);

    // strip case with psi = 1: sup grows like 2^F
    const ExpPoly one = ExpPoly::make({{0.0, cplx(1.0)}});
    const auto grow = coeff_sup_profile(one, two_plus_e(), {4.5, 8.5, 12.5, 16.5});
    std::vector<double> logs;
    for (const auto& [f, sup] : grow) logs.push_back(std::log(sup));
    for (std::size_t i = 1; i < logs.size(); ++i) {
        const double slope = (logs[i] - logs[i - 1]) / 4.0;
        CHECK(slope == doctest::Approx(std::log(2.0)).epsilon(0.1));
    }
}

TEST_CASE("partial sums converge inside the half-plane") {
    struct Case {
        ExpPoly psi, phi;
    };
    const ExpPoly eq7 = example1_poly(0.5);
    const std::vector<Case> cases{{cos_pi_scaled(), sin_pi_z()},
                                  {eq7.derivative(), eq7},
                                  {two_plus_e().derivative(), two_plus_e()}};
    const double cutoff = 10.0;
    for (const Case& c : cases) {
        const SpectrumSide up = expand_upper(c.psi, c.phi, cutoff);
        const double y = up.threshold + 1.0;
        const double margin = 0.5;
        const double tail = c.psi.term_abs_sum(cplx(0.0, y)) *
                            std::pow(margin, up.expansion_order) / (1.0 - margin) /
                            std::abs(c.phi.coeff(0)) *
                            std::exp(2.0 * kPi * c.phi.alpha(0) * y);
        for (int i = 0; i < 100; ++i) {
            const cplx z{0.05 * i, y};
            cplx series = 0.0;
            for (const SpectrumEntry& e : up.entries) {
                series += e.a * std::exp(kTwoPiI * e.s * z);
            }
            const cplx direct = c.psi.evaluate(z) / c.phi.evaluate(z);
            CHECK(std::abs(direct - series) <= 10.0 * tail);
        }
    }
}

TEST_CASE("cutoff stability") {
    const ExpPoly phi = example1_poly(0.5);
    const ExpPoly psi = phi.derivative();
    const SpectrumSide big = expand_upper(psi, phi, 20.0);
    const SpectrumSide small = expand_upper(psi, phi, 12.0);
    for (const SpectrumEntry& e : small.entries) {
        const SpectrumEntry* match = entry_at(big.entries, e.s);
        REQUIRE(match != nullptr);
        CHECK(std::abs(match->a - e.a) <= 1e-12 * std::abs(e.a));
    }
}

TEST_CASE("conjugation and evenness of the example-family spectrum") {
    const ExpPoly phi = example1_poly(0.5);
    const ExpPoly psi = phi.derivative();
    const Spectrum sp =
        merge_spectrum(expand_lower(psi, phi, 10.0), expand_upper(psi, phi, 10.0));
    for (const SpectrumEntry& e : sp.entries) {
        const SpectrumEntry* opp = entry_at(sp.entries, -e.s);
        REQUIRE(opp != nullptr);
        CHECK(std::abs(opp->a - std::conj(e.a)) <= 1e-10 * (1.0 + std::abs(e.a)));
        CHECK(std::abs(opp->a - e.a) <= 1e-10 * (1.0 + std::abs(e.a)));  // real and even
        CHECK(std::abs(e.a.imag()) <= 1e-10 * (1.0 + std::abs(e.a)));
    }
}
