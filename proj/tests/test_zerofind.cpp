#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "crystalline/zerofind.hpp"

using namespace crystalline;

namespace {

constexpr double kPi = std::numbers::pi;

ExpPoly sin_pi_z() { return from_trig(TrigKind::Sin, kPi); }

ExpPoly example1_poly(double delta) {
    return from_trig(TrigKind::Sin, kPi) + from_trig(TrigKind::Sin, 1.0, delta);
}

ExpPoly two_plus_e() { return ExpPoly::make({{0.0, cplx(2.0)}, {1.0, cplx(1.0)}}); }

Rect gamma_square(int n) {
    const double r = n + 0.5;
    return {-r, r, -r, r};
}

}  // namespace

TEST_CASE("count_zeros_rect") {
    CHECK(count_zeros_rect(sin_pi_z(), gamma_square(5)) == 11);
    CHECK(count_zeros_rect(example1_poly(0.5), gamma_square(5)) == 11);
    CHECK(count_zeros_rect(sin_pi_z(), {0.1, 0.4, -1.0, 1.0}) == 0);
}

TEST_CASE("count_zeros_rect perturbs boundaries touching a zero") {
    // zeros of sin(pi z) sit exactly on the corners of [0,1]x[-0.3,0.3]
    const Rect r{0.0, 1.0, -0.3, 0.3};
    CountOptions strict;
    strict.max_perturbations = 0;
    CHECK_THROWS_AS(count_zeros_rect(sin_pi_z(), r, strict), BoundaryTooClose);
    CHECK(count_zeros_rect(sin_pi_z(), r) == 2);  // inflated rectangle holds both
}

TEST_CASE("find_zeros on sin(pi z)") {
    const ZeroSet zs = find_zeros(sin_pi_z(), {-5.5, 5.5});
    REQUIRE(zs.zeros.size() == 11);
    for (int k = -5; k <= 5; ++k) {
        CHECK(std::abs(zs.zeros[static_cast<std::size_t>(k + 5)] - cplx(k)) < 1e-10);
    }
    CHECK(zs.certified_count == 11);
    CHECK(zs.min_separation == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(zs.min_abs_derivative == doctest::Approx(kPi).epsilon(1e-9));
    for (double r : zs.newton_residuals) CHECK(r <= zero_tolerance(zs.poly, 0.0));
}

TEST_CASE("find_zeros on the example family") {
    const ZeroSet zs = find_zeros(example1_poly(0.5), {-100.5, 100.5});
    REQUIRE(zs.zeros.size() == 201);
    for (const cplx z : zs.zeros) {
        CHECK(std::abs(z.imag()) < 1e-10);
        const double dk = z.real() - std::round(z.real());
        CHECK(dk >= -1.0 / 6.0 - 1e-9);
        CHECK(dk <= 1.0 / 6.0 + 1e-9);
    }
    CHECK(separation(zs) >= 2.0 / 3.0 - 1e-9);
    CHECK(separation(zs) == zs.min_separation);

    // completeness: the window-rectangle count equals the zero count
    const Rect window_rect{-100.5, 100.5, -(zs.strip.r_minus + 0.1), zs.strip.r_plus + 0.1};
    CHECK(count_zeros_rect(zs.poly, window_rect) == 201);

    // strip confinement
    for (const cplx z : zs.zeros) {
        CHECK(z.imag() <= zs.strip.r_plus + 1e-12);
        CHECK(z.imag() >= -zs.strip.r_minus - 1e-12);
    }

    // conjugation closure and oddness
    auto has_zero_near = [&](cplx w) {
        return std::any_of(zs.zeros.begin(), zs.zeros.end(),
                           [&](cplx z) { return std::abs(z - w) < 1e-10; });
    };
    for (const cplx z : zs.zeros) {
        CHECK(has_zero_near(std::conj(z)));
        CHECK(has_zero_near(-z));
    }
}

TEST_CASE("find_zeros on the strip case") {
    const ZeroSet zs = find_zeros(two_plus_e(), {-10.0, 10.0});
    REQUIRE(zs.zeros.size() == 20);
    const double y = -std::log(2.0) / (2.0 * kPi);
    for (int k = -10; k <= 9; ++k) {
        const cplx expected{k + 0.5, y};
        CHECK(std::abs(zs.zeros[static_cast<std::size_t>(k + 10)] - expected) < 1e-10);
    }
    CHECK(zs.min_abs_derivative == doctest::Approx(4.0 * kPi).epsilon(1e-9));
}

TEST_CASE("min_abs_derivative is the direct minimum over the zeros") {
    const ExpPoly phi = example1_poly(0.5);
    ZeroSet zs = find_zeros(phi, {-50.5, 50.5});
    const ExpPoly dphi = phi.derivative();
    double direct = std::numeric_limits<double>::infinity();
    for (cplx z : zs.zeros) direct = std::min(direct, std::abs(dphi.evaluate(z)));
    CHECK(min_abs_derivative(phi, zs) == direct);
    CHECK(direct > 2.2);  // |pi cos(pi lambda)| - 1/2 with |delta_k| <= 1/6

    ZeroSet wide = find_zeros(phi, {-100.5, 100.5});
    CHECK(min_abs_derivative(phi, wide) > 2.2);
}

TEST_CASE("refine_zero") {
    CHECK(std::abs(refine_zero(sin_pi_z(), 3.1) - cplx(3.0)) < 1e-12);

    const cplx z1 = refine_zero(example1_poly(0.5), 1.0);
    const double d1 = z1.real() - 1.0;
    CHECK(std::abs(std::sin(kPi * d1)) <= 0.5 + 1e-9);

    // critical point of sin(pi z): the derivative vanishes
    CHECK_THROWS_AS(refine_zero(sin_pi_z(), 0.5), DerivativeUnderflow);
    // off-axis start walks away from the real line
    CHECK_THROWS_AS(refine_zero(sin_pi_z(), cplx(0.5, 0.4)), Error);
}

TEST_CASE("separation") {
    const ZeroSet ints = find_zeros(sin_pi_z(), {-5.5, 5.5});
    CHECK(separation(ints) == doctest::Approx(1.0).epsilon(1e-12));

    const ZeroSet one = find_zeros(sin_pi_z(), {-0.4, 0.4});
    REQUIRE(one.zeros.size() == 1);
    CHECK(std::isinf(separation(one)));
    CHECK(std::isinf(one.min_separation));
}

TEST_CASE("double zeros are reported as non-simple") {
    // sin^2(pi z) = 1/2 - e(1)/4 - e(-1)/4 has double zeros at the integers
    const ExpPoly sq =
        ExpPoly::make({{-1.0, cplx(-0.25)}, {0.0, cplx(0.5)}, {1.0, cplx(-0.25)}});
    CHECK_THROWS_AS(find_zeros(sq, {-0.4, 0.4}), NonSimpleZero);
}

TEST_CASE("single-term polynomials have no zeros to find") {
    CHECK_THROWS_AS(find_zeros(ExpPoly::make({{1.0, cplx(1.0)}}), {-1.0, 1.0}), SingleTerm);
}

TEST_CASE("sign changes bracket each zero of the example family") {
    for (double delta : {0.1, 0.3, 0.5}) {
        const ExpPoly phi = example1_poly(delta);
        const double gamma = std::asin(delta) / kPi;
        for (int k = -20; k <= 20; ++k) {
            if (k == 0) continue;
            const double left = phi.evaluate(cplx(k - gamma)).real();
            const double right = phi.evaluate(cplx(k + gamma)).real();
            CHECK(left * right < 0.0);
        }
    }
}

TEST_CASE("window edges are honored and window growth only appends") {
    const ZeroSet narrow = find_zeros(example1_poly(0.5), {-10.5, 10.5});
    const ZeroSet wide = find_zeros(example1_poly(0.5), {-20.5, 20.5});
    CHECK(narrow.zeros.size() == 21);
    CHECK(wide.zeros.size() == 41);
    for (const cplx z : narrow.zeros) {
        const bool found = std::any_of(wide.zeros.begin(), wide.zeros.end(),
                                       [&](cplx w) { return std::abs(w - z) < 1e-12; });
        CHECK(found);
    }
}
