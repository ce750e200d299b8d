#include <doctest.h>

#include <cmath>

#include "cnt/quadrature.hpp"
#include "cnt/special_functions.hpp"

using namespace cnt;

namespace {

// Independent oracle: K0(x) = integral_0^infty e^{-x cosh t} dt.
double k0_integral(double x) {
    // scaled so the integrand is O(1): K0(x) = e^{-x} int_0^inf e^{-x(cosh t - 1)} dt
    const double t_max = std::acosh(1.0 + 745.0 / x) + 1.0;
    QuadSpec spec;
    spec.abs_tol = 1e-14;
    spec.rel_tol = 1e-13;
    spec.max_subdivisions = 20000;
    return std::exp(-x) *
           quad_adaptive([x](double t) { return std::exp(-x * (std::cosh(t) - 1.0)); }, 0.0,
                         t_max, spec);
}

// Independent oracle: defining integral of the complete elliptic integral.
double elliptic_integral(double m) {
    return quad_adaptive(
        [m](double th) {
            const double s = std::sin(th);
            return 1.0 / std::sqrt(1.0 - m * s * s);
        },
        0.0, M_PI / 2.0);
}

}  // namespace

TEST_CASE("K0 pinned values") {
    CHECK(bessel_k0(1.0) == doctest::Approx(0.42102443824070834).epsilon(1e-13));
    CHECK(bessel_k0(10.0) == doctest::Approx(1.7780062316167652e-5).epsilon(1e-12));
}

TEST_CASE("K0 against the integral oracle") {
    for (double x : {1e-6, 1e-3, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0, 200.0, 650.0}) {
        const double ref = k0_integral(x);
        CHECK(std::abs(bessel_k0(x) - ref) <= 1e-11 * std::abs(ref));
    }
}

TEST_CASE("K0 small-argument logarithmic limit") {
    const double gamma = 0.57721566490153286;
    for (double x : {1e-6, 1e-7, 1e-8})
        CHECK(std::abs(bessel_k0(x) + std::log(x / 2.0) + gamma) < 1e-10);
}

TEST_CASE("K0 monotone decreasing and positive") {
    double prev = bessel_k0(1e-8);
    for (double x = 1e-4; x < 600.0; x *= 2.3) {
        const double v = bessel_k0(x);
        CHECK(v > 0.0);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("K0 domain errors") {
    CHECK_THROWS_AS(bessel_k0(0.0), std::domain_error);
    CHECK_THROWS_AS(bessel_k0(-1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_k0(std::nan("")), std::domain_error);
}

TEST_CASE("elliptic K pinned values") {
    CHECK(elliptic_k(0.0) == doctest::Approx(M_PI / 2.0).epsilon(1e-14));
    CHECK(elliptic_k(0.5) == doctest::Approx(1.8540746773013719).epsilon(1e-13));
}

TEST_CASE("elliptic K against the defining integral") {
    for (double m : {0.01, 0.1, 0.3, 0.6, 0.9, 0.99})
        CHECK(elliptic_k(m) == doctest::Approx(elliptic_integral(m)).epsilon(1e-9));
}

TEST_CASE("elliptic K near-unit logarithmic divergence") {
    const double m = 1.0 - 1e-8;
    const double asym = 0.5 * std::log(16.0 / (1.0 - m));
    CHECK(std::abs(elliptic_k(m) - asym) <= 1e-6 * asym);
}

TEST_CASE("elliptic K monotone increasing") {
    double prev = elliptic_k(0.0);
    for (double m = 0.05; m < 1.0; m += 0.05) {
        const double v = elliptic_k(m);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("elliptic K domain errors") {
    CHECK_THROWS_AS(elliptic_k(-0.1), std::domain_error);
    CHECK_THROWS_AS(elliptic_k(1.0), std::domain_error);
    CHECK_THROWS_AS(elliptic_k(1.5), std::domain_error);
}
