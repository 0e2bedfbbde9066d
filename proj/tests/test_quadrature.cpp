#include <doctest.h>

#include <cmath>

#include "raman3d/quadrature.hpp"

using namespace raman3d;

namespace {

// the oscillatory angular integrand all the physics quadrature hinges on
double forward_sinc2(double theta, double k0L) {
    const double sh = std::sin(0.5 * theta);
    const double s = sinc(k0L * sh * sh);
    return std::sin(theta) * s * s;
}

// brute-force composite Simpson reference, no adaptivity
double simpson(double (*f)(double, double), double p, double a, double b, std::int64_t n) {
    const double h = (b - a) / n;
    double acc = f(a, p) + f(b, p);
    for (std::int64_t i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h, p);
    return acc * h / 3.0;
}

// 50-term power series for e^-x I0(x), long double, small-x reference
long double i0e_series_ref(long double x) {
    long double term = 1.0L, sum = 1.0L;
    for (int k = 1; k <= 50; ++k) {
        term *= (x * x / 4.0L) / (static_cast<long double>(k) * k);
        sum += term;
    }
    return sum * std::exp(-x);
}

} // namespace

TEST_CASE("sinc: limit, series window, frozen value") {
    CHECK(sinc(0.0) == 1.0);
    CHECK(sinc(1.0) == doctest::Approx(0.8414709848078965).epsilon(1e-15));
    CHECK(sinc(-1.0) == sinc(1.0));
    // series/direct crossover continuity
    CHECK(sinc(0.99e-4) == doctest::Approx(sinc(1.01e-4)).epsilon(1e-10));
    CHECK(sinc(M_PI) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(std::abs(sinc(1e8)) <= 1e-8);
}

TEST_CASE("bessel_i0_scaled: frozen value, series reference, asymptotics") {
    CHECK(bessel_i0_scaled(0.0) == 1.0);
    CHECK(bessel_i0_scaled(1.0) == doctest::Approx(0.46575960759364043).epsilon(1e-12));
    for (double x : {0.1, 0.5, 2.0, 5.0, 10.0, 19.0})
        CHECK(bessel_i0_scaled(x) ==
              doctest::Approx(static_cast<double>(i0e_series_ref(x))).epsilon(1e-12));
    // at x = 20 the asymptotic branch runs; the series reference still
    // converges there, pinning both branches to the same value
    CHECK(bessel_i0_scaled(20.0) ==
          doctest::Approx(static_cast<double>(i0e_series_ref(20.0L))).epsilon(1e-10));
    // leading asymptotic order 1/sqrt(2 pi x)
    const double x = 1e6;
    CHECK(bessel_i0_scaled(x) == doctest::Approx(1.0 / std::sqrt(2.0 * M_PI * x)).epsilon(1e-6));
    CHECK(bessel_i0_scaled(1e308) > 0.0);  // no overflow
    CHECK_THROWS_AS(bessel_i0_scaled(-1.0), DomainError);
}

TEST_CASE("integrate_1d: smooth exact results") {
    const QuadResult r = integrate_1d([](double x) { return std::sin(x); }, 0.0, M_PI);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.error_estimate <= 1e-8 * 2.0);

    const QuadResult g = integrate_1d([](double x) { return std::exp(-x * x); }, -8.0, 8.0);
    CHECK(g.value == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
}

TEST_CASE("integrate_1d: oscillatory integrand vs 1e7-panel Simpson oracle") {
    const double k0L = 7.85e4;
    const QuadResult r =
        integrate_1d([&](double t) { return forward_sinc2(t, k0L); }, 0.0, M_PI);
    const double ref = simpson(forward_sinc2, k0L, 0.0, M_PI, 10'000'000);
    CHECK(r.value == doctest::Approx(ref).epsilon(1e-6));
}

TEST_CASE("integrate_1d: shifted-grid oracle resolves the first sinc zeros") {
    const double k0L = 7.85e4;
    // splitting at half a zero-spacing forces a panel layout with no node
    // in common with the plain run
    const double half_zero = 0.5 * std::sqrt(M_PI / k0L);
    auto f = [&](double t) { return forward_sinc2(t, k0L); };
    const double plain = integrate_1d(f, 0.0, M_PI).value;
    const double shifted =
        integrate_1d(f, 0.0, half_zero).value + integrate_1d(f, half_zero, M_PI).value;
    CHECK(plain == doctest::Approx(shifted).epsilon(1e-6));
}

TEST_CASE("integrate_1d: linearity and interval additivity") {
    auto f = [](double x) { return std::cos(3.0 * x) + x * x; };
    const double whole = integrate_1d(f, 0.0, 2.0).value;
    const double split = integrate_1d(f, 0.0, 0.7).value + integrate_1d(f, 0.7, 2.0).value;
    CHECK(whole == doctest::Approx(split).epsilon(1e-10));

    const double scaled = integrate_1d([&](double x) { return 5.0 * f(x); }, 0.0, 2.0).value;
    CHECK(scaled == doctest::Approx(5.0 * whole).epsilon(1e-10));
}

TEST_CASE("integrate_1d: convergence failure carries the best value") {
    QuadratureSpec tight;
    tight.rel_tol = 1e-14;
    tight.abs_tol = 1e-300;
    tight.max_subdivisions = 80;
    tight.initial_panels = 8;
    try {
        integrate_1d([](double x) { return std::sin(1e6 * x); }, 0.0, 1.0, tight);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(std::isfinite(e.best_value));
        CHECK(e.error_estimate > 0.0);
    }
}

TEST_CASE("integrate_1d: argument and spec validation") {
    auto f = [](double) { return 1.0; };
    CHECK_THROWS_AS(integrate_1d(f, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(integrate_1d(f, 2.0, 1.0), DomainError);
    QuadratureSpec bad;
    bad.rel_tol = 0.0;
    CHECK_THROWS_AS(integrate_1d(f, 0.0, 1.0, bad), DomainError);
}

TEST_CASE("integrate_2d: separable product and tensor-grid oracle") {
    auto f = [](double x, double y) { return std::sin(x) * std::exp(-y); };
    const QuadResult r = integrate_2d(f, 0.0, M_PI, 0.0, 1.0);
    CHECK(r.value == doctest::Approx(2.0 * (1.0 - std::exp(-1.0))).epsilon(1e-10));

    // the chi-style kernel on the forward-cone box, against a fixed
    // 4096 x 4096 midpoint tensor grid
    const double k0L = 7.85e4, q = 1.57e5;
    auto kern = [&](double t, double tp) {
        const double st = std::sin(t), stp = std::sin(tp);
        const double sh = std::sin(0.5 * t), shp = std::sin(0.5 * tp);
        const double d = st - stp;
        return st * stp * std::exp(-0.25 * q * (d * d + st * st + stp * stp)) *
               bessel_i0_scaled(0.5 * q * st * stp) * sinc(k0L * (sh * sh - shp * shp)) *
               sinc(k0L * sh * sh) * sinc(k0L * shp * shp);
    };
    const double b = 0.02;
    const int n = 4096;
    const double h = b / n;
    double ref = 0.0;
    for (int i = 0; i < n; ++i) {
        double rowacc = 0.0;
        const double t = (i + 0.5) * h;
        for (int j = 0; j < n; ++j) rowacc += kern(t, (j + 0.5) * h);
        ref += rowacc;
    }
    ref *= h * h;
    const QuadResult rq = integrate_2d(kern, 0.0, b, 0.0, b);
    CHECK(rq.value == doctest::Approx(ref).epsilon(1e-4));
}

TEST_CASE("graded breakpoints are monotone and span the interval") {
    const auto bp = detail::graded_breakpoints(0.0, M_PI, 64);
    REQUIRE(bp.size() == 65);
    CHECK(bp.front() == 0.0);
    CHECK(bp.back() == doctest::Approx(M_PI).epsilon(1e-15));
    for (std::size_t i = 1; i < bp.size(); ++i) CHECK(bp[i] > bp[i - 1]);
    // the first panel is orders of magnitude narrower than the last
    CHECK((bp[1] - bp[0]) < 1e-3 * (bp.back() - bp[bp.size() - 2]));
}
