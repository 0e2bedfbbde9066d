#include "raman3d/quadrature.hpp"

#include <cmath>

namespace raman3d {

double sinc(double x) {
    const double ax = std::abs(x);
    if (ax < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
    }
    return std::sin(x) / x;
}

namespace {

// Power series sum_k (x/2)^(2k) / (k!)^2, all terms positive.
double i0_series_scaled(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (term < sum * 1e-17) break;
    }
    return sum * std::exp(-x);
}

// e^-x I0(x) ~ (2 pi x)^(-1/2) sum_k ((2k-1)!!)^2 / (k! 8^k x^k)
double i0_asymptotic_scaled(double x) {
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 10; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= odd * odd / (8.0 * k * x);
        sum += term;
    }
    // sqrt factored so 2*pi*x cannot overflow near DBL_MAX
    return sum / (std::sqrt(2.0 * M_PI) * std::sqrt(x));
}

} // namespace

double bessel_i0_scaled(double x) {
    if (x < 0.0) throw DomainError("bessel_i0_scaled: requires x >= 0");
    if (x == 0.0) return 1.0;
    // crossover where the truncated asymptotic tail drops below 1e-10
    return x < 20.0 ? i0_series_scaled(x) : i0_asymptotic_scaled(x);
}

namespace detail {

std::vector<double> graded_breakpoints(double a, double b, int n_panels) {
    if (n_panels < 1) n_panels = 1;
    std::vector<double> bp;
    bp.reserve(static_cast<std::size_t>(n_panels) + 1);
    bp.push_back(a);
    if (n_panels == 1) {
        bp.push_back(b);
        return bp;
    }
    // first breakpoint at 1e-5 of the interval, geometric growth from there
    const double span = b - a;
    const double first = 1e-5;
    const double ratio = std::pow(1.0 / first, 1.0 / (n_panels - 1));
    double frac = first;
    for (int i = 1; i < n_panels; ++i) {
        bp.push_back(a + span * frac);
        frac *= ratio;
    }
    bp.push_back(b);
    return bp;
}

} // namespace detail

} // namespace raman3d
