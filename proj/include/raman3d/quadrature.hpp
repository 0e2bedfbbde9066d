#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

#include "raman3d/errors.hpp"

namespace raman3d {

struct QuadratureSpec {
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    std::int64_t max_subdivisions = 1'000'000;
    int initial_panels = 64;

    void validate() const {
        if (rel_tol <= 0.0 || abs_tol <= 0.0)
            throw DomainError("QuadratureSpec: tolerances must be positive");
        if (max_subdivisions < initial_panels)
            throw DomainError("QuadratureSpec: max_subdivisions < initial_panels");
    }
};

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::int64_t evaluations = 0;
};

/// sin(x)/x with the exact limit at 0 (series for |x| < 1e-4).
double sinc(double x);

/// exp(-x) * I0(x) for x >= 0. Overflow-safe replacement for the raw
/// modified Bessel function; relative error below 1e-10.
double bessel_i0_scaled(double x);

namespace detail {

// Gauss-Kronrod 7-15 pair on [-1, 1].
inline constexpr double gk15_nodes[8] = {
    0.000000000000000000, 0.207784955007898468, 0.405845151377397167,
    0.586087235467691130, 0.741531185599394440, 0.864864423359769073,
    0.949107912342758525, 0.991455371120812639};
inline constexpr double gk15_wk[8] = {
    0.209482141084727828, 0.204432940075298892, 0.190350578064785410,
    0.169004726639267903, 0.140653259715525919, 0.104790010322250184,
    0.063092092629978553, 0.022935322010529225};
// Gauss-7 weights, indexed by the same node table (zero on Kronrod-only nodes).
inline constexpr double gk15_wg[8] = {
    0.417959183673469388, 0.0, 0.381830050505118945, 0.0,
    0.279705391489276668, 0.0, 0.129484966168869693, 0.0};

struct Panel {
    double a, b;
    double value;
    double error;
    bool operator<(const Panel& o) const {
        // max-heap on error; left endpoint breaks ties so refinement
        // order (and hence the result) is deterministic
        if (error != o.error) return error < o.error;
        return a > o.a;
    }
};

template <class F>
Panel eval_panel(const F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double f0 = f(c);
    double k15 = gk15_wk[0] * f0;
    double g7 = gk15_wg[0] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = h * gk15_nodes[i];
        const double s = f(c + dx) + f(c - dx);
        k15 += gk15_wk[i] * s;
        g7 += gk15_wg[i] * s;
    }
    k15 *= h;
    g7 *= h;
    return Panel{a, b, k15, std::abs(k15 - g7)};
}

/// Panel breakpoints on [a, b], geometrically refined toward a so that
/// narrow forward-cone structure near the lower endpoint is seeded
/// directly instead of being left for the adaptive stage to discover.
std::vector<double> graded_breakpoints(double a, double b, int n_panels);

} // namespace detail

/// Adaptive Gauss-Kronrod integration of f over [a, b]. Panels are seeded
/// on a grid graded toward a, then the worst panel is bisected until the
/// summed error estimate meets the spec.
template <class F>
QuadResult integrate_1d(const F& f, double a, double b, const QuadratureSpec& spec = {}) {
    spec.validate();
    if (!(a < b)) throw DomainError("integrate_1d: requires a < b");

    std::priority_queue<detail::Panel> heap;
    const std::vector<double> bp = detail::graded_breakpoints(a, b, spec.initial_panels);

    double total = 0.0, total_err = 0.0;
    std::int64_t evals = 0;
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
        detail::Panel p = detail::eval_panel(f, bp[i], bp[i + 1]);
        evals += 15;
        total += p.value;
        total_err += p.error;
        heap.push(p);
    }

    std::int64_t panels = static_cast<std::int64_t>(bp.size()) - 1;
    while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
        if (panels >= spec.max_subdivisions)
            throw ConvergenceError("integrate_1d: subdivision limit reached", total, total_err);
        detail::Panel worst = heap.top();
        heap.pop();
        const double m = 0.5 * (worst.a + worst.b);
        detail::Panel l = detail::eval_panel(f, worst.a, m);
        detail::Panel r = detail::eval_panel(f, m, worst.b);
        evals += 30;
        total += l.value + r.value - worst.value;
        total_err += l.error + r.error - worst.error;
        heap.push(l);
        heap.push(r);
        ++panels;
    }
    return QuadResult{total, total_err, evals};
}

/// Iterated adaptive 2-D integration over [ax,bx] x [ay,by]: outer axis x,
/// inner axis y, each with half the requested tolerance.
template <class F2>
QuadResult integrate_2d(const F2& f, double ax, double bx, double ay, double by,
                        const QuadratureSpec& spec = {}) {
    spec.validate();
    QuadratureSpec half = spec;
    half.rel_tol = 0.5 * spec.rel_tol;
    half.abs_tol = 0.5 * spec.abs_tol;

    std::int64_t inner_evals = 0;
    double inner_err_max = 0.0;
    auto outer = [&](double x) {
        QuadResult r = integrate_1d([&](double y) { return f(x, y); }, ay, by, half);
        inner_evals += r.evaluations;
        inner_err_max = std::max(inner_err_max, r.error_estimate);
        return r.value;
    };
    QuadResult out = integrate_1d(outer, ax, bx, half);
    out.evaluations += inner_evals;
    out.error_estimate += inner_err_max * (bx - ax);
    return out;
}

} // namespace raman3d
