#include "raman3d/noise_engine.hpp"

#include <algorithm>
#include <cmath>

namespace raman3d {

namespace {

// phi-averaged density-fluctuation kernel of the chi double integral:
//   exp(-q_sigma (s-s')^2 / 4) * i0e(q_sigma s s' / 2)
//     * exp(-q_amp (s^2+s'^2) / 4),   s = sin(theta), s' = sin(theta').
// The Bessel function is kept in scaled form so the combined exponent is
// always <= 0 and the product never overflows.
double chi_kernel(const ModeParams& p, double st, double stp) {
    const double d = st - stp;
    return std::exp(-0.25 * p.q_sigma * d * d - 0.25 * p.q_amp * (st * st + stp * stp)) *
           bessel_i0_scaled(0.5 * p.q_sigma * st * stp);
}

double chi_exact_impl(const ModeParams& p, double theta_max, const QuadratureSpec& spec) {
    if (!(theta_max > 0.0) || theta_max > M_PI)
        throw DomainError("chi_exact: theta_max outside (0, pi]");

    const double A = mode_norm_integral(p, theta_max, spec);

    auto integrand = [&p](double theta, double theta_p) {
        const double st = std::sin(theta), stp = std::sin(theta_p);
        const double sh = std::sin(0.5 * theta), shp = std::sin(0.5 * theta_p);
        const double sh2 = sh * sh, shp2 = shp * shp;
        return st * stp * chi_kernel(p, st, stp) * sinc(p.k0L * (sh2 - shp2)) *
               sinc(p.k0L * sh2) * sinc(p.k0L * shp2);
    };
    const QuadResult D = integrate_2d(integrand, 0.0, theta_max, 0.0, theta_max, spec);

    const double ratio = p.chi_prefactor * D.value / (A * A);
    double chi = ratio - 1.0;
    if (chi < 0.0) {
        const double err = p.chi_prefactor * D.error_estimate / (A * A) +
                           2.0 * ratio * std::max(spec.rel_tol, spec.abs_tol / A);
        if (-chi > 10.0 * err)
            throw NumericalInstability("chi_exact: negative chi beyond quadrature error budget");
        chi = 0.0;
    }
    return chi;
}

double chi_simple_impl(const ModeParams& p, double theta_D, const QuadratureSpec& spec) {
    if (!(theta_D > 0.0) || theta_D > M_PI)
        throw DomainError("chi_simple: theta_D outside (0, pi]");
    // 1/(chi_s+1) = |f(theta)|^2 capture over the flat in-cone acceptance:
    //   A(theta_D) / ((1 - cos theta_D) * chi_prefactor)
    // which reduces to the broad-beam closed form when r0 -> inf.
    const double A = mode_norm_integral(p, theta_D, spec);
    const double inv = A / ((1.0 - std::cos(theta_D)) * p.chi_prefactor);
    return 1.0 / inv - 1.0;
}

} // namespace

double ratio_pc_p2(const EnsembleGeometry& geom, const PumpBeam& pump,
                   double theta_max, const QuadratureSpec& spec) {
    const ModeParams p = ModeParams::from(geom, pump);
    return p.pc_prefactor * mode_norm_integral(p, theta_max, spec);
}

double chi_exact(const EnsembleGeometry& geom, const PumpBeam& pump,
                 double theta_max, const QuadratureSpec& spec) {
    return chi_exact_impl(ModeParams::from(geom, pump), theta_max, spec);
}

double chi_simple(const EnsembleGeometry& geom, const PumpBeam& pump,
                  double theta_D, const QuadratureSpec& spec) {
    return chi_simple_impl(ModeParams::from(geom, pump), theta_D, spec);
}

NoiseBudget noise_budget(const MatchingStrategy& strategy, const EnsembleGeometry& geom,
                         const PumpBeam& pump, const QuadratureSpec& spec) {
    const DerivedScales scales = derive_scales(geom, pump);
    if (scales.N_a < 1e3)
        throw DomainError("noise_budget: N_a < 1e3 violates the large-ensemble approximation");
    const ModeParams p = ModeParams::from(geom, pump);

    NoiseBudget b;
    b.strategy = strategy;
    const double ratio_full = p.pc_prefactor * mode_norm_integral(p, M_PI, spec);
    b.pc_over_p2 = ratio_full;

    if (strategy.variant == MatchingKind::Exact) {
        b.cone_capture = 1.0;
        b.p_spon = 1.0 / (1.0 + scales.N_a * ratio_full);
        b.chi = chi_exact_impl(p, M_PI, spec);
    } else {
        const double ratio_cone = p.pc_prefactor * mode_norm_integral(p, strategy.theta_D, spec);
        b.cone_capture = ratio_cone / ratio_full;
        // restricted capture against the unrestricted total emission
        b.p_spon = 1.0 - scales.N_a * ratio_cone / (scales.N_a * ratio_full + 1.0);
        b.chi = strategy.variant == MatchingKind::FilteredExact
                    ? chi_exact_impl(p, strategy.theta_D, spec)
                    : chi_simple_impl(p, strategy.theta_D, spec);
    }
    b.p_mode = b.chi / (1.0 + b.chi);
    b.Na_pc_over_p2 = scales.N_a * b.pc_over_p2 * b.cone_capture;
    return b;
}

NoiseBudget single_atom_budget(const EnsembleGeometry& geom, const PumpBeam& pump,
                               const QuadratureSpec& spec) {
    const ModeParams p = ModeParams::from(geom, pump);
    NoiseBudget b;
    b.strategy = MatchingStrategy::exact();
    b.pc_over_p2 = p.pc_prefactor * mode_norm_integral(p, M_PI, spec);
    b.chi = chi_exact_impl(p, M_PI, spec);
    b.p_mode = 0.0;
    b.p_spon = 1.0 - (1.0 + b.chi) * b.pc_over_p2;
    b.cone_capture = 1.0;
    b.Na_pc_over_p2 = b.pc_over_p2;
    return b;
}

double enhancement_factor(const NoiseBudget& ensemble, const NoiseBudget& single_atom) {
    return (1.0 - ensemble.p_spon) / (1.0 - single_atom.p_spon);
}

double optimize_theta_d(MatchingKind strategy_kind, const EnsembleGeometry& geom,
                        const PumpBeam& pump, double p_mode_target,
                        const QuadratureSpec& spec) {
    if (strategy_kind == MatchingKind::Exact)
        throw DomainError("optimize_theta_d: only the filtered strategies admit a theta_D");
    const ModeParams p = ModeParams::from(geom, pump);
    const DerivedScales scales = derive_scales(geom, pump);

    auto p_mode_at = [&](double theta_d) {
        const double chi = strategy_kind == MatchingKind::FilteredExact
                               ? chi_exact_impl(p, theta_d, spec)
                               : chi_simple_impl(p, theta_d, spec);
        return chi / (1.0 + chi);
    };

    const double p_mode_unrestricted = p_mode_at(M_PI);
    if (!(p_mode_target > 0.0) || p_mode_target >= p_mode_unrestricted)
        throw DomainError("optimize_theta_d: target outside (0, p_mode_exact)");

    // smallest admissible aperture: ~10 diffraction angles of the full
    // cell length, well below every tabulated operating point
    const double theta_lo = 10.0 / scales.k0L;
    if (p_mode_at(theta_lo) > p_mode_target)
        throw NoSolution("optimize_theta_d: target below p_mode at the smallest aperture");

    double lo = theta_lo, hi = M_PI;
    while (hi - lo > 1e-4) {
        const double mid = 0.5 * (lo + hi);
        (p_mode_at(mid) <= p_mode_target ? lo : hi) = mid;
    }
    return lo;
}

} // namespace raman3d
