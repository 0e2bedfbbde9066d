#include "raman3d/core_model.hpp"

#include <algorithm>
#include <cmath>

namespace raman3d {

namespace {

void check_positive(double v, const char* name) {
    if (!(v > 0.0)) throw DomainError(std::string("non-positive ") + name);
}

} // namespace

ModeParams ModeParams::from(const EnsembleGeometry& geom, const PumpBeam& pump) {
    const DerivedScales s = derive_scales(geom, pump);
    const double k0R0_sq = s.k0R0 * s.k0R0;
    // t = (R0/r0)^2; exactly 0 in the broad-beam limit
    const double t = pump.broad_beam()
                         ? 0.0
                         : (geom.radius_R0 / pump.radius_r0) * (geom.radius_R0 / pump.radius_r0);
    ModeParams p;
    p.k0L = s.k0L;
    p.k0R0_sq = k0R0_sq;
    p.amp_prefactor = 1.0 / (1.0 + t);
    p.q_amp = k0R0_sq / (1.0 + t);
    p.q_sigma = k0R0_sq / (1.0 + 2.0 * t);
    p.u2_mean = 1.0 / (1.0 + 2.0 * t);
    p.pc_prefactor = (1.0 + 2.0 * t) / (2.0 * (1.0 + t) * (1.0 + t));
    p.chi_prefactor = (1.0 + t) * (1.0 + t) / (1.0 + 2.0 * t);
    p.theta_f = s.theta_f;
    return p;
}

DerivedScales derive_scales(const EnsembleGeometry& geom, const PumpBeam& pump) {
    check_positive(geom.length_L, "length_L");
    check_positive(geom.radius_R0, "radius_R0");
    check_positive(geom.density_na, "density_na");
    check_positive(pump.wavelength_lambda0, "wavelength_lambda0");
    if (!pump.broad_beam()) check_positive(pump.radius_r0, "radius_r0");

    DerivedScales s;
    s.k0 = 2.0 * M_PI / pump.wavelength_lambda0;
    s.k0L = s.k0 * geom.length_L;
    if (s.k0L < 100.0)
        throw DomainError("derive_scales: k0*L < 100 violates the long-cell assumption");

    s.d_o = geom.density_na * pump.wavelength_lambda0 * pump.wavelength_lambda0 * geom.length_L;
    s.N_a = geom.density_na * M_PI * geom.radius_R0 * geom.radius_R0 * geom.length_L;
    if (pump.broad_beam()) {
        s.r_eff = geom.radius_R0;
        s.k0r0 = std::numeric_limits<double>::infinity();
    } else {
        const double r0 = pump.radius_r0, R0 = geom.radius_R0;
        s.r_eff = r0 * R0 / std::sqrt(r0 * r0 + R0 * R0);
        s.k0r0 = s.k0 * r0;
    }
    s.Fr = M_PI * s.r_eff * s.r_eff / (pump.wavelength_lambda0 * geom.length_L);
    s.k0R0 = s.k0 * geom.radius_R0;
    s.theta_f = std::min(1.0 / std::sqrt(s.k0L), 1.0 / (s.k0 * s.r_eff));
    return s;
}

std::pair<EnsembleGeometry, PumpBeam> geometry_from_targets(
    double d_o, double Fr, double L, double lambda0, double r0_over_R0) {
    check_positive(d_o, "d_o");
    check_positive(Fr, "Fr");
    check_positive(L, "L");
    check_positive(lambda0, "lambda0");
    check_positive(r0_over_R0, "r0_over_R0");

    // Fr = pi r_eff^2/(lambda0 L) with r_eff = r0 R0/sqrt(r0^2+R0^2);
    // with rho = r0/R0, r_eff^2 = R0^2 rho^2/(1+rho^2).
    const double r_eff_sq = Fr * lambda0 * L / M_PI;
    double R0_sq;
    if (std::isinf(r0_over_R0)) {
        R0_sq = r_eff_sq;
    } else {
        const double rho2 = r0_over_R0 * r0_over_R0;
        R0_sq = r_eff_sq * (1.0 + rho2) / rho2;
    }
    EnsembleGeometry geom{L, std::sqrt(R0_sq), d_o / (lambda0 * lambda0 * L)};
    PumpBeam pump{lambda0, std::isinf(r0_over_R0) ? PumpBeam::infinite_radius()
                                                  : r0_over_R0 * geom.radius_R0};
    derive_scales(geom, pump);  // surface the k0L check at construction
    return {geom, pump};
}

double estimate_Na_pc_over_p2(const DerivedScales& s) {
    const double lambda0 = 2.0 * M_PI / s.k0;
    const double n_a = s.d_o / (lambda0 * lambda0 * (s.k0L / s.k0));
    const double cone_bound = 0.5 * n_a * lambda0 * s.r_eff * s.r_eff;
    const double depth_bound = s.d_o / (4.0 * M_PI);
    return std::min(cone_bound, depth_bound);
}

double p_spon_fit(double d_o) {
    if (d_o < 0.0) throw DomainError("p_spon_fit: requires d_o >= 0");
    return 1.0 / (1.0 + d_o / 26.0);
}

} // namespace raman3d
