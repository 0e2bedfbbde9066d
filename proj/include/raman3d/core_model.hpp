#pragma once

#include <cmath>
#include <limits>
#include <utility>

#include "raman3d/errors.hpp"

namespace raman3d {

/// Atomic cell: length, transverse Gaussian radius, number density.
/// Lengths in cm, density in cm^-3 throughout the core.
struct EnsembleGeometry {
    double length_L;    // cm
    double radius_R0;   // cm
    double density_na;  // cm^-3
};

/// Gaussian drive beam. radius_r0 may be infinity (broad-beam limit,
/// r0 >> R0), which every downstream formula handles analytically.
struct PumpBeam {
    double wavelength_lambda0;  // cm
    double radius_r0;           // cm, may be +inf

    static constexpr double infinite_radius() {
        return std::numeric_limits<double>::infinity();
    }
    bool broad_beam() const { return std::isinf(radius_r0); }
};

/// Every dimensionless group the closed forms depend on.
struct DerivedScales {
    double k0;       // cm^-1
    double d_o;      // optical depth, n_a lambda0^2 L
    double Fr;       // Fresnel number, pi r_eff^2 / (lambda0 L)
    double N_a;      // atom count, n_a pi R0^2 L
    double r_eff;    // cm, r0 R0 / sqrt(r0^2 + R0^2)
    double theta_f;  // forward-cone angle, min(1/sqrt(k0 L), 1/(k0 r_eff))
    double k0L;
    double k0R0;
    double k0r0;     // may be +inf
};

enum class MatchingKind { Exact, FilteredExact, SimpleFilter };

struct MatchingStrategy {
    MatchingKind variant = MatchingKind::Exact;
    double theta_D = M_PI;  // rad, used by FilteredExact and SimpleFilter

    static MatchingStrategy exact() { return {MatchingKind::Exact, M_PI}; }
    static MatchingStrategy filtered_exact(double theta_d) {
        check_angle(theta_d);
        return {MatchingKind::FilteredExact, theta_d};
    }
    static MatchingStrategy simple_filter(double theta_d) {
        check_angle(theta_d);
        return {MatchingKind::SimpleFilter, theta_d};
    }

private:
    static void check_angle(double theta_d) {
        if (!(theta_d > 0.0) || theta_d > M_PI)
            throw DomainError("MatchingStrategy: theta_D must be in (0, pi]");
    }
};

/// Limit-safe dimensionless ratios built from t = R0^2/r0^2 (t = 0 in the
/// broad-beam limit). These are the only geometry inputs the angular
/// integrands of the signal mode and the noise ratios need.
struct ModeParams {
    double k0L;
    double k0R0_sq;        // (k0 R0)^2
    double amp_prefactor;  // r0^2/(r0^2+R0^2)
    double q_amp;          // k0^2 r0^2 R0^2/(r0^2+R0^2), amplitude Gaussian scale
    double q_sigma;        // k0^2 r0^2 R0^2/(r0^2+2R0^2), density-fluctuation scale
    double u2_mean;        // <|u_perp|^2> = r0^2/(r0^2+2R0^2)
    double pc_prefactor;   // r0^2(r0^2+2R0^2)/(2(r0^2+R0^2)^2)
    double chi_prefactor;  // (r0^2+R0^2)^2/(r0^2(r0^2+2R0^2))
    double theta_f;

    static ModeParams from(const EnsembleGeometry& geom, const PumpBeam& pump);
};

/// All derived scales from a (geometry, pump) pair. Pure; throws
/// DomainError on non-positive fields or k0 L < 100 (the long-cell
/// assumption the closed forms rest on).
DerivedScales derive_scales(const EnsembleGeometry& geom, const PumpBeam& pump);

/// Inverse of derive_scales on the (d_o, Fr) targets: builds the cell and
/// beam realizing the requested optical depth and Fresnel number at the
/// given length and wavelength. r0_over_R0 may be infinity.
std::pair<EnsembleGeometry, PumpBeam> geometry_from_targets(
    double d_o, double Fr, double L, double lambda0, double r0_over_R0);

/// Order-of-magnitude estimator min(n_a lambda0 r_eff^2 / 2, n_a lambda0^2 L / (4 pi)).
double estimate_Na_pc_over_p2(const DerivedScales& scales);

/// Empirical optical-depth law 1/(1 + d_o/26); valid for exact matching
/// with Fr between 1 and 10.
double p_spon_fit(double d_o);

} // namespace raman3d
