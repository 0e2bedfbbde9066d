#pragma once

#include <vector>

#include "raman3d/core_model.hpp"
#include "raman3d/quadrature.hpp"

namespace raman3d {

/// Sampled angular profile of the signal mode.
struct ModeProfile {
    std::vector<double> thetas;      // rad
    std::vector<double> amplitudes;  // f_Omega(theta)
    double characteristic_angle;     // rad
};

/// Signal-mode amplitude f_Omega(theta):
///   [r0^2/(r0^2+R0^2)] exp(-k0^2 r0^2 R0^2 sin^2(theta) / 4(r0^2+R0^2))
///     * sinc(k0 L sin^2(theta/2)),
/// with prefactor 1 and Gaussian scale k0^2 R0^2 in the broad-beam limit.
double mode_amplitude(double theta, const EnsembleGeometry& geom, const PumpBeam& pump);

/// Dimensionless-group form used by the noise integrals.
double mode_amplitude(double theta, const ModeParams& p);

/// Samples f_Omega on a graded grid over [0, min(pi, 10 theta_f)].
ModeProfile mode_profile(const EnsembleGeometry& geom, const PumpBeam& pump, int n_points);

/// The shared A-integral
///   int_0^theta_max sin(theta) exp(-k0^2 r0^2 R0^2 sin^2(theta)/2(r0^2+R0^2))
///     * sinc^2(k0 L sin^2(theta/2)) dtheta,
/// i.e. the theta part of the squared mode norm restricted to a cone.
double mode_norm_integral(const EnsembleGeometry& geom, const PumpBeam& pump,
                          double theta_max, const QuadratureSpec& spec = {});

double mode_norm_integral(const ModeParams& p, double theta_max,
                          const QuadratureSpec& spec = {});

} // namespace raman3d
