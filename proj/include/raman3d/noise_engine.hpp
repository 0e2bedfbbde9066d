#pragma once

#include "raman3d/core_model.hpp"
#include "raman3d/quadrature.hpp"
#include "raman3d/signal_mode.hpp"

namespace raman3d {

/// Complete noise characterization of one (strategy, cell, pump) choice.
struct NoiseBudget {
    double pc_over_p2;     // unrestricted ratio p_c/p_2
    double chi;            // mode-mismatch ratio for the chosen strategy
    double p_spon;         // spontaneous-emission inefficiency
    double p_mode;         // inherent mode-mismatch noise
    double cone_capture;   // restricted/unrestricted capture; 1 for Exact
    double Na_pc_over_p2;  // N_a * pc_over_p2 * cone_capture
    MatchingStrategy strategy;
};

/// p_c/p_2 with the theta integration restricted to [0, theta_max];
/// theta_max = pi recovers the unrestricted ratio (the 1/k0L-order
/// correction to the denominator is neglected throughout).
double ratio_pc_p2(const EnsembleGeometry& geom, const PumpBeam& pump,
                   double theta_max, const QuadratureSpec& spec = {});

/// Mode-mismatch ratio chi for (filtered) exact matching, cone-restricted
/// to theta, theta' <= theta_max. Nonnegative; tiny negative quadrature
/// residue is clamped, larger ones raise NumericalInstability.
double chi_exact(const EnsembleGeometry& geom, const PumpBeam& pump,
                 double theta_max, const QuadratureSpec& spec = {});

/// Mode-mismatch ratio chi_s for the simple filtering method (all modes
/// inside the cone theta <= theta_D accepted, no mode shaping).
double chi_simple(const EnsembleGeometry& geom, const PumpBeam& pump,
                  double theta_D, const QuadratureSpec& spec = {});

/// Full budget for one strategy. Requires N_a >= 1e3.
NoiseBudget noise_budget(const MatchingStrategy& strategy, const EnsembleGeometry& geom,
                         const PumpBeam& pump, const QuadratureSpec& spec = {});

/// Same formulas with N_a = 1: p_mode is identically zero and
/// p_spon = 1 - (1+chi) p_c/p_2.
NoiseBudget single_atom_budget(const EnsembleGeometry& geom, const PumpBeam& pump,
                               const QuadratureSpec& spec = {});

/// Collective-enhancement factor (1-p_spon_ensemble)/(1-p_spon_single).
double enhancement_factor(const NoiseBudget& ensemble, const NoiseBudget& single_atom);

/// Largest theta_D whose p_mode stays at or below the target, found by
/// bisection on the monotone p_mode(theta_D) curve; tolerance 1e-4 rad.
double optimize_theta_d(MatchingKind strategy_kind, const EnsembleGeometry& geom,
                        const PumpBeam& pump, double p_mode_target,
                        const QuadratureSpec& spec = {});

} // namespace raman3d
