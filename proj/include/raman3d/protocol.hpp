#pragma once

#include "raman3d/noise_engine.hpp"

namespace raman3d {

struct ProtocolParams {
    double fidelity_imperfection_target;  // delta_f in (0, 0.5)
    double phase_phi = 0.0;               // channel phase difference, rad
    double c0_extra = 0.0;                // additive vacuum weight (dark counts etc.)
    // When set, the preparation loss is applied both to the p_c sizing and
    // to the click detection. Off by default: the single-factor reading
    // matches the quoted repetition overheads.
    bool double_loss_factor = false;

    void validate() const {
        if (!(fidelity_imperfection_target > 0.0) || fidelity_imperfection_target >= 0.5)
            throw DomainError("ProtocolParams: delta_f must be in (0, 0.5)");
        if (c0_extra < 0.0) throw DomainError("ProtocolParams: c0_extra must be >= 0");
    }
};

struct ProtocolMetrics {
    double required_pc;        // excitation probability delivering delta_f
    double p_click_per_round;  // success probability per pumping round
    double expected_rounds;    // 1 / p_click_per_round
    double c0;                 // vacuum coefficient of the conditional state
    double state_fidelity;     // overlap with the maximally entangled state
};

/// Excitation probability to run at so the delivered fidelity imperfection
/// p_c/(1 - p_spon) equals delta_f.
double required_pc(double delta_f, double p_spon);

/// Entanglement-generation figures of merit for a noise budget.
ProtocolMetrics success_metrics(const ProtocolParams& params, const NoiseBudget& budget);

/// Overlap of the vacuum-mixed conditional state with the maximally
/// entangled target: 1/(1+c0), independent of the channel phase.
double mixed_state_fidelity(double c0);

} // namespace raman3d
