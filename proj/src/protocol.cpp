#include "raman3d/protocol.hpp"

namespace raman3d {

double required_pc(double delta_f, double p_spon) {
    if (!(delta_f > 0.0) || delta_f >= 0.5)
        throw DomainError("required_pc: delta_f must be in (0, 0.5)");
    if (!(p_spon >= 0.0) || p_spon >= 1.0)
        throw DomainError("required_pc: p_spon must be in [0, 1)");
    // the retained fraction (1 - p_spon) of p_c is what degrades fidelity
    return delta_f * (1.0 - p_spon);
}

double mixed_state_fidelity(double c0) {
    if (c0 < 0.0) throw DomainError("mixed_state_fidelity: c0 must be >= 0");
    return 1.0 / (1.0 + c0);
}

ProtocolMetrics success_metrics(const ProtocolParams& params, const NoiseBudget& budget) {
    params.validate();
    if (!(budget.p_spon >= 0.0) || budget.p_spon >= 1.0)
        throw DomainError("success_metrics: budget p_spon must be in [0, 1)");
    if (!(budget.p_mode >= 0.0) || budget.p_mode >= 1.0)
        throw DomainError("success_metrics: budget p_mode must be in [0, 1)");

    ProtocolMetrics m;
    m.required_pc = required_pc(params.fidelity_imperfection_target, budget.p_spon);
    // two arms each fire with probability p_c; a click heralds either one
    m.p_click_per_round = 2.0 * m.required_pc;
    if (params.double_loss_factor) m.p_click_per_round *= (1.0 - budget.p_spon);
    m.expected_rounds = 1.0 / m.p_click_per_round;
    m.c0 = budget.p_mode / (1.0 - budget.p_mode) + params.c0_extra;
    m.state_fidelity = mixed_state_fidelity(m.c0);
    return m;
}

} // namespace raman3d
