#include "raman3d/signal_mode.hpp"

#include <algorithm>
#include <cmath>

namespace raman3d {

double mode_amplitude(double theta, const ModeParams& p) {
    if (theta < 0.0 || theta > M_PI)
        throw DomainError("mode_amplitude: theta outside [0, pi]");
    const double st = std::sin(theta);
    const double sh = std::sin(0.5 * theta);
    return p.amp_prefactor * std::exp(-0.25 * p.q_amp * st * st) * sinc(p.k0L * sh * sh);
}

double mode_amplitude(double theta, const EnsembleGeometry& geom, const PumpBeam& pump) {
    return mode_amplitude(theta, ModeParams::from(geom, pump));
}

ModeProfile mode_profile(const EnsembleGeometry& geom, const PumpBeam& pump, int n_points) {
    if (n_points < 16) throw DomainError("mode_profile: n_points must be >= 16");
    const ModeParams p = ModeParams::from(geom, pump);

    ModeProfile prof;
    prof.characteristic_angle = p.theta_f;
    const double theta_max = std::min(M_PI, 10.0 * p.theta_f);
    // graded sampling, denser near the forward direction
    prof.thetas.reserve(n_points);
    prof.amplitudes.reserve(n_points);
    for (int i = 0; i < n_points; ++i) {
        const double u = static_cast<double>(i) / (n_points - 1);
        const double theta = theta_max * u * u;
        prof.thetas.push_back(theta);
        prof.amplitudes.push_back(mode_amplitude(theta, p));
    }
    return prof;
}

double mode_norm_integral(const ModeParams& p, double theta_max, const QuadratureSpec& spec) {
    if (!(theta_max > 0.0) || theta_max > M_PI)
        throw DomainError("mode_norm_integral: theta_max outside (0, pi]");
    auto integrand = [&p](double theta) {
        const double st = std::sin(theta);
        const double sh = std::sin(0.5 * theta);
        const double s = sinc(p.k0L * sh * sh);
        return st * std::exp(-0.5 * p.q_amp * st * st) * s * s;
    };
    return integrate_1d(integrand, 0.0, theta_max, spec).value;
}

double mode_norm_integral(const EnsembleGeometry& geom, const PumpBeam& pump,
                          double theta_max, const QuadratureSpec& spec) {
    return mode_norm_integral(ModeParams::from(geom, pump), theta_max, spec);
}

} // namespace raman3d
