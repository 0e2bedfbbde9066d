#include "raman3d/mc_oracle.hpp"

#include <cmath>
#include <numeric>

#include "raman3d/quadrature.hpp"
#include "raman3d/signal_mode.hpp"

namespace raman3d {

namespace {

double u_perp(const PumpBeam& pump, double x, double y) {
    if (pump.broad_beam()) return 1.0;
    return std::exp(-(x * x + y * y) / (pump.radius_r0 * pump.radius_r0));
}

// Runs fn(batch) for every batch index, serial or OpenMP; results must be
// written into per-batch slots so the reduction order stays fixed.
template <class Fn>
void for_each_batch(std::int64_t n_batches, Exec exec, const Fn& fn) {
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t b = 0; b < n_batches; ++b) fn(b);
    } else {
        for (std::int64_t b = 0; b < n_batches; ++b) fn(b);
    }
}

struct BatchMoments {
    std::complex<double> sum{0.0, 0.0};
    double sum_sq = 0.0;  // sum of |v|^2
};

template <class PointFn>
McEstimate accumulate_mean(const SampleConfig& cfg, Exec exec, const PointFn& value_of) {
    cfg.validate();
    const std::int64_t m = cfg.n_batches();
    std::vector<BatchMoments> parts(m);
    for_each_batch(m, exec, [&](std::int64_t b) {
        CounterRng rng(cfg.seed, static_cast<std::uint64_t>(b));
        BatchMoments acc;
        for (std::int64_t i = 0; i < cfg.batch_size; ++i) {
            const std::complex<double> v = value_of(rng, i);
            acc.sum += v;
            acc.sum_sq += std::norm(v);
        }
        parts[b] = acc;
    });
    std::complex<double> total{0.0, 0.0};
    double total_sq = 0.0;
    for (const BatchMoments& p : parts) {
        total += p.sum;
        total_sq += p.sum_sq;
    }
    McEstimate est;
    est.n = cfg.n_samples;
    est.mean = total / static_cast<double>(cfg.n_samples);
    const double var = std::max(0.0, total_sq / cfg.n_samples - std::norm(est.mean));
    est.std_error = std::sqrt(var / cfg.n_samples);
    return est;
}

} // namespace

Position sample_position(const EnsembleGeometry& geom, const CounterRng& rng,
                         std::int64_t index_in_batch) {
    const std::uint64_t base = 4ULL * static_cast<std::uint64_t>(index_in_batch);
    double n0, n1;
    rng.normal_pair(base, n0, n1);
    const double sigma = geom.radius_R0 / std::sqrt(2.0);  // density ~ exp(-rho^2/R0^2)
    Position p;
    p.x = sigma * n0;
    p.y = sigma * n1;
    p.z = geom.length_L * (rng.uniform(base + 2) - 0.5);
    return p;
}

std::vector<Position> sample_positions(const EnsembleGeometry& geom, const SampleConfig& cfg) {
    cfg.validate();
    std::vector<Position> out;
    out.reserve(cfg.n_samples);
    for (std::int64_t b = 0; b < cfg.n_batches(); ++b) {
        CounterRng rng(cfg.seed, static_cast<std::uint64_t>(b));
        for (std::int64_t i = 0; i < cfg.batch_size; ++i)
            out.push_back(sample_position(geom, rng, i));
    }
    return out;
}

McEstimate estimate_F(double theta, double phi, const EnsembleGeometry& geom,
                      const PumpBeam& pump, const SampleConfig& cfg, Exec exec) {
    if (theta < 0.0 || theta > M_PI) throw DomainError("estimate_F: theta outside [0, pi]");
    const double k0 = 2.0 * M_PI / pump.wavelength_lambda0;
    const double az = k0 * (1.0 - std::cos(theta));
    const double ax = -k0 * std::sin(theta) * std::cos(phi);
    const double ay = -k0 * std::sin(theta) * std::sin(phi);
    return accumulate_mean(cfg, exec, [&](const CounterRng& rng, std::int64_t i) {
        const Position r = sample_position(geom, rng, i);
        const double phase = az * r.z + ax * r.x + ay * r.y;
        return u_perp(pump, r.x, r.y) * std::complex<double>(std::cos(phase), std::sin(phase));
    });
}

McEstimate estimate_G(double theta, double theta_p, double delta_phi,
                      const EnsembleGeometry& geom, const PumpBeam& pump,
                      const SampleConfig& cfg, Exec exec) {
    const double k0 = 2.0 * M_PI / pump.wavelength_lambda0;
    // k at (theta, phi=0), k' at (theta_p, phi=delta_phi)
    const double qx = k0 * (std::sin(theta) - std::sin(theta_p) * std::cos(delta_phi));
    const double qy = -k0 * std::sin(theta_p) * std::sin(delta_phi);
    const double qz = k0 * (std::cos(theta) - std::cos(theta_p));
    return accumulate_mean(cfg, exec, [&](const CounterRng& rng, std::int64_t i) {
        const Position r = sample_position(geom, rng, i);
        const double u = u_perp(pump, r.x, r.y);
        const double phase = -(qx * r.x + qy * r.y + qz * r.z);
        return u * u * std::complex<double>(std::cos(phase), std::sin(phase));
    });
}

double closed_form_G(double theta, double theta_p, double delta_phi, const ModeParams& p) {
    const double st = std::sin(theta), stp = std::sin(theta_p);
    const double sh = std::sin(0.5 * theta), shp = std::sin(0.5 * theta_p);
    const double q2 = st * st + stp * stp - 2.0 * st * stp * std::cos(delta_phi);
    return p.u2_mean * std::exp(-0.25 * p.q_sigma * q2) *
           sinc(p.k0L * (sh * sh - shp * shp));
}

AngularGrid make_angular_grid(int panels) {
    const std::vector<double> bp = detail::graded_breakpoints(0.0, M_PI, panels);
    AngularGrid g;
    for (std::size_t j = 0; j + 1 < bp.size(); ++j) {
        const double c = 0.5 * (bp[j] + bp[j + 1]);
        const double h = 0.5 * (bp[j + 1] - bp[j]);
        for (int i = 7; i >= 1; --i) {
            g.nodes.push_back(c - h * detail::gk15_nodes[i]);
            g.weights.push_back(h * detail::gk15_wk[i]);
        }
        g.nodes.push_back(c);
        g.weights.push_back(h * detail::gk15_wk[0]);
        for (int i = 1; i <= 7; ++i) {
            g.nodes.push_back(c + h * detail::gk15_nodes[i]);
            g.weights.push_back(h * detail::gk15_wk[i]);
        }
    }
    return g;
}

McEstimate estimate_ratio_pc_p2(const EnsembleGeometry& geom, const PumpBeam& pump,
                                const SampleConfig& cfg, const AngularGrid& grid,
                                Exec exec) {
    cfg.validate();
    const std::int64_t m = cfg.n_batches();
    const std::size_t nn = grid.nodes.size();
    const double k0 = 2.0 * M_PI / pump.wavelength_lambda0;

    std::vector<double> phase_z(nn), phase_x(nn);
    for (std::size_t j = 0; j < nn; ++j) {
        phase_z[j] = k0 * (1.0 - std::cos(grid.nodes[j]));
        phase_x[j] = -k0 * std::sin(grid.nodes[j]);  // phi = 0; |F|^2 is phi-independent
    }

    std::vector<double> batch_ratio(m);
    for_each_batch(m, exec, [&](std::int64_t b) {
        CounterRng rng(cfg.seed, static_cast<std::uint64_t>(b));
        std::vector<std::complex<double>> half1(nn, {0.0, 0.0}), half2(nn, {0.0, 0.0});
        double u2_sum = 0.0;
        const std::int64_t half = cfg.batch_size / 2;
        for (std::int64_t i = 0; i < cfg.batch_size; ++i) {
            const Position r = sample_position(geom, rng, i);
            const double u = u_perp(pump, r.x, r.y);
            u2_sum += u * u;
            auto& dst = i < half ? half1 : half2;
            for (std::size_t j = 0; j < nn; ++j) {
                const double phase = phase_z[j] * r.z + phase_x[j] * r.x;
                dst[j] += u * std::complex<double>(std::cos(phase), std::sin(phase));
            }
        }
        // numerator int dOmega |F|^2 with the unbiased split-half product
        double num = 0.0;
        for (std::size_t j = 0; j < nn; ++j) {
            const std::complex<double> f1 = half1[j] / static_cast<double>(half);
            const std::complex<double> f2 = half2[j] / static_cast<double>(cfg.batch_size - half);
            num += grid.weights[j] * 2.0 * M_PI * std::sin(grid.nodes[j]) *
                   (f1 * std::conj(f2)).real();
        }
        const double u2 = u2_sum / cfg.batch_size;
        batch_ratio[b] = num / (4.0 * M_PI * u2 - num);
    });

    McEstimate est;
    est.n = m;
    double mean = 0.0;
    for (double r : batch_ratio) mean += r;
    mean /= m;
    double var = 0.0;
    for (double r : batch_ratio) var += (r - mean) * (r - mean);
    var /= (m - 1);
    est.mean = {mean, 0.0};
    est.std_error = std::sqrt(var / m);
    return est;
}

double grid_ratio_closed_form(const EnsembleGeometry& geom, const PumpBeam& pump,
                              const AngularGrid& grid) {
    const ModeParams p = ModeParams::from(geom, pump);
    double num = 0.0;
    for (std::size_t j = 0; j < grid.nodes.size(); ++j) {
        const double f = mode_amplitude(grid.nodes[j], p);
        num += grid.weights[j] * 2.0 * M_PI * std::sin(grid.nodes[j]) * f * f;
    }
    return num / (4.0 * M_PI * p.u2_mean - num);
}

} // namespace raman3d
