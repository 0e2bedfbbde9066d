#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "raman3d/core_model.hpp"
#include "raman3d/counter_rng.hpp"

namespace raman3d {

/// Execution policy for the batch loops. Serial is the reference path the
/// tests compare against; results are bit-identical either way because
/// batches draw from independent counter streams and are reduced in fixed
/// order.
enum class Exec { serial, parallel };

struct SampleConfig {
    std::int64_t n_samples = 1'000'000;
    std::uint64_t seed = 0;
    std::int64_t batch_size = 50'000;

    void validate() const {
        if (n_samples < 1'000) throw DomainError("SampleConfig: n_samples must be >= 1e3");
        if (batch_size < 2 || n_samples % batch_size != 0)
            throw DomainError("SampleConfig: batch_size must divide n_samples");
    }
    std::int64_t n_batches() const { return n_samples / batch_size; }
};

struct McEstimate {
    std::complex<double> mean{0.0, 0.0};
    double std_error = 0.0;
    std::int64_t n = 0;
};

struct Position {
    double x, y, z;
};

/// One atom position from the cell distribution: transverse coordinates
/// Gaussian with density ~ exp(-(x^2+y^2)/R0^2), z uniform on [-L/2, L/2].
Position sample_position(const EnsembleGeometry& geom, const CounterRng& rng,
                         std::int64_t index_in_batch);

/// i.i.d. positions, deterministic in (cfg.seed, cfg).
std::vector<Position> sample_positions(const EnsembleGeometry& geom, const SampleConfig& cfg);

/// Monte-Carlo mean of u_perp(r) exp(i k0 z (1-cos theta)
///   - i k0 sin theta (x cos phi + y sin phi)) over atom positions:
/// the brute-force route to the signal-mode amplitude.
McEstimate estimate_F(double theta, double phi, const EnsembleGeometry& geom,
                      const PumpBeam& pump, const SampleConfig& cfg,
                      Exec exec = Exec::parallel);

/// Monte-Carlo mean of |u_perp(r)|^2 exp(-i (k - k') . r) with k, k' at
/// polar angles theta, theta_p separated azimuthally by delta_phi.
McEstimate estimate_G(double theta, double theta_p, double delta_phi,
                      const EnsembleGeometry& geom, const PumpBeam& pump,
                      const SampleConfig& cfg, Exec exec = Exec::parallel);

/// Closed form the estimate_G route checks:
///   <|u|^2> exp(-q_sigma (s^2 + s'^2 - 2 s s' cos dphi)/4)
///     * sinc(k0 L (sin^2(t/2) - sin^2(t'/2))).
double closed_form_G(double theta, double theta_p, double delta_phi, const ModeParams& p);

/// Fixed composite angular rule on [0, pi], graded toward 0, shared by the
/// MC ratio estimate and its closed-form reference so the comparison
/// isolates the ensemble averages.
struct AngularGrid {
    std::vector<double> nodes;
    std::vector<double> weights;
};
AngularGrid make_angular_grid(int panels);

/// Brute-force p_c/p_2: angular quadrature of MC estimates of |F|^2 and
/// <|u|^2>, with common random numbers across angles and the numerator
/// de-biased by splitting each batch into two independent halves. Returns
/// the ratio with a batch-spread standard error (n = number of batches).
McEstimate estimate_ratio_pc_p2(const EnsembleGeometry& geom, const PumpBeam& pump,
                                const SampleConfig& cfg, const AngularGrid& grid,
                                Exec exec = Exec::parallel);

/// Same angular rule applied to the closed-form |f_Omega|^2 and <|u|^2>,
/// including the full denominator of the defining ratio (no 1/k0L-order
/// truncation), for z-scoring the MC estimate.
double grid_ratio_closed_form(const EnsembleGeometry& geom, const PumpBeam& pump,
                              const AngularGrid& grid);

} // namespace raman3d
