#include <doctest.h>

#include <cmath>

#include "raman3d/mc_oracle.hpp"
#include "raman3d/noise_engine.hpp"
#include "raman3d/signal_mode.hpp"

using namespace raman3d;

namespace {

const double kLambda0 = 0.8e-4;
const double kK0 = 2.0 * M_PI / kLambda0;
const EnsembleGeometry kGeom{500.0 / kK0, 20.0 / kK0, 1e12};
const PumpBeam kBroad{kLambda0, PumpBeam::infinite_radius()};
const PumpBeam kFinite{kLambda0, 40.0 / kK0};

SampleConfig quick_cfg(std::uint64_t seed, std::int64_t n = 200'000) {
    SampleConfig cfg;
    cfg.n_samples = n;
    cfg.seed = seed;
    cfg.batch_size = n / 10;
    return cfg;
}

} // namespace

TEST_CASE("SampleConfig validation") {
    SampleConfig cfg;
    cfg.n_samples = 500;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg.n_samples = 10'000;
    cfg.batch_size = 3'000;  // does not divide
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg.batch_size = 2'000;
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("sample_positions: moments match the cell distribution") {
    const SampleConfig cfg = quick_cfg(11, 400'000);
    const auto pos = sample_positions(kGeom, cfg);
    REQUIRE(pos.size() == static_cast<std::size_t>(cfg.n_samples));

    double sx = 0, sz = 0, sxx = 0, szz = 0;
    for (const Position& p : pos) {
        sx += p.x;
        sz += p.z;
        sxx += p.x * p.x;
        szz += p.z * p.z;
    }
    const double n = static_cast<double>(pos.size());
    const double R0 = kGeom.radius_R0, L = kGeom.length_L;
    CHECK(std::abs(sx / n) < 5.0 * R0 / std::sqrt(2.0 * n));
    CHECK(std::abs(sz / n) < 5.0 * L / std::sqrt(12.0 * n));
    // transverse density ~ exp(-rho^2/R0^2): Var x = R0^2/2
    CHECK(sxx / n == doctest::Approx(0.5 * R0 * R0).epsilon(0.02));
    CHECK(szz / n == doctest::Approx(L * L / 12.0).epsilon(0.02));
    for (const Position& p : pos) {
        CHECK(p.z >= -0.5 * L);
        CHECK(p.z <= 0.5 * L);
    }
}

TEST_CASE("sample_positions: deterministic in the seed") {
    const auto a = sample_positions(kGeom, quick_cfg(5, 10'000));
    const auto b = sample_positions(kGeom, quick_cfg(5, 10'000));
    const auto c = sample_positions(kGeom, quick_cfg(6, 10'000));
    CHECK(a[123].x == b[123].x);
    CHECK(a[9999].z == b[9999].z);
    CHECK(a[0].x != c[0].x);
}

TEST_CASE("estimate_F: exact at theta = 0 for a broad beam") {
    const McEstimate est = estimate_F(0.0, 0.0, kGeom, kBroad, quick_cfg(1, 10'000));
    CHECK(est.mean.real() == 1.0);
    CHECK(est.mean.imag() == 0.0);
    CHECK(est.std_error == 0.0);
}

TEST_CASE("estimate_F: matches the closed form within 3 sigma") {
    for (std::uint64_t seed : {2u, 3u}) {
        for (double theta : {0.03, 0.08}) {
            const McEstimate est = estimate_F(theta, 0.9, kGeom, kFinite, quick_cfg(seed));
            const double ref = mode_amplitude(theta, kGeom, kFinite);
            CHECK(std::abs(est.mean.real() - ref) <= 3.0 * est.std_error);
            CHECK(std::abs(est.mean.imag()) <= 4.0 * est.std_error);
        }
    }
}

TEST_CASE("estimate_G: matches the closed form within 3 sigma") {
    const ModeParams pf = ModeParams::from(kGeom, kFinite);
    const ModeParams pb = ModeParams::from(kGeom, kBroad);
    for (std::uint64_t seed : {4u, 5u}) {
        McEstimate est = estimate_G(0.03, 0.05, 0.7, kGeom, kFinite, quick_cfg(seed));
        CHECK(std::abs(est.mean.real() - closed_form_G(0.03, 0.05, 0.7, pf)) <=
              3.0 * est.std_error);
        est = estimate_G(0.06, 0.02, 2.0, kGeom, kBroad, quick_cfg(seed));
        CHECK(std::abs(est.mean.real() - closed_form_G(0.06, 0.02, 2.0, pb)) <=
              3.0 * est.std_error);
    }
}

TEST_CASE("closed_form_G: symmetric, bounded, unity at coincident angles") {
    const ModeParams p = ModeParams::from(kGeom, kFinite);
    CHECK(closed_form_G(0.04, 0.04, 0.0, p) == doctest::Approx(p.u2_mean).epsilon(1e-12));
    CHECK(closed_form_G(0.03, 0.07, 0.5, p) ==
          doctest::Approx(closed_form_G(0.07, 0.03, 0.5, p)).epsilon(1e-12));
    CHECK(std::abs(closed_form_G(0.1, 0.02, 1.0, p)) <= p.u2_mean);
}

TEST_CASE("angular grid: positive weights integrating sin to 2") {
    const AngularGrid grid = make_angular_grid(48);
    REQUIRE(grid.nodes.size() == grid.weights.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
        CHECK(grid.weights[i] > 0.0);
        CHECK(grid.nodes[i] >= 0.0);
        CHECK(grid.nodes[i] <= M_PI);
        acc += grid.weights[i] * std::sin(grid.nodes[i]);
    }
    CHECK(acc == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("estimate_ratio_pc_p2: within 3 standard errors of the closed form") {
    const AngularGrid grid = make_angular_grid(32);
    SampleConfig cfg = quick_cfg(7, 400'000);
    for (const PumpBeam& pump : {kBroad, kFinite}) {
        const McEstimate est = estimate_ratio_pc_p2(kGeom, pump, cfg, grid);
        const double ref = grid_ratio_closed_form(kGeom, pump, grid);
        CHECK(std::abs(est.mean.real() - ref) <= 3.0 * est.std_error);
        CHECK(est.std_error < 0.05 * ref);
    }
}

TEST_CASE("grid_ratio_closed_form: consistent with the adaptive ratio") {
    const AngularGrid grid = make_angular_grid(48);
    const double on_grid = grid_ratio_closed_form(kGeom, kBroad, grid);
    const double adaptive = ratio_pc_p2(kGeom, kBroad, M_PI);
    CHECK(on_grid == doctest::Approx(adaptive).epsilon(5e-3));
}

TEST_CASE("serial and parallel execution are bit-identical") {
    const SampleConfig cfg = quick_cfg(9);
    const McEstimate fs = estimate_F(0.05, 0.2, kGeom, kFinite, cfg, Exec::serial);
    const McEstimate fp = estimate_F(0.05, 0.2, kGeom, kFinite, cfg, Exec::parallel);
    CHECK(fs.mean == fp.mean);
    CHECK(fs.std_error == fp.std_error);

    const AngularGrid grid = make_angular_grid(16);
    const McEstimate rs = estimate_ratio_pc_p2(kGeom, kBroad, cfg, grid, Exec::serial);
    const McEstimate rp = estimate_ratio_pc_p2(kGeom, kBroad, cfg, grid, Exec::parallel);
    CHECK(rs.mean == rp.mean);
    CHECK(rs.std_error == rp.std_error);
}
