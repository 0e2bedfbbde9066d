// Timing comparison between the serial reference path and the OpenMP path
// for the two hot loops: Monte-Carlo batch accumulation and sweep-point
// evaluation. Also asserts the parallel results are bit-identical to the
// serial ones, which the counter-based RNG and fixed reduction order
// guarantee by construction.
#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "raman3d/mc_oracle.hpp"
#include "raman3d/sweep.hpp"

using namespace raman3d;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

void require(bool ok, const char* what) {
    if (!ok) {
        std::fprintf(stderr, "FAILED: %s\n", what);
        std::exit(1);
    }
}

} // namespace

int main() {
    const double lambda0 = 0.8e-4;
    const double k0 = 2.0 * M_PI / lambda0;
    const EnsembleGeometry geom{500.0 / k0, 20.0 / k0, 1e12};
    const PumpBeam pump{lambda0, PumpBeam::infinite_radius()};

    SampleConfig cfg;
    cfg.n_samples = 2'000'000;
    cfg.seed = 42;
    const AngularGrid grid = make_angular_grid(48);

    auto t0 = clock_type::now();
    const McEstimate serial = estimate_ratio_pc_p2(geom, pump, cfg, grid, Exec::serial);
    const double t_serial = seconds_since(t0);

    t0 = clock_type::now();
    const McEstimate parallel = estimate_ratio_pc_p2(geom, pump, cfg, grid, Exec::parallel);
    const double t_parallel = seconds_since(t0);

    require(serial.mean == parallel.mean && serial.std_error == parallel.std_error,
            "MC ratio: serial and parallel results differ");
    std::printf("mc_ratio      serial %7.3f s   parallel %7.3f s   speedup %.2fx\n", t_serial,
                t_parallel, t_serial / t_parallel);

    SweepSpec spec;
    spec.axis = SweepAxis::theta_D;
    spec.strategy = MatchingStrategy::filtered_exact(0.002);
    for (int i = 0; i < 16; ++i) spec.values.push_back(0.001 + 0.0004 * i);

    spec.parallelism = 1;
    t0 = clock_type::now();
    const std::string csv_serial = sweep_csv(spec, run_sweep(spec));
    const double t_sweep_serial = seconds_since(t0);

    spec.parallelism = 0;  // all cores
    t0 = clock_type::now();
    const std::string csv_parallel = sweep_csv(spec, run_sweep(spec));
    const double t_sweep_parallel = seconds_since(t0);

    require(csv_serial == csv_parallel, "sweep: serial and parallel CSV bytes differ");
    std::printf("sweep_points  serial %7.3f s   parallel %7.3f s   speedup %.2fx\n",
                t_sweep_serial, t_sweep_parallel, t_sweep_serial / t_sweep_parallel);
    std::printf("all results bit-identical\n");
    return 0;
}
