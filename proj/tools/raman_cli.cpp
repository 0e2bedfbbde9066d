#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "raman3d/sweep.hpp"

namespace {

int write_output(const std::string& path, const std::string& payload) {
    if (path.empty()) {
        std::cout << payload;
        return 0;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open output file " << path << "\n";
        return 4;
    }
    out << payload;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"3-D light-ensemble noise model: sweeps, figure/table reproduction, MC oracle"};
    app.set_version_flag("--version", raman3d::kToolVersion);

    std::string config_path, out_path, cache_dir, strategy, reproduce_target;
    double theta_d = -1.0;
    int parallelism = 0;
    bool oracle = false;
    std::uint64_t seed = 0;

    app.add_option("--config", config_path, "JSON config file for a sweep run");
    app.add_option("--out", out_path, "output file (default: stdout)");
    app.add_option("--cache-dir", cache_dir, "result cache directory");
    app.add_option("--parallelism", parallelism, "worker count (0 = auto)");
    app.add_option("--strategy", strategy, "exact | filtered_exact | simple_filter");
    app.add_option("--theta-d", theta_d, "detection cone half-angle [rad]");
    app.add_option("--reproduce", reproduce_target,
                   "fig5 | fig6 | fig7 | fig8 | fig9 | table1 | table2");
    app.add_flag("--oracle", oracle, "run the Monte-Carlo cross-check report");
    app.add_option("--seed", seed, "RNG seed for --oracle");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!reproduce_target.empty()) {
            const raman3d::ReproduceReport rep = raman3d::reproduce(
                raman3d::parse_target(reproduce_target), cache_dir, parallelism);
            const int rc = write_output(out_path, rep.csv);
            if (rc != 0) return rc;
            std::cerr << rep.summary;
            return rep.ok() ? 0 : 2;
        }

        if (oracle) {
            const nlohmann::json report = raman3d::run_oracle(seed, 1'000'000, parallelism);
            const int rc = write_output(out_path, report.dump(1) + "\n");
            if (rc != 0) return rc;
            return report["all_ok"].get<bool>() ? 0 : 2;
        }

        if (config_path.empty()) {
            std::cerr << "error: need one of --config, --reproduce, --oracle\n";
            return 4;
        }
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "error: cannot read config file " << config_path << "\n";
            return 4;
        }
        nlohmann::json cfg;
        in >> cfg;

        raman3d::SweepSpec spec = raman3d::parse_config(cfg);
        // command-line flags take precedence over config keys
        if (!cache_dir.empty()) spec.cache_dir = cache_dir;
        if (parallelism > 0) spec.parallelism = parallelism;
        if (!strategy.empty()) {
            const double td = theta_d > 0.0 ? theta_d : spec.strategy.theta_D;
            if (strategy == "exact") spec.strategy = raman3d::MatchingStrategy::exact();
            else if (strategy == "filtered_exact")
                spec.strategy = raman3d::MatchingStrategy::filtered_exact(td);
            else if (strategy == "simple_filter")
                spec.strategy = raman3d::MatchingStrategy::simple_filter(td);
            else throw raman3d::DomainError("unknown strategy '" + strategy + "'");
        } else if (theta_d > 0.0) {
            if (spec.strategy.variant == raman3d::MatchingKind::Exact)
                throw raman3d::DomainError("--theta-d needs a filtered strategy");
            spec.strategy.theta_D = theta_d;
        }
        spec.validate();

        const std::vector<raman3d::SweepRow> rows = raman3d::run_sweep(spec);
        const int rc = write_output(out_path, raman3d::sweep_csv(spec, rows));
        if (rc != 0) return rc;
        for (const raman3d::SweepRow& r : rows)
            if (r.quad_error_flag) {
                std::cerr << "warning: quadrature failure at axis_value="
                          << raman3d::format_g12(r.axis_value) << "\n";
                return 3;
            }
        return 0;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 4;
    } catch (const raman3d::ConvergenceError& e) {
        std::cerr << "quadrature error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
