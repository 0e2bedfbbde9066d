#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "raman3d/noise_engine.hpp"
#include "raman3d/protocol.hpp"

namespace raman3d {

inline constexpr const char* kToolVersion = "1.0.0";

enum class SweepAxis { optical_depth, theta_D, fresnel };

/// One sweep request. The cell is kept in target form (d_o, Fr, L,
/// lambda0, r0/R0); geometry-form configs are converted on parse so axis
/// overrides of d_o and Fr stay well defined.
struct SweepSpec {
    double d_o = 1.9e3;
    double Fr = 1.0;
    double length_L = 1.0;     // cm
    double lambda0 = 0.8e-4;   // cm
    double r0_over_R0 = std::numeric_limits<double>::infinity();
    SweepAxis axis = SweepAxis::theta_D;
    std::vector<double> values;
    MatchingStrategy strategy = MatchingStrategy::exact();
    QuadratureSpec quadrature;
    int parallelism = 0;       // 0 = runtime default
    bool with_protocol = false;
    double delta_f = 0.01;
    std::string cache_dir;     // empty disables the cache

    void validate() const;
};

struct SweepRow {
    double axis_value = 0.0;
    NoiseBudget budget{};
    ProtocolMetrics protocol{};
    bool quad_error_flag = false;
};

/// 12-significant-digit scientific formatting used for every CSV number
/// and for the canonical cache-key JSON.
std::string format_g12(double v);

/// Parse the JSON config document (schema in README). Throws DomainError
/// on any shape or unit problem.
SweepSpec parse_config(const nlohmann::json& cfg);

/// Canonical input record for one sweep point: sorted keys, all numbers
/// rendered through format_g12, tool version included.
nlohmann::json canonical_inputs(const SweepSpec& spec, double axis_value);

/// 128-bit content hash of a canonical JSON document, as 32 hex chars.
std::string params_hash(const nlohmann::json& canonical);

/// Evaluate every axis value (work pool sized by spec.parallelism, cache
/// consulted per point). Rows come back in axis order; per-point
/// quadrature failures set quad_error_flag instead of aborting.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

/// Byte-deterministic CSV: header + one row per point, LF endings.
std::string sweep_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows);

enum class ReproduceTarget { fig5, fig6, fig7, fig8, fig9, table1, table2 };

ReproduceTarget parse_target(const std::string& name);

struct ReproduceReport {
    std::string csv;
    std::string summary;                  // human-readable pass/fail lines
    std::vector<std::string> mismatches;  // empty on success
    bool ok() const { return mismatches.empty(); }
};

/// Run the canonical parameter set for one figure/table and compare the
/// results against the embedded reference values.
ReproduceReport reproduce(ReproduceTarget target, const std::string& cache_dir = "",
                          int parallelism = 0, const QuadratureSpec& quad = {});

/// Cross-check the closed forms against the Monte-Carlo estimates on the
/// small instance (k0 L = 500, k0 R0 = 20, finite-beam variant included).
/// Returns a JSON report; "all_ok" is false if any |z| > 4.
nlohmann::json run_oracle(std::uint64_t seed, std::int64_t n_samples = 1'000'000,
                          int parallelism = 0);

} // namespace raman3d
