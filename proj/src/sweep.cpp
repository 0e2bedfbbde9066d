#include "raman3d/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "raman3d/mc_oracle.hpp"
#include "raman3d/signal_mode.hpp"

namespace raman3d {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    return buf;
}

void SweepSpec::validate() const {
    if (values.empty()) throw DomainError("SweepSpec: values must be nonempty");
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (!(values[i] > values[i - 1]) && !(values[i] < values[i - 1]))
            throw DomainError("SweepSpec: values must be strictly monotone");
        if ((values[i] > values[i - 1]) != (values[1] > values[0]))
            throw DomainError("SweepSpec: values must be strictly monotone");
    }
    if (axis == SweepAxis::theta_D && strategy.variant == MatchingKind::Exact)
        throw DomainError("SweepSpec: theta_D axis needs a filtered strategy");
    if (!(d_o > 0.0) || !(Fr > 0.0) || !(length_L > 0.0) || !(lambda0 > 0.0))
        throw DomainError("SweepSpec: cell targets must be positive");
    if (!(r0_over_R0 > 0.0)) throw DomainError("SweepSpec: r0_over_R0 must be positive");
    if (parallelism < 0) throw DomainError("SweepSpec: parallelism must be >= 0");
    if (with_protocol && (!(delta_f > 0.0) || delta_f >= 0.5))
        throw DomainError("SweepSpec: delta_f must be in (0, 0.5)");
}

namespace {

double to_cm(double v, const std::string& unit) {
    if (unit == "cm") return v;
    if (unit == "um") return v * 1e-4;
    if (unit == "m") return v * 1e2;
    throw DomainError("config: unknown length unit '" + unit + "'");
}

double require_number(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        throw DomainError(std::string("config: missing numeric key '") + key + "'");
    return j[key].get<double>();
}

// null or the string "inf" mean an infinitely broad beam
double optional_radius(const json& j, const char* key) {
    if (!j.contains(key) || j[key].is_null()) return std::numeric_limits<double>::infinity();
    if (j[key].is_string() && j[key] == "inf") return std::numeric_limits<double>::infinity();
    if (!j[key].is_number()) throw DomainError(std::string("config: bad value for '") + key + "'");
    return j[key].get<double>();
}

const char* strategy_name(MatchingKind k) {
    switch (k) {
        case MatchingKind::Exact: return "exact";
        case MatchingKind::FilteredExact: return "filtered_exact";
        default: return "simple_filter";
    }
}

} // namespace

SweepSpec parse_config(const json& cfg) {
    if (!cfg.is_object()) throw DomainError("config: document must be a JSON object");
    std::string len_unit = "cm", wl_unit = "um";
    if (cfg.contains("units")) {
        const json& u = cfg["units"];
        if (u.contains("length")) len_unit = u["length"].get<std::string>();
        if (u.contains("wavelength")) wl_unit = u["wavelength"].get<std::string>();
    }

    SweepSpec spec;
    if (cfg.contains("cell")) {
        const json& c = cfg["cell"];
        spec.d_o = require_number(c, "d_o");
        spec.Fr = require_number(c, "Fr");
        spec.length_L = to_cm(require_number(c, "L"), len_unit);
        spec.lambda0 = to_cm(require_number(c, "lambda0"), wl_unit);
        spec.r0_over_R0 = optional_radius(c, "r0_over_R0");
    } else if (cfg.contains("geometry") && cfg.contains("pump")) {
        const json& g = cfg["geometry"];
        const json& p = cfg["pump"];
        EnsembleGeometry geom{to_cm(require_number(g, "L"), len_unit),
                              to_cm(require_number(g, "R0"), len_unit),
                              require_number(g, "n_a")};  // cm^-3 always
        PumpBeam pump{to_cm(require_number(p, "lambda0"), wl_unit),
                      optional_radius(p, "r0")};
        if (!pump.broad_beam()) pump.radius_r0 = to_cm(pump.radius_r0, len_unit);
        const DerivedScales s = derive_scales(geom, pump);
        spec.d_o = s.d_o;
        spec.Fr = s.Fr;
        spec.length_L = geom.length_L;
        spec.lambda0 = pump.wavelength_lambda0;
        spec.r0_over_R0 = pump.broad_beam() ? std::numeric_limits<double>::infinity()
                                            : pump.radius_r0 / geom.radius_R0;
    } else {
        throw DomainError("config: need either a 'cell' block or 'geometry'+'pump' blocks");
    }

    if (cfg.contains("axis")) {
        const std::string a = cfg["axis"].get<std::string>();
        if (a == "d_o") spec.axis = SweepAxis::optical_depth;
        else if (a == "theta_D") spec.axis = SweepAxis::theta_D;
        else if (a == "Fr") spec.axis = SweepAxis::fresnel;
        else throw DomainError("config: axis must be d_o, theta_D or Fr");
    }

    if (cfg.contains("values")) {
        const json& v = cfg["values"];
        if (v.is_array()) {
            spec.values = v.get<std::vector<double>>();
        } else if (v.is_object()) {
            const double from = require_number(v, "from");
            const double to = require_number(v, "to");
            const int count = static_cast<int>(require_number(v, "count"));
            if (count < 2 || !(from > 0.0 && to > from))
                throw DomainError("config: values range needs 0 < from < to, count >= 2");
            const bool log = v.value("log", false);
            for (int i = 0; i < count; ++i) {
                const double s = static_cast<double>(i) / (count - 1);
                spec.values.push_back(log ? from * std::pow(to / from, s)
                                          : from + s * (to - from));
            }
        } else {
            throw DomainError("config: values must be an array or a range object");
        }
    }

    std::string strat = cfg.value("strategy", "exact");
    const double theta_d = cfg.value("theta_D", M_PI);
    if (strat == "exact") spec.strategy = MatchingStrategy::exact();
    else if (strat == "filtered_exact") spec.strategy = MatchingStrategy::filtered_exact(theta_d);
    else if (strat == "simple_filter") spec.strategy = MatchingStrategy::simple_filter(theta_d);
    else throw DomainError("config: unknown strategy '" + strat + "'");

    if (cfg.contains("quadrature")) {
        const json& q = cfg["quadrature"];
        spec.quadrature.rel_tol = q.value("rel_tol", spec.quadrature.rel_tol);
        spec.quadrature.abs_tol = q.value("abs_tol", spec.quadrature.abs_tol);
    }
    spec.parallelism = cfg.value("parallelism", 0);
    if (cfg.contains("protocol")) {
        spec.with_protocol = true;
        spec.delta_f = cfg["protocol"].value("delta_f", 0.01);
    }
    spec.cache_dir = cfg.value("cache_dir", "");
    spec.validate();
    return spec;
}

namespace {

struct ResolvedPoint {
    EnsembleGeometry geom;
    PumpBeam pump;
    MatchingStrategy strategy;
};

ResolvedPoint resolve_point(const SweepSpec& spec, double axis_value) {
    double d_o = spec.d_o, Fr = spec.Fr;
    MatchingStrategy strategy = spec.strategy;
    switch (spec.axis) {
        case SweepAxis::optical_depth: d_o = axis_value; break;
        case SweepAxis::fresnel: Fr = axis_value; break;
        case SweepAxis::theta_D:
            strategy = strategy.variant == MatchingKind::SimpleFilter
                           ? MatchingStrategy::simple_filter(axis_value)
                           : MatchingStrategy::filtered_exact(axis_value);
            break;
    }
    auto [geom, pump] =
        geometry_from_targets(d_o, Fr, spec.length_L, spec.lambda0, spec.r0_over_R0);
    return {geom, pump, strategy};
}

} // namespace

json canonical_inputs(const SweepSpec& spec, double axis_value) {
    const ResolvedPoint pt = resolve_point(spec, axis_value);
    const DerivedScales s = derive_scales(pt.geom, pt.pump);
    json j;
    j["tool_version"] = kToolVersion;
    j["d_o"] = format_g12(s.d_o);
    j["Fr"] = format_g12(s.Fr);
    j["L"] = format_g12(spec.length_L);
    j["lambda0"] = format_g12(spec.lambda0);
    j["r0_over_R0"] =
        std::isinf(spec.r0_over_R0) ? std::string("inf") : format_g12(spec.r0_over_R0);
    j["strategy"] = strategy_name(pt.strategy.variant);
    j["theta_D"] = format_g12(pt.strategy.theta_D);
    j["rel_tol"] = format_g12(spec.quadrature.rel_tol);
    j["abs_tol"] = format_g12(spec.quadrature.abs_tol);
    j["with_protocol"] = spec.with_protocol;
    j["delta_f"] = format_g12(spec.with_protocol ? spec.delta_f : 0.0);
    return j;
}

std::string params_hash(const json& canonical) {
    const std::string bytes = canonical.dump();  // nlohmann objects are key-sorted
    std::uint64_t h1 = 0xcbf29ce484222325ULL;    // FNV-1a with two distinct bases
    std::uint64_t h2 = 0x6c62272e07bb0142ULL;
    for (unsigned char c : bytes) {
        h1 = (h1 ^ c) * 0x100000001b3ULL;
        h2 = (h2 ^ c) * 0x100000001b3ULL;
        h2 ^= h2 >> 29;
    }
    char buf[33];
    std::snprintf(buf, sizeof buf, "%016llx%016llx",
                  static_cast<unsigned long long>(h1), static_cast<unsigned long long>(h2));
    return buf;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double json_d(const json& j, const char* key) {
    const json& v = j.at(key);
    return v.is_null() ? kNaN : v.get<double>();
}

json row_to_json(const SweepRow& row, bool with_protocol) {
    json o;
    o["p_spon"] = row.budget.p_spon;
    o["p_mode"] = row.budget.p_mode;
    o["chi"] = row.budget.chi;
    o["pc_over_p2"] = row.budget.pc_over_p2;
    o["cone_capture"] = row.budget.cone_capture;
    o["Na_pc_over_p2"] = row.budget.Na_pc_over_p2;
    o["quad_error_flag"] = row.quad_error_flag;
    if (with_protocol) {
        o["required_pc"] = row.protocol.required_pc;
        o["p_click_per_round"] = row.protocol.p_click_per_round;
        o["expected_rounds"] = row.protocol.expected_rounds;
        o["c0"] = row.protocol.c0;
        o["state_fidelity"] = row.protocol.state_fidelity;
    }
    return o;
}

void row_from_json(const json& o, bool with_protocol, SweepRow& row) {
    row.budget.p_spon = json_d(o, "p_spon");
    row.budget.p_mode = json_d(o, "p_mode");
    row.budget.chi = json_d(o, "chi");
    row.budget.pc_over_p2 = json_d(o, "pc_over_p2");
    row.budget.cone_capture = json_d(o, "cone_capture");
    row.budget.Na_pc_over_p2 = json_d(o, "Na_pc_over_p2");
    row.quad_error_flag = o.at("quad_error_flag").get<bool>();
    if (with_protocol) {
        row.protocol.required_pc = json_d(o, "required_pc");
        row.protocol.p_click_per_round = json_d(o, "p_click_per_round");
        row.protocol.expected_rounds = json_d(o, "expected_rounds");
        row.protocol.c0 = json_d(o, "c0");
        row.protocol.state_fidelity = json_d(o, "state_fidelity");
    }
}

bool cache_load(const fs::path& dir, const std::string& hash, const json& inputs,
                bool with_protocol, SweepRow& row) {
    std::ifstream in(dir / (hash + ".json"));
    if (!in) return false;
    json record;
    try {
        in >> record;
        if (record.at("params_hash") != hash || record.at("inputs") != inputs) return false;
        row_from_json(record.at("outputs"), with_protocol, row);
    } catch (const json::exception&) {
        return false;
    }
    return true;
}

void cache_store(const fs::path& dir, const std::string& hash, const json& inputs,
                 bool with_protocol, const SweepRow& row) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    json record;
    record["params_hash"] = hash;
    record["inputs"] = inputs;
    record["outputs"] = row_to_json(row, with_protocol);
    record["tool_version"] = kToolVersion;
    record["timestamp"] = static_cast<std::int64_t>(std::time(nullptr));
    const fs::path tmp = dir / (hash + ".json.tmp");
    {
        std::ofstream out(tmp);
        out << record.dump(1) << '\n';
    }
    fs::rename(tmp, dir / (hash + ".json"), ec);  // atomic publish; failure just loses the entry
}

SweepRow eval_point(const SweepSpec& spec, double axis_value) {
    SweepRow row;
    row.axis_value = axis_value;
    const ResolvedPoint pt = resolve_point(spec, axis_value);
    try {
        row.budget = noise_budget(pt.strategy, pt.geom, pt.pump, spec.quadrature);
        if (spec.with_protocol) {
            ProtocolParams pp;
            pp.fidelity_imperfection_target = spec.delta_f;
            row.protocol = success_metrics(pp, row.budget);
        }
    } catch (const ConvergenceError&) {
        row.quad_error_flag = true;
        row.budget = {kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, pt.strategy};
    } catch (const NumericalInstability&) {
        row.quad_error_flag = true;
        row.budget = {kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, pt.strategy};
    }
    return row;
}

} // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    spec.validate();
    const std::int64_t n = static_cast<std::int64_t>(spec.values.size());
    std::vector<SweepRow> rows(n);

    std::vector<std::string> hashes(n);
    std::vector<json> inputs(n);
    std::vector<char> done(n, 0);
    const bool use_cache = !spec.cache_dir.empty();
    for (std::int64_t i = 0; i < n; ++i) {
        if (use_cache) {
            inputs[i] = canonical_inputs(spec, spec.values[i]);
            hashes[i] = params_hash(inputs[i]);
            rows[i].axis_value = spec.values[i];
            if (cache_load(spec.cache_dir, hashes[i], inputs[i], spec.with_protocol, rows[i]))
                done[i] = 1;
        }
    }

#ifdef _OPENMP
    const int threads = spec.parallelism > 0 ? spec.parallelism : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
    for (std::int64_t i = 0; i < n; ++i) {
        if (done[i]) continue;
        rows[i] = eval_point(spec, spec.values[i]);
        if (use_cache)
            cache_store(spec.cache_dir, hashes[i], inputs[i], spec.with_protocol, rows[i]);
    }
    return rows;
}

std::string sweep_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
    std::string out = "axis_value,p_spon,p_mode,chi,pc_over_p2,cone_capture,quad_error_flag";
    if (spec.with_protocol)
        out += ",required_pc,p_click_per_round,expected_rounds,c0,state_fidelity";
    out += '\n';
    for (const SweepRow& r : rows) {
        out += format_g12(r.axis_value);
        for (double v : {r.budget.p_spon, r.budget.p_mode, r.budget.chi, r.budget.pc_over_p2,
                         r.budget.cone_capture})
            out += ',' + format_g12(v);
        out += r.quad_error_flag ? ",1" : ",0";
        if (spec.with_protocol)
            for (double v : {r.protocol.required_pc, r.protocol.p_click_per_round,
                             r.protocol.expected_rounds, r.protocol.c0, r.protocol.state_fidelity})
                out += ',' + format_g12(v);
        out += '\n';
    }
    return out;
}

ReproduceTarget parse_target(const std::string& name) {
    if (name == "fig5") return ReproduceTarget::fig5;
    if (name == "fig6") return ReproduceTarget::fig6;
    if (name == "fig7") return ReproduceTarget::fig7;
    if (name == "fig8") return ReproduceTarget::fig8;
    if (name == "fig9") return ReproduceTarget::fig9;
    if (name == "table1") return ReproduceTarget::table1;
    if (name == "table2") return ReproduceTarget::table2;
    throw DomainError("unknown reproduce target '" + name + "'");
}

namespace {

// Reference angles and noise levels for the two tabulated operating-point
// sets (filtered exact matching and simple filtering, Fr = 1, d_o = 1900).
const std::vector<double> kTable1Angles = {0.0015, 0.0020, 0.0025, 0.0040, 0.0055};
const std::vector<double> kTable1Pmode = {0.0031, 0.0092, 0.0205, 0.0898, 0.175};
const std::vector<double> kTable1Pspon = {0.796, 0.666, 0.529, 0.195, 0.0502};
const std::vector<double> kTable2Angles = {0.0006, 0.0010, 0.0014, 0.0020, 0.0032};
const std::vector<double> kTable2Pmode = {0.0176, 0.0478, 0.0910, 0.175, 0.374};
const std::vector<double> kTable2Pspon = {0.964, 0.903, 0.820, 0.666, 0.351};

bool within_table_tol(double got, double want) {
    return std::abs(got - want) <= std::max(0.10 * want, 0.003);
}

void check_anchor(std::vector<std::string>& mismatches, const char* what, double angle,
                  double got, double want) {
    if (within_table_tol(got, want)) return;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "%s at theta_D=%.4g: computed %.4g vs reference %.4g (rel err %+.2f%%)",
                  what, angle, got, want, 100.0 * (got - want) / want);
    mismatches.push_back(buf);
}

SweepSpec table_spec(MatchingKind kind, const std::vector<double>& angles,
                     const std::string& cache_dir, int parallelism,
                     const QuadratureSpec& quad) {
    SweepSpec spec;
    spec.axis = SweepAxis::theta_D;
    spec.values = angles;
    spec.strategy = kind == MatchingKind::SimpleFilter ? MatchingStrategy::simple_filter(0.001)
                                                       : MatchingStrategy::filtered_exact(0.001);
    spec.quadrature = quad;
    spec.parallelism = parallelism;
    spec.cache_dir = cache_dir;
    return spec;
}

std::vector<double> merged_log_grid(const std::vector<double>& anchors, double lo, double hi,
                                    int count) {
    std::vector<double> v = anchors;
    for (int i = 0; i < count; ++i)
        v.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1)));
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

ReproduceReport reproduce_table(MatchingKind kind, const std::string& cache_dir,
                                int parallelism, const QuadratureSpec& quad) {
    const bool simple = kind == MatchingKind::SimpleFilter;
    const auto& angles = simple ? kTable2Angles : kTable1Angles;
    const auto& ref_pmode = simple ? kTable2Pmode : kTable1Pmode;
    const auto& ref_pspon = simple ? kTable2Pspon : kTable1Pspon;

    SweepSpec spec = table_spec(kind, angles, cache_dir, parallelism, quad);
    const std::vector<SweepRow> rows = run_sweep(spec);

    ReproduceReport rep;
    rep.csv = sweep_csv(spec, rows);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].quad_error_flag) {
            rep.mismatches.push_back("quadrature failure at theta_D=" +
                                     format_g12(rows[i].axis_value));
            continue;
        }
        check_anchor(rep.mismatches, "p_mode", angles[i], rows[i].budget.p_mode, ref_pmode[i]);
        check_anchor(rep.mismatches, "p_spon", angles[i], rows[i].budget.p_spon, ref_pspon[i]);
    }
    std::ostringstream sum;
    sum << (simple ? "table2" : "table1") << ": " << rows.size() << " operating points, "
        << rep.mismatches.size() << " outside tolerance\n";
    for (const std::string& m : rep.mismatches) sum << "  MISMATCH " << m << '\n';
    rep.summary = sum.str();
    return rep;
}

// d_o sweep at fixed Fr with exact matching; chi is d_o-independent here,
// so evaluate it once and splice it into every row.
std::vector<SweepRow> fig5_curve(double Fr, const std::vector<double>& d_os,
                                 const std::string& cache_dir, int parallelism,
                                 const QuadratureSpec& quad, SweepSpec& spec_out) {
    SweepSpec spec;
    spec.axis = SweepAxis::optical_depth;
    spec.Fr = Fr;
    spec.values = d_os;
    spec.strategy = MatchingStrategy::exact();
    spec.quadrature = quad;
    spec.parallelism = parallelism;
    spec.cache_dir = cache_dir;
    spec_out = spec;
    return run_sweep(spec);
}

ReproduceReport reproduce_fig5(const std::string& cache_dir, int parallelism,
                               const QuadratureSpec& quad) {
    const std::vector<double> d_os =
        merged_log_grid({1.9e3, 6.4e3}, 1e2, 1e4, 13);
    ReproduceReport rep;
    std::string csv = "Fr,d_o,p_spon,p_mode,chi\n";
    std::vector<SweepRow> curve01, curve1, curve10;
    SweepSpec spec;
    curve01 = fig5_curve(0.1, d_os, cache_dir, parallelism, quad, spec);
    curve1 = fig5_curve(1.0, d_os, cache_dir, parallelism, quad, spec);
    curve10 = fig5_curve(10.0, d_os, cache_dir, parallelism, quad, spec);
    for (const auto* curve : {&curve01, &curve1, &curve10})
        for (const SweepRow& r : *curve) {
            const double Fr = curve == &curve01 ? 0.1 : (curve == &curve1 ? 1.0 : 10.0);
            csv += format_g12(Fr) + ',' + format_g12(r.axis_value) + ',' +
                   format_g12(r.budget.p_spon) + ',' + format_g12(r.budget.p_mode) + ',' +
                   format_g12(r.budget.chi) + '\n';
        }
    rep.csv = csv;

    char buf[200];
    for (std::size_t i = 0; i < d_os.size(); ++i) {
        const double fit = p_spon_fit(d_os[i]);
        for (const auto* curve : {&curve1, &curve10}) {
            const double got = (*curve)[i].budget.p_spon;
            if (std::abs(got - fit) > 0.20 * fit) {
                std::snprintf(buf, sizeof buf,
                              "p_spon at d_o=%.3g, Fr=%g: %.4g vs fit %.4g (>20%% off)",
                              d_os[i], curve == &curve1 ? 1.0 : 10.0, got, fit);
                rep.mismatches.push_back(buf);
            }
        }
        const double r1 = curve1[i].budget.p_spon;
        if (std::abs(curve10[i].budget.p_spon - r1) > 0.05 * r1) {
            std::snprintf(buf, sizeof buf, "Fr=1 and Fr=10 curves differ >5%% at d_o=%.3g",
                          d_os[i]);
            rep.mismatches.push_back(buf);
        }
        const double factor = curve01[i].budget.p_spon / r1;
        if (factor < 1.5 || factor > 2.5) {
            std::snprintf(buf, sizeof buf,
                          "Fr=0.1/Fr=1 elevation %.3g outside [1.5, 2.5] at d_o=%.3g", factor,
                          d_os[i]);
            rep.mismatches.push_back(buf);
        }
    }
    std::ostringstream sum;
    sum << "fig5: 3 curves x " << d_os.size() << " points, " << rep.mismatches.size()
        << " check failures\n";
    for (const std::string& m : rep.mismatches) sum << "  MISMATCH " << m << '\n';
    rep.summary = sum.str();
    return rep;
}

ReproduceReport reproduce_fig_curve(MatchingKind kind, bool anchor_checked,
                                    const std::string& cache_dir, int parallelism,
                                    const QuadratureSpec& quad, const char* name) {
    const bool simple = kind == MatchingKind::SimpleFilter;
    const auto& anchors = simple ? kTable2Angles : kTable1Angles;
    SweepSpec spec = table_spec(
        kind, merged_log_grid(anchors, simple ? 3e-4 : 8e-4, 0.02, 50), cache_dir,
        parallelism, quad);
    const std::vector<SweepRow> rows = run_sweep(spec);

    ReproduceReport rep;
    rep.csv = sweep_csv(spec, rows);
    // slack covers quadrature wiggle on the plateau, where the chi
    // cancellation amplifies the nominal tolerance by orders of magnitude
    auto slack = [](double v) { return std::max(1e-4 * v, 1e-9); };
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].quad_error_flag || rows[i - 1].quad_error_flag) continue;
        if (rows[i].budget.p_mode < rows[i - 1].budget.p_mode - slack(rows[i - 1].budget.p_mode))
            rep.mismatches.push_back("p_mode not increasing at theta_D=" +
                                     format_g12(rows[i].axis_value));
        if (rows[i].budget.p_spon > rows[i - 1].budget.p_spon + slack(rows[i - 1].budget.p_spon))
            rep.mismatches.push_back("p_spon not decreasing at theta_D=" +
                                     format_g12(rows[i].axis_value));
    }
    if (anchor_checked) {
        const auto& ref_pmode = simple ? kTable2Pmode : kTable1Pmode;
        const auto& ref_pspon = simple ? kTable2Pspon : kTable1Pspon;
        for (std::size_t a = 0; a < anchors.size(); ++a)
            for (const SweepRow& r : rows)
                if (r.axis_value == anchors[a] && !r.quad_error_flag) {
                    check_anchor(rep.mismatches, "p_mode", anchors[a], r.budget.p_mode,
                                 ref_pmode[a]);
                    check_anchor(rep.mismatches, "p_spon", anchors[a], r.budget.p_spon,
                                 ref_pspon[a]);
                }
    }
    std::ostringstream sum;
    sum << name << ": " << rows.size() << " points, " << rep.mismatches.size()
        << " check failures\n";
    for (const std::string& m : rep.mismatches) sum << "  MISMATCH " << m << '\n';
    rep.summary = sum.str();
    return rep;
}

} // namespace

ReproduceReport reproduce(ReproduceTarget target, const std::string& cache_dir,
                          int parallelism, const QuadratureSpec& quad) {
    switch (target) {
        case ReproduceTarget::table1:
            return reproduce_table(MatchingKind::FilteredExact, cache_dir, parallelism, quad);
        case ReproduceTarget::table2:
            return reproduce_table(MatchingKind::SimpleFilter, cache_dir, parallelism, quad);
        case ReproduceTarget::fig5:
            return reproduce_fig5(cache_dir, parallelism, quad);
        case ReproduceTarget::fig6:
            return reproduce_fig_curve(MatchingKind::FilteredExact, true, cache_dir,
                                       parallelism, quad, "fig6");
        case ReproduceTarget::fig7:
            return reproduce_fig_curve(MatchingKind::FilteredExact, false, cache_dir,
                                       parallelism, quad, "fig7");
        case ReproduceTarget::fig8:
            return reproduce_fig_curve(MatchingKind::SimpleFilter, true, cache_dir,
                                       parallelism, quad, "fig8");
        default:
            return reproduce_fig_curve(MatchingKind::SimpleFilter, false, cache_dir,
                                       parallelism, quad, "fig9");
    }
}

namespace {

json oracle_entry(const std::string& name, const McEstimate& est, double reference) {
    const double z = est.std_error > 0.0 ? (est.mean.real() - reference) / est.std_error : 0.0;
    json e;
    e["name"] = name;
    e["estimate_re"] = est.mean.real();
    e["estimate_im"] = est.mean.imag();
    e["std_error"] = est.std_error;
    e["reference"] = reference;
    e["z"] = z;
    return e;
}

} // namespace

json run_oracle(std::uint64_t seed, std::int64_t n_samples, int parallelism) {
    const Exec exec = parallelism == 1 ? Exec::serial : Exec::parallel;
#ifdef _OPENMP
    if (parallelism > 1) omp_set_num_threads(parallelism);
#endif
    // small instance: k0 L = 500, k0 R0 = 20, with a finite-beam variant
    // at k0 r0 = 40 exercising the transverse averages
    const double lambda0 = 0.8e-4;
    const double k0 = 2.0 * M_PI / lambda0;
    const EnsembleGeometry geom{500.0 / k0, 20.0 / k0, 1e12};
    const PumpBeam broad{lambda0, PumpBeam::infinite_radius()};
    const PumpBeam finite{lambda0, 40.0 / k0};

    SampleConfig cfg;
    cfg.n_samples = n_samples;
    cfg.seed = seed;
    while (cfg.batch_size > n_samples || n_samples % cfg.batch_size != 0) cfg.batch_size /= 2;

    json checks = json::array();
    const ModeParams pb = ModeParams::from(geom, broad);
    const ModeParams pf = ModeParams::from(geom, finite);

    for (double theta : {0.02, 0.05, 0.10}) {
        checks.push_back(oracle_entry("f_broad_theta=" + format_g12(theta),
                                      estimate_F(theta, 0.3, geom, broad, cfg, exec),
                                      mode_amplitude(theta, pb)));
        checks.push_back(oracle_entry("f_finite_theta=" + format_g12(theta),
                                      estimate_F(theta, 0.3, geom, finite, cfg, exec),
                                      mode_amplitude(theta, pf)));
    }
    checks.push_back(oracle_entry("G_broad", estimate_G(0.03, 0.05, 0.7, geom, broad, cfg, exec),
                                  closed_form_G(0.03, 0.05, 0.7, pb)));
    checks.push_back(oracle_entry("G_finite", estimate_G(0.03, 0.05, 0.7, geom, finite, cfg, exec),
                                  closed_form_G(0.03, 0.05, 0.7, pf)));

    const AngularGrid grid = make_angular_grid(48);
    checks.push_back(oracle_entry("ratio_pc_p2_broad",
                                  estimate_ratio_pc_p2(geom, broad, cfg, grid, exec),
                                  grid_ratio_closed_form(geom, broad, grid)));
    checks.push_back(oracle_entry("ratio_pc_p2_finite",
                                  estimate_ratio_pc_p2(geom, finite, cfg, grid, exec),
                                  grid_ratio_closed_form(geom, finite, grid)));

    double max_z = 0.0;
    for (const json& e : checks) max_z = std::max(max_z, std::abs(e["z"].get<double>()));
    json report;
    report["seed"] = seed;
    report["n_samples"] = n_samples;
    report["tool_version"] = kToolVersion;
    report["checks"] = checks;
    report["max_abs_z"] = max_z;
    report["all_ok"] = max_z <= 4.0;
    return report;
}

} // namespace raman3d
