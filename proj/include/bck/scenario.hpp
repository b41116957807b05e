#pragma once

// Scenario runner: JSON configs in, trajectory files and a summary JSON out.
// A scenario binds a potential, damping, initial conditions and a list of
// requested checks; a sweep expands parameter grids over a base scenario and
// runs the rows concurrently.  Summaries are bit-identical across runs with
// the same seed and config, up to the timestamp and runtime fields.

#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "bck/action.hpp"
#include "bck/canonical.hpp"
#include "bck/catalog.hpp"
#include "bck/central3d.hpp"
#include "bck/errors.hpp"
#include "bck/integrals.hpp"
#include "bck/integrate.hpp"
#include "bck/model.hpp"
#include "bck/rng.hpp"
#include "bck/verify.hpp"

namespace bck {

using json = nlohmann::ordered_json;

inline constexpr const char* ARTIFACT_VERSION = "1.0.0";

// ── schema: potential and scenario ──────────────────────────────────────────

inline json potential_to_json(const Potential& pot) {
    json j;
    j["kind"] = to_string(pot.kind);
    switch (pot.kind) {
        case PotentialKind::linear: j["F"] = pot.F; break;
        case PotentialKind::quadratic: j["A"] = pot.A; break;
        case PotentialKind::log: j["A"] = pot.A; break;
        case PotentialKind::power:
            j["A"] = pot.A;
            j["alpha"] = pot.alpha;
            break;
        case PotentialKind::exponential: j["A"] = pot.A; break;
        case PotentialKind::free_particle: break;
    }
    return j;
}

/// Build a Potential from {"kind": ..., ...}.  Malformed structure raises
/// SchemaError; domain violations (e.g. an excluded exponent) keep their
/// original DomainError so the caller can report the rejection cause.
inline Potential parse_potential(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw SchemaError("potential: expected {\"kind\": ...}");
    const std::string kind = j["kind"].get<std::string>();
    auto num = [&](const char* key) -> double {
        if (!j.contains(key) || !j[key].is_number())
            throw SchemaError("potential: " + kind +
                              " requires numeric \"" + key + "\"");
        return j[key].get<double>();
    };
    if (kind == "free") return Potential::free_particle();
    if (kind == "linear") return Potential::linear(num("F"));
    if (kind == "quadratic") return Potential::quadratic(num("A"));
    if (kind == "log") return Potential::log(num("A"));
    if (kind == "power") return Potential::power(num("A"), num("alpha"));
    if (kind == "exp") return Potential::exponential(num("A"));
    throw SchemaError("potential: unknown kind \"" + kind + "\"");
}

struct ScenarioChecks {
    std::vector<std::string> integrals;  ///< catalog ids; "all" expands
    std::vector<std::string> charts;
    std::vector<std::string> symmetries;
    bool all_integrals = false;
    bool all_charts = false;
    bool all_symmetries = false;
    bool weak_constant = false;
    bool central3d = false;
};

struct Tolerances {
    double drift = 1e-7;      ///< first-integral / H~ drift, normalized
    double chart_match = 1e-9;
    double residual = 1e-10;  ///< Rund-Trautman, normalized by 1 + |L|
    double weak = 1e-7;
    double angular = 1e-8;    ///< 3D drifts
};

struct Scenario {
    std::string name;
    Potential pot;
    double gamma = 0.5;
    bool three_d = false;
    std::vector<State1D> initials;
    std::vector<State3D> initials3;
    double t_end = 10.0;
    IntegratorConfig cfg;
    std::uint64_t seed = 42;
    ScenarioChecks checks;
    Tolerances tol;
    std::string trajectory_prefix;  ///< basename for trajectory files
};

namespace scenario_detail {

inline double require_num(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        throw SchemaError(std::string("scenario: numeric \"") + key +
                          "\" is required");
    return j[key].get<double>();
}

inline double opt_num(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number())
        throw SchemaError(std::string("scenario: \"") + key +
                          "\" must be a number");
    return j[key].get<double>();
}

inline Vec3 parse_vec3(const json& j, const char* key) {
    if (!j.is_array() || j.size() != 3 || !j[0].is_number() ||
        !j[1].is_number() || !j[2].is_number())
        throw SchemaError(std::string("scenario: \"") + key +
                          "\" must be an array of 3 numbers");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

/// Accepts "all", a single id, or an array of ids.
inline void parse_id_list(const json& j, const char* key,
                          std::vector<std::string>& ids, bool& all) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "all") {
            all = true;
            return;
        }
        ids.push_back(s);
        return;
    }
    if (j.is_array()) {
        for (const auto& e : j) {
            if (!e.is_string())
                throw SchemaError(std::string("scenario: \"") + key +
                                  "\" entries must be strings");
            ids.push_back(e.get<std::string>());
        }
        return;
    }
    throw SchemaError(std::string("scenario: \"") + key +
                      "\" must be \"all\", an id, or an array of ids");
}

inline std::string sanitize(const std::string& s) {
    std::string out;
    for (char c : s)
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' ||
                c == '_')
                   ? c
                   : '_';
    return out.empty() ? std::string("scenario") : out;
}

inline std::string iso8601_utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace scenario_detail

inline Scenario parse_scenario(const json& j) {
    using namespace scenario_detail;
    if (!j.is_object()) throw SchemaError("scenario: expected an object");
    Scenario sc;

    sc.name = j.contains("name") && j["name"].is_string()
                  ? j["name"].get<std::string>()
                  : "unnamed";
    if (!j.contains("potential"))
        throw SchemaError("scenario: \"potential\" is required");
    sc.pot = parse_potential(j["potential"]);
    sc.gamma = require_num(j, "gamma");
    Params{sc.gamma};  // validate now, as a config error

    // initial condition(s): 1D {t0, q, qdot} or 3D {t0, r, v}
    std::vector<json> ics;
    if (j.contains("initial"))
        ics.push_back(j["initial"]);
    else if (j.contains("initials")) {
        if (!j["initials"].is_array() || j["initials"].empty())
            throw SchemaError("scenario: \"initials\" must be a non-empty "
                              "array");
        for (const auto& e : j["initials"]) ics.push_back(e);
    } else {
        throw SchemaError("scenario: \"initial\" or \"initials\" is "
                          "required");
    }
    for (const auto& ic : ics) {
        if (!ic.is_object())
            throw SchemaError("scenario: initial conditions must be objects");
        const double t0 = opt_num(ic, "t0", 0.0);
        if (ic.contains("r") || ic.contains("v")) {
            if (!ic.contains("r") || !ic.contains("v"))
                throw SchemaError("scenario: 3D initials need both \"r\" "
                                  "and \"v\"");
            sc.initials3.push_back(
                {t0, parse_vec3(ic["r"], "r"), parse_vec3(ic["v"], "v")});
        } else {
            sc.initials.push_back(
                {t0, require_num(ic, "q"), require_num(ic, "qdot")});
        }
    }
    if (!sc.initials.empty() && !sc.initials3.empty())
        throw SchemaError("scenario: cannot mix 1D and 3D initials");
    sc.three_d = !sc.initials3.empty();

    sc.t_end = require_num(j, "t_end");
    const double t0_max = sc.three_d ? sc.initials3.front().t
                                     : sc.initials.front().t;
    if (!(sc.t_end > t0_max))
        throw SchemaError("scenario: t_end must exceed the initial time");
    if (2.0 * sc.gamma * sc.t_end > EXP_CAP)
        throw SchemaError("scenario: 2*gamma*t_end exceeds the exponent cap " +
                          std::to_string(EXP_CAP));

    if (j.contains("integrator")) {
        const json& ji = j["integrator"];
        if (!ji.is_object())
            throw SchemaError("scenario: \"integrator\" must be an object");
        sc.cfg.rtol = opt_num(ji, "rtol", sc.cfg.rtol);
        sc.cfg.atol = opt_num(ji, "atol", sc.cfg.atol);
        sc.cfg.h_init = opt_num(ji, "h_init", sc.cfg.h_init);
        sc.cfg.h_min = opt_num(ji, "h_min", sc.cfg.h_min);
        sc.cfg.h_max = opt_num(ji, "h_max", sc.cfg.h_max);
        sc.cfg.sample_dt = opt_num(ji, "sample_dt", sc.cfg.sample_dt);
        try {
            validate(sc.cfg);
        } catch (const DomainError& e) {
            throw SchemaError(std::string("scenario: ") + e.what());
        }
    }

    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
            throw SchemaError("scenario: \"seed\" must be an integer");
        sc.seed = j["seed"].get<std::uint64_t>();
    }

    if (j.contains("checks")) {
        const json& jc = j["checks"];
        if (!jc.is_object())
            throw SchemaError("scenario: \"checks\" must be an object");
        if (jc.contains("integrals"))
            parse_id_list(jc["integrals"], "integrals", sc.checks.integrals,
                          sc.checks.all_integrals);
        if (jc.contains("charts"))
            parse_id_list(jc["charts"], "charts", sc.checks.charts,
                          sc.checks.all_charts);
        if (jc.contains("symmetries"))
            parse_id_list(jc["symmetries"], "symmetries",
                          sc.checks.symmetries, sc.checks.all_symmetries);
        if (jc.contains("weak_constant")) {
            if (!jc["weak_constant"].is_boolean())
                throw SchemaError("scenario: \"weak_constant\" must be a "
                                  "boolean");
            sc.checks.weak_constant = jc["weak_constant"].get<bool>();
        }
        if (jc.contains("central3d")) {
            if (!jc["central3d"].is_boolean())
                throw SchemaError("scenario: \"central3d\" must be a "
                                  "boolean");
            sc.checks.central3d = jc["central3d"].get<bool>();
        }
    }
    if (sc.three_d &&
        (!sc.checks.integrals.empty() || sc.checks.all_integrals ||
         !sc.checks.charts.empty() || sc.checks.all_charts ||
         !sc.checks.symmetries.empty() || sc.checks.all_symmetries ||
         sc.checks.weak_constant))
        throw SchemaError("scenario: integral/chart/symmetry/weak checks "
                          "apply to 1D scenarios only");
    if (!sc.three_d && sc.checks.central3d)
        throw SchemaError("scenario: \"central3d\" requires 3D initials");

    if (j.contains("tolerances")) {
        const json& jt = j["tolerances"];
        if (!jt.is_object())
            throw SchemaError("scenario: \"tolerances\" must be an object");
        sc.tol.drift = opt_num(jt, "drift", sc.tol.drift);
        sc.tol.chart_match = opt_num(jt, "chart_match", sc.tol.chart_match);
        sc.tol.residual = opt_num(jt, "residual", sc.tol.residual);
        sc.tol.weak = opt_num(jt, "weak", sc.tol.weak);
        sc.tol.angular = opt_num(jt, "angular", sc.tol.angular);
    }

    sc.trajectory_prefix = scenario_detail::sanitize(sc.name);
    if (j.contains("output")) {
        const json& jo = j["output"];
        if (!jo.is_object())
            throw SchemaError("scenario: \"output\" must be an object");
        if (jo.contains("trajectory_prefix")) {
            if (!jo["trajectory_prefix"].is_string())
                throw SchemaError("scenario: \"trajectory_prefix\" must be "
                                  "a string");
            sc.trajectory_prefix =
                scenario_detail::sanitize(
                    jo["trajectory_prefix"].get<std::string>());
        }
    }
    return sc;
}

// ── running one scenario ────────────────────────────────────────────────────

struct RunOptions {
    std::string out_dir;           ///< empty = no files written
    std::string format = "csv";    ///< "csv" or "json" trajectories
    bool write_trajectories = true;
    bool has_seed_override = false;
    std::uint64_t seed_override = 0;
};

struct RunResult {
    json summary;
    int exit_code = 0;  ///< 0 pass, 1 failed check, 2 config, 3 runtime
};

namespace scenario_detail {

inline json check_row(const std::string& name, double metric, double tol,
                      bool pass) {
    json row;
    row["name"] = name;
    row["metric"] = metric;
    row["tolerance"] = tol;
    row["pass"] = pass;
    return row;
}

inline void write_trajectory_json(const Trajectory& traj, std::ostream& os) {
    json j;
    j["columns"] = {"t", "q", "qdot", "action"};
    json rows = json::array();
    for (const auto& s : traj.samples)
        rows.push_back({s.state.t, s.state.q, s.state.qdot, s.action});
    j["rows"] = rows;
    os << j.dump(2) << '\n';
}

inline void write_trajectory3d_json(const Trajectory3D& traj,
                                    std::ostream& os) {
    json j;
    j["columns"] = {"t", "x", "y", "z", "vx", "vy", "vz"};
    json rows = json::array();
    for (const auto& s : traj.samples)
        rows.push_back({s.t, s.r.x, s.r.y, s.r.z, s.v.x, s.v.y, s.v.z});
    j["rows"] = rows;
    os << j.dump(2) << '\n';
}

/// Off-shell sampling box for residual checks, matched to the domain.
inline Box residual_box(const Potential& pot, double t_hi) {
    Box box;
    box.t_lo = 0.0;
    box.t_hi = t_hi;
    if (pot.positive_domain()) {
        box.q_lo = 0.2;
        box.q_hi = 4.0;
    } else {
        box.q_lo = -4.0;
        box.q_hi = 4.0;
    }
    return box;
}

}  // namespace scenario_detail

/// Run a parsed 1D/3D scenario: integrate all initial conditions, write the
/// requested trajectory files, evaluate the requested checks and assemble
/// the summary.  Throwing here means a runtime failure (exit 3 territory);
/// configuration problems must be caught at parse/lookup time.
inline RunResult run_scenario(const Scenario& sc, const RunOptions& opt) {
    using namespace scenario_detail;
    const auto t_start = std::chrono::steady_clock::now();
    const Params par{sc.gamma};

    const std::uint64_t seed =
        opt.has_seed_override ? opt.seed_override : sc.seed;

    RunResult out;
    json& summary = out.summary;
    summary["version"] = ARTIFACT_VERSION;
    summary["scenario"] = sc.name;
    summary["timestamp"] = iso8601_utc_now();
    summary["potential"] = potential_to_json(sc.pot);
    summary["gamma"] = sc.gamma;
    summary["seed"] = seed;

    json checks = json::array();
    bool all_pass = true;
    auto push = [&](json row) {
        all_pass = all_pass && row["pass"].get<bool>();
        checks.push_back(std::move(row));
    };

    // ---- setup phase: resolve every requested check id (config errors) ----
    const CatalogBundle cat = make_catalog(sc.pot, par, false);
    std::vector<const FirstIntegral*> req_integrals;
    if (sc.checks.all_integrals) {
        for (const auto& I : cat.integrals) req_integrals.push_back(&I);
    } else {
        for (const auto& id : sc.checks.integrals)
            req_integrals.push_back(&cat.integral(id));
    }
    std::vector<const SymmetryEntry*> req_syms;
    if (sc.checks.all_symmetries) {
        for (const auto& e : cat.symmetries) req_syms.push_back(&e);
    } else {
        for (const auto& id : sc.checks.symmetries)
            req_syms.push_back(&cat.symmetry(id));
    }
    std::vector<CanonicalChart> charts;
    std::vector<std::string> req_charts = sc.checks.charts;
    if (!req_charts.empty() || sc.checks.all_charts) {
        charts = make_charts(sc.pot, par);
        if (sc.checks.all_charts) {
            req_charts.clear();
            for (const auto& c : charts) req_charts.push_back(c.id);
        } else {
            for (const auto& id : req_charts) find_chart(charts, id);
        }
    }

    // ---- run phase ----
    namespace fs = std::filesystem;
    const bool writing = opt.write_trajectories && !opt.out_dir.empty();
    if (writing) fs::create_directories(opt.out_dir);
    auto traj_path = [&](std::size_t i, const char* ext) {
        return fs::path(opt.out_dir) /
               (sc.trajectory_prefix + "_traj" + std::to_string(i) + ext);
    };

    if (!sc.three_d) {
        std::vector<Trajectory> trajs;
        for (std::size_t i = 0; i < sc.initials.size(); ++i) {
            trajs.push_back(
                integrate(sc.pot, par, sc.initials[i], sc.t_end, sc.cfg));
            if (writing) {
                if (opt.format == "json") {
                    std::ofstream os(traj_path(i, ".json"));
                    write_trajectory_json(trajs.back(), os);
                } else {
                    std::ofstream os(traj_path(i, ".csv"));
                    write_csv(trajs.back(), os);
                }
            }
        }
        summary["trajectories"] =
            static_cast<std::uint64_t>(trajs.size());

        for (const FirstIntegral* I : req_integrals) {
            DriftReport worst;
            for (const auto& traj : trajs) {
                const DriftReport rep = drift(*I, traj);
                if (rep.normalized >= worst.normalized) worst = rep;
            }
            json row = check_row("drift:" + I->id, worst.normalized,
                                 sc.tol.drift,
                                 worst.normalized <= sc.tol.drift);
            row["integral"] = I->id;
            row["I0"] = worst.reference;
            row["max_drift"] = worst.max_abs_dev;
            row["normalized"] = worst.normalized;
            push(std::move(row));
        }

        for (const auto& id : req_charts) {
            const CanonicalChart& chart = find_chart(charts, id);
            const FirstIntegral& I = cat.integral(chart.integral_id);
            double worst_drift = 0.0, worst_match = 0.0;
            bool monotone = true;
            for (const auto& traj : trajs) {
                const ChartReport rep = chart_consistency(chart, traj, I);
                worst_drift =
                    std::max(worst_drift, rep.htilde_drift.normalized);
                worst_match = std::max(worst_match, rep.max_match_rel);
                monotone = monotone && rep.T_monotone;
            }
            json row = check_row(
                "chart:" + id, worst_drift, sc.tol.drift,
                worst_drift <= sc.tol.drift &&
                    worst_match <= sc.tol.chart_match && monotone);
            row["chart"] = id;
            row["htilde_drift"] = worst_drift;
            row["equals_integral"] = chart.integral_id;
            row["factor"] = chart.factor;
            row["match_rel"] = worst_match;
            row["T_monotone"] = monotone;
            push(std::move(row));
        }

        for (const SymmetryEntry* e : req_syms) {
            Rng rng(Rng::derive(seed, "residual." + e->gen.name));
            const Box box =
                residual_box(sc.pot, std::min(3.0, sc.t_end));
            double worst = 0.0;
            for (int i = 0; i < 1000; ++i) {
                const OffShellPoint p{rng.uniform(box.t_lo, box.t_hi),
                                      rng.uniform(box.q_lo, box.q_hi),
                                      rng.uniform(-5.0, 5.0),
                                      rng.uniform(-5.0, 5.0)};
                const double L =
                    lagrangian(sc.pot, par, {p.t, p.q, p.qdot});
                worst = std::max(
                    worst,
                    std::abs(rund_trautman_residual(e->gen, sc.pot, par,
                                                    p)) /
                        (1.0 + std::abs(L)));
            }
            json row = check_row("residual:" + e->gen.name, worst,
                                 sc.tol.residual, worst <= sc.tol.residual);
            row["symmetry"] = e->gen.name;
            row["integral"] = e->integral_id;
            push(std::move(row));
        }

        if (sc.checks.weak_constant) {
            double worst = 0.0, worst_rec = 0.0;
            for (const auto& traj : trajs) {
                const ConstantSeries w = weak_constant(traj);
                worst = std::max(worst, w.report.normalized);
                const std::vector<double> rec = reconstruct_action(traj);
                for (std::size_t i = 0; i < rec.size(); ++i)
                    worst_rec = std::max(
                        worst_rec,
                        std::abs(rec[i] - traj.samples[i].action));
            }
            json row = check_row("weak_constant", worst, sc.tol.weak,
                                 worst <= sc.tol.weak &&
                                     worst_rec <= sc.tol.weak);
            row["action_reconstruction"] = worst_rec;
            push(std::move(row));
        }
    } else {
        std::vector<Trajectory3D> trajs;
        for (std::size_t i = 0; i < sc.initials3.size(); ++i) {
            trajs.push_back(
                integrate3d(sc.pot, par, sc.initials3[i], sc.t_end, sc.cfg));
            if (writing) {
                if (opt.format == "json") {
                    std::ofstream os(traj_path(i, ".json"));
                    write_trajectory3d_json(trajs.back(), os);
                } else {
                    std::ofstream os(traj_path(i, ".csv"));
                    write_csv3d(trajs.back(), os);
                }
            }
        }
        summary["trajectories"] =
            static_cast<std::uint64_t>(trajs.size());

        if (sc.checks.central3d) {
            double worst_l = 0.0, worst_planar = 0.0, worst_energy = -1.0;
            for (const auto& traj : trajs) {
                const Vec3 l0 =
                    angular_momentum_integral(par, traj.samples.front());
                const double lnorm = norm(l0);
                for (int c = 0; c < 3; ++c) {
                    const DriftReport rep = drift_of(
                        "l",
                        [&](std::size_t i) {
                            const Vec3 l = angular_momentum_integral(
                                par, traj.samples[i]);
                            return c == 0 ? l.x : (c == 1 ? l.y : l.z);
                        },
                        traj.samples.size());
                    worst_l = std::max(worst_l, rep.max_abs_dev / lnorm);
                }
                worst_planar =
                    std::max(worst_planar, planarity_deviation(traj));
                if (traj.pot.kind == PotentialKind::log ||
                    traj.pot.kind == PotentialKind::power) {
                    const DriftReport rep = drift_of(
                        "central_energy",
                        [&](std::size_t i) {
                            return central_energy_integral(
                                traj.pot, par, traj.samples[i]);
                        },
                        traj.samples.size());
                    worst_energy = std::max(worst_energy, rep.normalized);
                }
            }
            json row = check_row("angular_momentum", worst_l,
                                 sc.tol.angular,
                                 worst_l <= sc.tol.angular &&
                                     worst_planar <= sc.tol.angular);
            row["planarity"] = worst_planar;
            push(std::move(row));
            if (worst_energy >= 0.0)
                push(check_row("central_energy", worst_energy,
                               sc.tol.drift, worst_energy <= sc.tol.drift));
        }
    }

    summary["checks"] = std::move(checks);
    const auto t_stop = std::chrono::steady_clock::now();
    summary["runtime_ms"] = static_cast<std::int64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(t_stop -
                                                              t_start)
            .count());
    out.exit_code = all_pass ? 0 : 1;
    return out;
}

/// Parse + run with error phases mapped to exit codes: SchemaError /
/// PotentialMismatch / constructor DomainError are configuration errors
/// (exit 2); anything thrown while integrating or evaluating is a runtime
/// failure (exit 3).  The returned summary always has the standard shape.
inline RunResult run_scenario_json(const json& config, const RunOptions& opt) {
    auto error_result = [&](const std::string& kind, const std::string& what,
                            int code) {
        RunResult r;
        r.summary["version"] = ARTIFACT_VERSION;
        r.summary["scenario"] =
            config.is_object() && config.contains("name") &&
                    config["name"].is_string()
                ? config["name"].get<std::string>()
                : "unnamed";
        r.summary["timestamp"] = scenario_detail::iso8601_utc_now();
        r.summary["error_kind"] = kind;
        r.summary["error"] = what;
        r.summary["checks"] = json::array();
        r.summary["runtime_ms"] = 0;
        r.exit_code = code;
        return r;
    };

    Scenario sc;
    try {
        sc = parse_scenario(config);
    } catch (const SchemaError& e) {
        return error_result("SchemaError", e.what(), 2);
    } catch (const DomainError& e) {
        // e.g. an excluded power-law exponent or non-positive damping
        return error_result("DomainError", e.what(), 2);
    }

    try {
        return run_scenario(sc, opt);
    } catch (const SchemaError& e) {
        return error_result("SchemaError", e.what(), 2);
    } catch (const PotentialMismatch& e) {
        return error_result("PotentialMismatch", e.what(), 2);
    } catch (const StepSizeUnderflow& e) {
        return error_result("StepSizeUnderflow", e.what(), 3);
    } catch (const OverflowGuard& e) {
        return error_result("OverflowGuard", e.what(), 3);
    } catch (const Error& e) {
        return error_result("Error", e.what(), 3);
    }
}

// ── sweeps ──────────────────────────────────────────────────────────────────

/// Set a dot-path like "potential.alpha" inside a config object.
inline void apply_override(json& config, const std::string& dot_path,
                           const json& value) {
    std::string ptr = "/";
    for (char c : dot_path) ptr += (c == '.') ? '/' : c;
    config[json::json_pointer(ptr)] = value;
}

/// Expand {"gamma": [...], "potential.alpha": [...]} into the cartesian
/// product of overrides, in config order (row-major, first key slowest).
inline std::vector<json> expand_grid(const json& grid) {
    if (!grid.is_object())
        throw SchemaError("sweep: \"grid\" must be an object of arrays");
    std::vector<std::string> keys;
    std::vector<const json*> axes;
    for (auto it = grid.begin(); it != grid.end(); ++it) {
        if (!it.value().is_array())
            throw SchemaError("sweep: grid axis \"" + it.key() +
                              "\" must be an array");
        if (it.value().empty()) return {};  // empty axis -> empty sweep
        keys.push_back(it.key());
        axes.push_back(&it.value());
    }
    if (keys.empty()) return {};

    std::vector<json> rows;
    std::vector<std::size_t> idx(keys.size(), 0);
    for (;;) {
        json overrides;
        for (std::size_t k = 0; k < keys.size(); ++k)
            overrides[keys[k]] = (*axes[k])[idx[k]];
        rows.push_back(std::move(overrides));
        std::size_t k = keys.size();
        while (k-- > 0) {
            if (++idx[k] < axes[k]->size()) break;
            idx[k] = 0;
            if (k == 0) return rows;
        }
    }
}

/// Run a sweep config {"name", "base": {scenario}, "grid": {...}} with
/// row-level parallelism.  Each row gets an independent seed derived from
/// the base seed and the row index, so results do not depend on the number
/// of jobs.  Rows that fail to configure are flagged and the sweep
/// continues.  Exit code 0 iff every row passes.
inline RunResult run_sweep_json(const json& config, const RunOptions& opt,
                                unsigned jobs) {
    const auto t_start = std::chrono::steady_clock::now();
    RunResult out;
    json& summary = out.summary;
    summary["version"] = ARTIFACT_VERSION;
    summary["scenario"] = config.is_object() && config.contains("name") &&
                                  config["name"].is_string()
                              ? config["name"].get<std::string>()
                              : "sweep";
    summary["timestamp"] = scenario_detail::iso8601_utc_now();

    if (!config.is_object() || !config.contains("base") ||
        !config.contains("grid")) {
        summary["error_kind"] = "SchemaError";
        summary["error"] = "sweep: \"base\" and \"grid\" are required";
        summary["checks"] = json::array();
        summary["runtime_ms"] = 0;
        out.exit_code = 2;
        return out;
    }
    std::vector<json> rows_overrides;
    try {
        rows_overrides = expand_grid(config["grid"]);
    } catch (const SchemaError& e) {
        summary["error_kind"] = "SchemaError";
        summary["error"] = e.what();
        summary["checks"] = json::array();
        summary["runtime_ms"] = 0;
        out.exit_code = 2;
        return out;
    }

    const std::uint64_t base_seed =
        opt.has_seed_override
            ? opt.seed_override
            : (config["base"].is_object() &&
                       config["base"].contains("seed") &&
                       config["base"]["seed"].is_number()
                   ? config["base"]["seed"].get<std::uint64_t>()
                   : 42);

    std::vector<json> row_results(rows_overrides.size());
    std::vector<int> row_codes(rows_overrides.size(), 0);

    auto run_row = [&](std::size_t i) {
        json row_config = config["base"];
        for (auto it = rows_overrides[i].begin();
             it != rows_overrides[i].end(); ++it)
            apply_override(row_config, it.key(), it.value());
        row_config["seed"] =
            Rng::derive(base_seed, "row." + std::to_string(i));
        if (row_config.contains("name") && row_config["name"].is_string())
            row_config["name"] = row_config["name"].get<std::string>() +
                                 "_row" + std::to_string(i);

        RunOptions row_opt = opt;
        row_opt.write_trajectories = false;  // sweeps aggregate checks only
        row_opt.has_seed_override = false;   // the derived row seed stands
        const RunResult r = run_scenario_json(row_config, row_opt);

        json row;
        row["index"] = static_cast<std::uint64_t>(i);
        row["overrides"] = rows_overrides[i];
        if (r.exit_code == 2) {
            row["status"] = "rejected";
            row["error_kind"] = r.summary["error_kind"];
            row["error"] = r.summary["error"];
        } else if (r.exit_code == 3) {
            row["status"] = "error";
            row["error_kind"] = r.summary["error_kind"];
            row["error"] = r.summary["error"];
        } else {
            row["status"] = r.exit_code == 0 ? "pass" : "fail";
            row["checks"] = r.summary["checks"];
        }
        row_results[i] = std::move(row);
        row_codes[i] = r.exit_code;
    };

    if (jobs <= 1 || rows_overrides.size() <= 1) {
        for (std::size_t i = 0; i < rows_overrides.size(); ++i) run_row(i);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        const unsigned n =
            std::min<unsigned>(jobs,
                               static_cast<unsigned>(rows_overrides.size()));
        for (unsigned w = 0; w < n; ++w)
            pool.emplace_back([&]() {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= row_results.size()) return;
                    run_row(i);
                }
            });
        for (auto& th : pool) th.join();
    }

    json rows = json::array();
    json checks = json::array();
    bool all_pass = true;
    for (std::size_t i = 0; i < row_results.size(); ++i) {
        all_pass = all_pass && row_codes[i] == 0;
        if (row_results[i].contains("checks"))
            for (const auto& c : row_results[i]["checks"]) {
                json flat = c;
                flat["name"] = "row" + std::to_string(i) + ":" +
                               c["name"].get<std::string>();
                checks.push_back(std::move(flat));
            }
        rows.push_back(std::move(row_results[i]));
    }
    summary["rows"] = std::move(rows);
    summary["checks"] = std::move(checks);
    const auto t_stop = std::chrono::steady_clock::now();
    summary["runtime_ms"] = static_cast<std::int64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(t_stop -
                                                              t_start)
            .count());
    out.exit_code = all_pass ? 0 : 1;
    return out;
}

// ── verification preset ─────────────────────────────────────────────────────

/// The full verification suite as a summary JSON (shared with the
/// acceptance binary, which prints the same checks as text).
inline RunResult run_paper_suite(std::uint64_t seed) {
    const auto t_start = std::chrono::steady_clock::now();
    RunResult out;
    json& summary = out.summary;
    summary["version"] = ARTIFACT_VERSION;
    summary["scenario"] = "paper-suite";
    summary["timestamp"] = scenario_detail::iso8601_utc_now();
    summary["seed"] = seed;

    json checks = json::array();
    bool all_pass = true;
    for (const CheckResult& r : acceptance_suite(seed)) {
        json row = scenario_detail::check_row(r.name, r.metric, r.tolerance,
                                              r.pass);
        row["detail"] = r.detail;
        checks.push_back(std::move(row));
        all_pass = all_pass && r.pass;
    }
    summary["checks"] = std::move(checks);
    const auto t_stop = std::chrono::steady_clock::now();
    summary["runtime_ms"] = static_cast<std::int64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(t_stop -
                                                              t_start)
            .count());
    out.exit_code = all_pass ? 0 : 1;
    return out;
}

// ── catalog export ──────────────────────────────────────────────────────────

inline json catalog_json(const Potential& pot, const Params& par) {
    const CatalogBundle cat = make_catalog(pot, par, false);
    json out;
    out["potential"] = potential_to_json(pot);
    out["gamma"] = par.gamma;

    json syms = json::array();
    for (const auto& e : cat.symmetries) {
        json s;
        s["name"] = e.gen.name;
        s["source"] = e.gen.source;
        s["binding"] = to_string(cat.pot.kind);
        s["tau"] = e.tau_str;
        s["xi"] = e.xi_str;
        s["f"] = e.f_str;
        s["integral"] = e.integral_id;
        s["eq8_sign"] = e.eq8_sign;
        s["converse_factor"] = e.converse_factor;
        syms.push_back(std::move(s));
    }
    out["symmetries"] = std::move(syms);

    json lies = json::array();
    for (const auto& g : cat.lie_generators) {
        json s;
        s["name"] = g.name;
        s["source"] = g.source;
        s["binding"] = to_string(cat.pot.kind);
        lies.push_back(std::move(s));
    }
    out["equation_symmetries"] = std::move(lies);

    json evos = json::array();
    for (const auto& y : cat.evolutionary) {
        json s;
        s["name"] = y.name;
        s["integral"] = y.integral_id;
        s["characteristic"] = y.formula;
        s["converse_factor"] = y.converse_factor;
        evos.push_back(std::move(s));
    }
    out["evolutionary"] = std::move(evos);

    json ints = json::array();
    for (const auto& I : cat.integrals) {
        json s;
        s["id"] = I.id;
        s["binding"] = to_string(I.binding);
        s["source"] = I.source;
        s["formula"] = I.formula;
        ints.push_back(std::move(s));
    }
    out["integrals"] = std::move(ints);
    return out;
}

}  // namespace bck
