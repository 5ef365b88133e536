#include "swgate/cli_runner.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "swgate/error_budget.hpp"
#include "swgate/errors.hpp"
#include "swgate/gate_analysis.hpp"
#include "swgate/hamiltonians.hpp"
#include "swgate/phase_lock.hpp"
#include "swgate/scan_result.hpp"
#include "swgate/sweep.hpp"

#ifndef SWGATE_VERSION
#define SWGATE_VERSION "v0.0.0"
#endif

namespace swgate::cli {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::vector<std::string>& allowed,
                    const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw ValidationError("unknown key '" + key + "' in " + where);
    }
}

double num(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) throw ValidationError("'" + key + "' must be a number");
    return j.at(key).get<double>();
}

PhysParams parse_params(const json& j) {
    reject_unknown(j, {"eta", "omega_z", "delta", "omega_rabi", "phi1", "phi2", "n_ions",
                       "dphi_bd", "dphi_rd", "rabi_imbalance", "dphi_sp"},
                   "params");
    PhysParams p;
    p.eta = num(j, "eta", p.eta);
    p.omega_z = num(j, "omega_z", p.omega_z);
    p.delta = num(j, "delta", p.delta);
    p.omega_rabi = num(j, "omega_rabi", p.omega_rabi);
    p.phi1 = num(j, "phi1", p.phi1);
    p.phi2 = num(j, "phi2", p.phi2);
    p.n_ions = int(num(j, "n_ions", p.n_ions));
    p.dphi_bd = num(j, "dphi_bd", p.dphi_bd);
    p.dphi_rd = num(j, "dphi_rd", p.dphi_rd);
    p.rabi_imbalance = num(j, "rabi_imbalance", p.rabi_imbalance);
    p.dphi_sp = num(j, "dphi_sp", p.dphi_sp);
    p.validate();
    return p;
}

PulseEnvelope parse_envelope(const json& j) {
    reject_unknown(j, {"t_ramp", "t_total", "shape"}, "envelope");
    PulseEnvelope env;
    env.t_ramp = num(j, "t_ramp", 0.0);
    env.t_total = num(j, "t_total", 0.0);
    std::string shape = j.value("shape", env.t_ramp > 0.0 ? "sin2_ramp" : "square");
    if (shape == "sin2_ramp")
        env.shape = PulseEnvelope::Shape::sin2_ramp;
    else if (shape == "square")
        env.shape = PulseEnvelope::Shape::square;
    else
        throw ValidationError("envelope shape must be sin2_ramp or square");
    return env;
}

IntegratorConfig parse_integrator(const json& j) {
    reject_unknown(j, {"dt_init", "tol", "max_refinements"}, "integrator");
    IntegratorConfig cfg;
    cfg.dt_init = num(j, "dt_init", cfg.dt_init);
    cfg.tol = num(j, "tol", cfg.tol);
    cfg.max_refinements = int(num(j, "max_refinements", cfg.max_refinements));
    if (cfg.tol <= 0.0) throw ValidationError("integrator tol must be positive");
    return cfg;
}

const std::vector<std::string> kExperiments = {
    "phase-scan",      "detuning-scan", "sdf-curve",          "gate-fidelity",
    "power-curve",     "error-budget",  "lock-sim",           "calibrate-spacing",
    "calibrate-bichromatic"};

std::vector<double> duration_list(const json& options) {
    std::vector<double> durations = {15e-6, 20e-6, 30e-6, 40e-6, 60e-6};
    if (options.contains("durations")) {
        durations = options.at("durations").get<std::vector<double>>();
        if (durations.empty()) throw ValidationError("durations must be non-empty");
    }
    return durations;
}

json params_json(const PhysParams& p) {
    return json{{"eta", p.eta},
                {"omega_z", p.omega_z},
                {"delta", p.delta},
                {"omega_rabi", p.omega_rabi},
                {"phi1", p.phi1},
                {"phi2", p.phi2},
                {"n_ions", p.n_ions},
                {"dphi_bd", p.dphi_bd},
                {"dphi_rd", p.dphi_rd},
                {"rabi_imbalance", p.rabi_imbalance},
                {"dphi_sp", p.dphi_sp}};
}

json envelope_json(const PulseEnvelope& env) {
    return json{{"t_ramp", env.t_ramp},
                {"t_total", env.t_total},
                {"shape", env.shape == PulseEnvelope::Shape::sin2_ramp ? "sin2_ramp" : "square"}};
}

struct ExperimentOutput {
    ScanResult scan;       // written when it has an axis
    json results;          // experiment-specific summary fields
    std::string rendered;  // optional stdout block (tables)
};

ExperimentOutput run_phase_scan(const RunConfig& cfg) {
    reject_unknown(cfg.options, {"t_pulse", "n_points"}, "options");
    const double t_pulse = num(cfg.options, "t_pulse", 0.0);
    const int n_points = int(num(cfg.options, "n_points", 81));
    ExperimentOutput out;
    out.scan = phase_scan(cfg.params, t_pulse, cfg.params.n_ions, n_points);
    out.results["t_pulse_s"] = t_pulse > 0.0 ? t_pulse : carrier_pi_time(cfg.params);
    return out;
}

ExperimentOutput run_detuning_scan(const RunConfig& cfg) {
    reject_unknown(cfg.options, {"placement", "resonance", "span", "n_points"}, "options");
    const std::string placement = cfg.options.value("placement", "node");
    const std::string resonance = cfg.options.value("resonance", "carrier");
    if (placement != "node" && placement != "antinode")
        throw ValidationError("placement must be node or antinode");
    if (resonance != "carrier" && resonance != "sideband")
        throw ValidationError("resonance must be carrier or sideband");
    ExperimentOutput out;
    out.scan = detuning_scan(cfg.params,
                             placement == "node" ? Placement::node : Placement::antinode,
                             resonance == "carrier" ? Resonance::carrier : Resonance::sideband,
                             num(cfg.options, "span", two_pi * 0.25e6),
                             int(num(cfg.options, "n_points", 61)));
    out.results["placement"] = placement;
    out.results["resonance"] = resonance;
    return out;
}

ExperimentOutput run_sdf_curve(const RunConfig& cfg) {
    reject_unknown(cfg.options, {"xs"}, "options");
    std::vector<double> xs = {0.2, 0.6, 1.0, 1.5, 2.0, 2.5, 3.0};
    if (cfg.options.contains("xs")) xs = cfg.options.at("xs").get<std::vector<double>>();
    const double t_ramp = cfg.envelope.t_ramp > 0.0 ? cfg.envelope.t_ramp : 3.6e-6;
    ExperimentOutput out;
    out.scan = sdf_curve(cfg.params, xs, t_ramp);
    out.results["t_ramp_s"] = t_ramp;
    const SdfPeak peak = sdf_peak(cfg.params.eta, cfg.params.omega_z);
    out.results["bessel_peak_x"] = peak.x_star;
    out.results["bessel_peak_force_rad_s"] = peak.omega_sdf_star;
    return out;
}

ExperimentOutput run_gate_fidelity(const RunConfig& cfg) {
    reject_unknown(cfg.options, {"durations"}, "options");
    const auto durations = duration_list(cfg.options);
    const double t_ramp = cfg.envelope.t_ramp > 0.0 ? cfg.envelope.t_ramp : 10e-6;
    const auto sw = gate_duration_sweep(GateModel::sw_ms, cfg.params, durations, t_ramp);
    const auto tw = gate_duration_sweep(GateModel::tw_ms, cfg.params, durations, t_ramp);
    ExperimentOutput out;
    out.scan.axis_name = "t_gate_eff_s";
    std::vector<double> osw, fsw, otw, ftw;
    for (size_t i = 0; i < durations.size(); ++i) {
        out.scan.axis_values.push_back(sw[i].t_gate_eff);
        osw.push_back(sw[i].omega_star);
        fsw.push_back(sw[i].fidelity);
        otw.push_back(tw[i].omega_star);
        ftw.push_back(tw[i].fidelity);
    }
    out.scan.add_series("omega_star_sw", std::move(osw));
    out.scan.add_probability_series("fidelity_sw", std::move(fsw));
    out.scan.add_series("omega_star_tw", std::move(otw));
    out.scan.add_probability_series("fidelity_tw", std::move(ftw));
    out.results["t_ramp_s"] = t_ramp;
    return out;
}

ExperimentOutput run_power_curve(const RunConfig& cfg) {
    reject_unknown(cfg.options, {"durations"}, "options");
    const auto durations = duration_list(cfg.options);
    const double t_ramp = cfg.envelope.t_ramp > 0.0 ? cfg.envelope.t_ramp : 10e-6;
    ExperimentOutput out;
    out.scan = power_curves(cfg.params, durations, t_ramp);
    out.results["t_ramp_s"] = t_ramp;
    return out;
}

ExperimentOutput run_error_budget(const RunConfig& cfg) {
    reject_unknown(cfg.options,
                   {"t_gate_eff", "rabi_imbalance_rel", "sigma_phi", "dphi_sp", "dphi_bi",
                    "x_operating"},
                   "options");
    const double t_gate = num(cfg.options, "t_gate_eff", 15e-6);
    const double delta_g = two_pi / t_gate;
    Fluctuations fl;
    fl.rabi_imbalance_rel = num(cfg.options, "rabi_imbalance_rel", fl.rabi_imbalance_rel);
    fl.sigma_phi = num(cfg.options, "sigma_phi", fl.sigma_phi);
    fl.dphi_sp = num(cfg.options, "dphi_sp", fl.dphi_sp);
    fl.dphi_bi = num(cfg.options, "dphi_bi", fl.dphi_bi);
    const double t_ramp = cfg.envelope.t_ramp > 0.0 ? cfg.envelope.t_ramp : 10e-6;
    const BudgetTable table =
        budget_table(cfg.params, delta_g, fl, t_ramp, num(cfg.options, "x_operating", 0.0));

    ExperimentOutput out;
    out.rendered = render_budget_table(table);
    out.scan.axis_name = "row";
    for (size_t i = 0; i < table.rows.size(); ++i) out.scan.axis_values.push_back(double(i));
    std::vector<double> sq, sh;
    for (const auto& row : table.rows) {
        sq.push_back(row.eps_square);
        sh.push_back(row.eps_shaped);
    }
    out.scan.add_series("eps_square", std::move(sq));
    out.scan.add_series("eps_shaped", std::move(sh));
    out.results["total_square"] = table.total_square;
    out.results["total_shaped"] = table.total_shaped;
    out.results["x_operating"] = table.x_operating;
    out.results["x_per_row"] = table.x_per_row;
    out.results["shaping_suppression_r"] = table.carrier_suppression_r;
    out.results["rows"] = json::array();
    for (const auto& row : table.rows)
        out.results["rows"].push_back(json{{"source", to_string(row.source)},
                                           {"fluctuation", row.fluctuation},
                                           {"eps_square", row.eps_square},
                                           {"eps_shaped", row.eps_shaped}});
    return out;
}

ExperimentOutput run_lock_sim(const RunConfig& cfg) {
    reject_unknown(cfg.options,
                   {"drift_rate", "pd_offset_drift", "pd_residual", "m_feedback_shots",
                    "n_main_shots", "shot_period", "duration", "bins", "pd_only_compare"},
                   "options");
    LockConfig lock;
    lock.drift_rate = num(cfg.options, "drift_rate", lock.drift_rate);
    lock.pd_offset_drift = num(cfg.options, "pd_offset_drift", lock.pd_offset_drift);
    lock.pd_residual = num(cfg.options, "pd_residual", lock.pd_residual);
    lock.m_feedback_shots = int(num(cfg.options, "m_feedback_shots", lock.m_feedback_shots));
    lock.n_main_shots = int(num(cfg.options, "n_main_shots", lock.n_main_shots));
    lock.shot_period = num(cfg.options, "shot_period", lock.shot_period);
    lock.duration = num(cfg.options, "duration", lock.duration);
    lock.rng_seed = cfg.seed;
    const LockTrace trace = simulate_lock(lock);
    const HistogramFit fit = histogram(trace, int(num(cfg.options, "bins", 41)));
    const PositionFluctuation pos = position_fluctuation(fit.sigma);

    ExperimentOutput out;
    out.scan.axis_name = "time_s";
    out.scan.axis_values = trace.times;
    out.scan.add_series("dphi_rad", trace.dphi);
    out.results["rms_rad"] = trace.rms;
    out.results["fit_sigma_rad"] = fit.sigma;
    out.results["lambda_fraction"] = pos.wavelength_fraction;
    out.results["sw_period_fraction"] = pos.sw_period_fraction;
    out.results["gaussian_like"] = fit.gaussian_like;
    if (cfg.options.value("pd_only_compare", true)) {
        LockConfig pd_only = lock;
        pd_only.ion_feedback = false;
        out.results["rms_pd_only_rad"] = simulate_lock(pd_only).rms;
    }
    return out;
}

ExperimentOutput run_calibrate_spacing(const RunConfig& cfg) {
    reject_unknown(cfg.options, {"n_points", "shots", "t_pulse"}, "options");
    const int n_points = int(num(cfg.options, "n_points", 81));
    const int shots = int(num(cfg.options, "shots", 0));
    ExperimentOutput out;
    out.scan = phase_scan(cfg.params, num(cfg.options, "t_pulse", 0.0), 2, n_points);
    if (shots > 0) add_projection_noise(out.scan, shots, cfg.seed);
    const double fitted = spacing_fit(out.scan);
    out.results["dphi_sp_true"] = cfg.params.dphi_sp;
    out.results["dphi_sp_fit"] = fitted;
    out.results["shots"] = shots;
    return out;
}

ExperimentOutput run_calibrate_bichromatic(const RunConfig& cfg) {
    reject_unknown(cfg.options, {"n_points", "shots", "t_gate_eff"}, "options");
    const int n_points = int(num(cfg.options, "n_points", 81));
    const int shots = int(num(cfg.options, "shots", 0));
    const double delta_g = two_pi / num(cfg.options, "t_gate_eff", 30e-6);

    PhysParams clean = cfg.params;
    clean.dphi_bd = 0.0;
    clean.dphi_rd = 0.0;
    ScanResult ref_blue = bichromatic_tone_scan(clean, delta_g, Tone::blue, 512);
    ScanResult ref_red = bichromatic_tone_scan(clean, delta_g, Tone::red, 512);
    ScanResult blue = bichromatic_tone_scan(cfg.params, delta_g, Tone::blue, n_points);
    ScanResult red = bichromatic_tone_scan(cfg.params, delta_g, Tone::red, n_points);
    if (shots > 0) {
        add_projection_noise(blue, shots, cfg.seed);
        add_projection_noise(red, shots, cfg.seed + 1);
    }
    ExperimentOutput out;
    out.scan.axis_name = "dphi_rad";
    out.scan.axis_values = blue.axis_values;
    for (const auto& [name, vals] : blue.series) out.scan.add_series("blue_" + name, vals);
    for (const auto& [name, vals] : red.series) out.scan.add_series("red_" + name, vals);
    out.results["dphi_bd_true"] = cfg.params.dphi_bd;
    out.results["dphi_rd_true"] = cfg.params.dphi_rd;
    out.results["dphi_bd_fit"] = fringe_shift_fit(blue, ref_blue);
    out.results["dphi_rd_fit"] = fringe_shift_fit(red, ref_red);
    out.results["shots"] = shots;
    return out;
}

}  // namespace

RunConfig parse_config(const json& j) {
    reject_unknown(j, {"experiment", "params", "envelope", "integrator", "options", "output_dir",
                       "seed"},
                   "config");
    RunConfig cfg;
    if (!j.contains("experiment") || !j.at("experiment").is_string())
        throw ValidationError("config needs an 'experiment' string");
    cfg.experiment = j.at("experiment").get<std::string>();
    if (std::find(kExperiments.begin(), kExperiments.end(), cfg.experiment) == kExperiments.end())
        throw ValidationError("unknown experiment '" + cfg.experiment + "'");
    cfg.params = parse_params(j.value("params", json::object()));
    cfg.envelope = parse_envelope(j.value("envelope", json::object()));
    cfg.integrator = parse_integrator(j.value("integrator", json::object()));
    cfg.options = j.value("options", json::object());
    if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

void apply_override(json& j, const std::string& dotted_key, const std::string& value) {
    json* node = &j;
    std::string rest = dotted_key;
    for (size_t pos = rest.find('.'); pos != std::string::npos; pos = rest.find('.')) {
        node = &(*node)[rest.substr(0, pos)];
        rest = rest.substr(pos + 1);
    }
    if (value == "true" || value == "false") {
        (*node)[rest] = (value == "true");
        return;
    }
    char* end = nullptr;
    const double d = std::strtod(value.c_str(), &end);
    if (end && *end == '\0' && end != value.c_str())
        (*node)[rest] = d;
    else
        (*node)[rest] = value;
}

std::vector<PresetInfo> preset_list() {
    return {
        {"fig2a", "phase-scan", "single-ion SW fringe at the carrier resonance"},
        {"fig2b", "detuning-scan", "carrier/sideband detuning scans at node or anti-node"},
        {"fig3", "sdf-curve", "SDF magnitude vs 2*Omega/delta for TW and SW drives"},
        {"fig4a", "gate-fidelity", "optimized MS gate fidelity vs effective duration"},
        {"fig4b", "power-curve", "relative laser power vs effective duration"},
        {"tableB1", "error-budget", "analytic SW gate error budget, square vs shaped"},
        {"lockB1", "lock-sim", "two-loop phase stabilization residuals over one hour"},
        {"calspacing", "calibrate-spacing", "two-ion fringe fit of the spacing mismatch"},
        {"calbichromatic", "calibrate-bichromatic", "per-tone anti-node offset calibration"},
    };
}

json preset_config(const std::string& name) {
    json j;
    j["params"] = json::object();
    j["options"] = json::object();
    if (name == "fig2a") {
        j["experiment"] = "phase-scan";
        j["params"]["n_ions"] = 1;
        j["params"]["omega_rabi"] = two_pi * 50e3;
        j["options"]["n_points"] = 129;
    } else if (name == "fig2b") {
        j["experiment"] = "detuning-scan";
        j["params"]["omega_rabi"] = two_pi * 50e3;
        j["options"]["placement"] = "node";
        j["options"]["resonance"] = "carrier";
    } else if (name == "fig3") {
        j["experiment"] = "sdf-curve";
        j["envelope"] = {{"t_ramp", 3.6e-6}, {"shape", "sin2_ramp"}};
        j["options"]["xs"] = {0.2, 0.6, 1.0, 1.5, 2.0, 2.5, 3.0};
    } else if (name == "fig4a") {
        j["experiment"] = "gate-fidelity";
        j["envelope"] = {{"t_ramp", 10e-6}, {"shape", "sin2_ramp"}};
        j["options"]["durations"] = {15e-6, 20e-6, 30e-6, 40e-6, 60e-6};
    } else if (name == "fig4b") {
        j["experiment"] = "power-curve";
        j["envelope"] = {{"t_ramp", 10e-6}, {"shape", "sin2_ramp"}};
        j["options"]["durations"] = {15e-6, 20e-6, 30e-6, 40e-6, 60e-6};
    } else if (name == "tableB1") {
        j["experiment"] = "error-budget";
        j["envelope"] = {{"t_ramp", 10e-6}, {"shape", "sin2_ramp"}};
        j["options"]["t_gate_eff"] = 15e-6;
    } else if (name == "lockB1") {
        j["experiment"] = "lock-sim";
        j["options"]["duration"] = 3600.0;
    } else if (name == "calspacing") {
        j["experiment"] = "calibrate-spacing";
        j["params"]["n_ions"] = 2;
        j["params"]["dphi_sp"] = 0.2;
        j["options"]["shots"] = 100;
    } else if (name == "calbichromatic") {
        j["experiment"] = "calibrate-bichromatic";
        j["params"]["n_ions"] = 2;
        j["params"]["omega_rabi"] = two_pi * 0.3e6;
        j["params"]["dphi_bd"] = 0.1;
        j["params"]["dphi_rd"] = -0.05;
        j["options"]["shots"] = 100;
    } else {
        throw ValidationError("unknown preset '" + name + "' (see `swgate presets`)");
    }
    return j;
}

void run(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentOutput out;
    if (cfg.experiment == "phase-scan")
        out = run_phase_scan(cfg);
    else if (cfg.experiment == "detuning-scan")
        out = run_detuning_scan(cfg);
    else if (cfg.experiment == "sdf-curve")
        out = run_sdf_curve(cfg);
    else if (cfg.experiment == "gate-fidelity")
        out = run_gate_fidelity(cfg);
    else if (cfg.experiment == "power-curve")
        out = run_power_curve(cfg);
    else if (cfg.experiment == "error-budget")
        out = run_error_budget(cfg);
    else if (cfg.experiment == "lock-sim")
        out = run_lock_sim(cfg);
    else if (cfg.experiment == "calibrate-spacing")
        out = run_calibrate_spacing(cfg);
    else if (cfg.experiment == "calibrate-bichromatic")
        out = run_calibrate_bichromatic(cfg);
    else
        throw ValidationError("unknown experiment '" + cfg.experiment + "'");

    std::filesystem::create_directories(cfg.output_dir);
    const std::string base = cfg.output_dir + "/" + cfg.experiment;
    if (!out.scan.axis_values.empty()) out.scan.write_csv(base + ".csv");
    if (!out.rendered.empty()) std::cout << out.rendered;

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    json summary;
    summary["experiment"] = cfg.experiment;
    summary["version"] = SWGATE_VERSION;
    summary["wall_time_s"] = wall;
    summary["seed"] = cfg.seed;
    summary["params"] = params_json(cfg.params);
    summary["envelope"] = envelope_json(cfg.envelope);
    summary["integrator"] = json{{"dt_init", cfg.integrator.dt_init},
                                 {"tol", cfg.integrator.tol},
                                 {"max_refinements", cfg.integrator.max_refinements}};
    summary["options"] = cfg.options;
    summary["results"] = out.results;
    std::ofstream sout(base + ".summary.json");
    if (!sout) throw ValidationError("cannot write " + base + ".summary.json");
    sout << summary.dump(2) << '\n';
}

int run_cli(int argc, char** argv) {
    CLI::App app{"standing-wave vs traveling-wave trapped-ion gate simulator"};
    app.require_subcommand(1);

    auto* presets_cmd = app.add_subcommand("presets", "list the shipped experiment presets");
    auto* run_cmd = app.add_subcommand("run", "run an experiment from a config or preset");
    std::string config_path, preset_name, output_dir;
    int jobs = 0;
    std::int64_t seed = -1;
    run_cmd->add_option("--config", config_path, "JSON run configuration");
    run_cmd->add_option("--preset", preset_name, "named preset (see `swgate presets`)");
    run_cmd->add_option("--jobs", jobs, "worker pool size (default: logical cores)");
    run_cmd->add_option("--seed", seed, "RNG seed override");
    run_cmd->add_option("--output-dir", output_dir, "output directory");
    run_cmd->allow_extras();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitValidation;
    }

    if (presets_cmd->parsed()) {
        std::printf("%-16s %-24s %s\n", "preset", "experiment", "description");
        for (const auto& p : preset_list())
            std::printf("%-16s %-24s %s\n", p.name.c_str(), p.experiment.c_str(),
                        p.description.c_str());
        return kExitOk;
    }

    try {
        json raw;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw ValidationError("cannot read config file " + config_path);
            try {
                in >> raw;
            } catch (const json::parse_error& e) {
                throw ValidationError(std::string("config is not valid JSON: ") + e.what());
            }
        } else if (!preset_name.empty()) {
            raw = preset_config(preset_name);
        } else {
            throw ValidationError("run needs --config or --preset");
        }
        for (const std::string& extra : run_cmd->remaining()) {
            if (extra.rfind("--", 0) != 0)
                throw ValidationError("override must look like --key.path=value: " + extra);
            const size_t eq = extra.find('=');
            if (eq == std::string::npos)
                throw ValidationError("override must look like --key.path=value: " + extra);
            apply_override(raw, extra.substr(2, eq - 2), extra.substr(eq + 1));
        }
        if (seed >= 0) raw["seed"] = seed;
        if (!output_dir.empty()) raw["output_dir"] = output_dir;
        if (jobs > 0) set_max_jobs(jobs);

        const RunConfig cfg = parse_config(raw);
        run(cfg);
        std::cout << cfg.experiment << ": wrote " << cfg.output_dir << "/" << cfg.experiment
                  << ".csv and .summary.json\n";
        return kExitOk;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const NonConvergenceError& e) {
        std::cerr << "numerical non-convergence: " << e.what() << '\n';
        return kExitNumerics;
    } catch (const TruncationError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerics;
    } catch (const FitError& e) {
        std::cerr << "fit failure: " << e.what() << " (residual " << e.residual << ")\n";
        return kExitNumerics;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace swgate::cli
