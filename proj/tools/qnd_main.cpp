#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qnd/config.hpp"
#include "qnd/errors.hpp"
#include "qnd/kernels.hpp"
#include "qnd/report_io.hpp"

namespace {

using namespace qnd;

struct CommonFlags {
    std::string config_path;
    std::string out_dir;
    std::string format;
};

void add_common(CLI::App* cmd, CommonFlags& fl) {
    cmd->add_option("--config", fl.config_path, "configuration file (key = value, unit-tagged rates)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", fl.out_dir, "output directory (default from config, 'out')");
    cmd->add_option("--format", fl.format, "csv, json or both")
        ->check(CLI::IsMember({"csv", "json", "both"}));
}

RunConfig resolve_config(const CommonFlags& fl) {
    RunConfig cfg = fl.config_path.empty() ? default_config() : load_config_file(fl.config_path);
    if (!fl.out_dir.empty()) cfg.out_dir = fl.out_dir;
    if (!fl.format.empty()) {
        if (fl.format == "csv") cfg.format = OutputFormat::csv;
        else if (fl.format == "json") cfg.format = OutputFormat::json;
        else cfg.format = OutputFormat::both;
    }
    const auto violations = validate(cfg);
    if (!violations.empty()) throw ConfigError("invalid configuration", violations);
    return cfg;
}

bool want_csv(const RunConfig& cfg) { return cfg.format != OutputFormat::json; }
bool want_json(const RunConfig& cfg) { return cfg.format != OutputFormat::csv; }

std::string out_path(const RunConfig& cfg, const std::string& name) {
    return (std::filesystem::path(cfg.out_dir) / name).string();
}

void emit(const RunConfig& cfg, const std::string& name, const std::string& content) {
    const std::string path = out_path(cfg, name);
    write_file(path, content);
    std::cout << "wrote " << path << "\n";
}

void emit_effective_config(const RunConfig& cfg) {
    emit(cfg, "config.txt", serialize_config(cfg));
}

/// chi used for state construction: the configured rule or g^2/(kappa Delta).
/// A vacuum probe has no scaled-rule chi; it degenerates to 0 (no cross phase).
double state_chi(const RunConfig& cfg) {
    if (cfg.chi_from_params) return to_cavity_params(cfg).chi();
    if (cfg.n_probe == 0.0 && cfg.chi_rule.kind == ChiRule::Kind::scaled) return 0.0;
    return cfg.chi_rule.at(cfg.n_probe);
}

std::vector<double> make_range(double lo, double hi, int points, bool log_spacing) {
    std::vector<double> v;
    if (points <= 0) return v;
    if (points == 1) {
        v.push_back(lo);
        return v;
    }
    v.reserve(static_cast<std::size_t>(points));
    if (log_spacing) {
        const double ratio = std::log(hi / lo) / (points - 1);
        for (int i = 0; i < points; ++i) v.push_back(lo * std::exp(ratio * i));
    } else {
        const double step = (hi - lo) / (points - 1);
        for (int i = 0; i < points; ++i) v.push_back(lo + step * i);
    }
    return v;
}

Json grid_spec_json(const std::vector<double>& axis) {
    Json j;
    j["min"] = axis.front();
    j["max"] = axis.back();
    j["points"] = static_cast<int>(axis.size());
    return j;
}

// ---------------------------------------------------------------------------

int run_qfunc(const CommonFlags& fl, const std::string& which) {
    const RunConfig cfg = resolve_config(fl);
    const double chi = state_chi(cfg);

    FockVector state = coherent_amplitudes(cfg.n_probe, cfg.window_sigmas);
    if (which == "final") {
        const auto profile = compensated_phase_profile(chi, cfg.n_probe, state.n_min, state.n_top());
        state = apply_cross_phase(state, profile);
    }
    const auto axis = husimi_auto_axis(state, cfg.q_grid_points);
    const QGrid grid = husimi_q(state, axis, axis);

    std::size_t best = 0;
    for (std::size_t i = 1; i < grid.values.size(); ++i)
        if (grid.values[i] > grid.values[best]) best = i;
    const std::size_t nx = grid.x_axis.size();

    Json meta;
    meta["which"] = which;
    meta["n_probe"] = cfg.n_probe;
    meta["chi"] = chi;
    meta["grid"] = grid_spec_json(axis);
    meta["peak_re_alpha"] = grid.x_axis[best % nx];
    meta["peak_im_alpha"] = grid.y_axis[best / nx];
    meta["peak_value"] = grid.values[best];

    emit_effective_config(cfg);
    if (want_csv(cfg)) emit(cfg, "qfunc_" + which + ".csv", qgrid_csv(grid));
    if (want_json(cfg)) emit(cfg, "qfunc_" + which + ".json", dump_json(meta));
    return 0;
}

int run_quad(const CommonFlags& fl) {
    const RunConfig cfg = resolve_config(fl);
    const double chi = state_chi(cfg);

    const FockVector initial = coherent_amplitudes(cfg.n_probe, cfg.window_sigmas);
    const auto profile = compensated_phase_profile(chi, cfg.n_probe, initial.n_min, initial.n_top());
    const FockVector final_state = apply_cross_phase(initial, profile);

    const auto axis = quadrature_auto_axis(initial, cfg.quad_base_points);
    QuadratureDensity no_signal = quadrature_density(initial, axis);
    QuadratureDensity signal = quadrature_density(final_state, axis);
    if (cfg.quadrature_scale != 1.0) {
        no_signal = rescale_quadrature(no_signal, cfg.quadrature_scale);
        signal = rescale_quadrature(signal, cfg.quadrature_scale);
    }

    const auto peak_of = [](const QuadratureDensity& d) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < d.density.size(); ++i)
            if (d.density[i] > d.density[best]) best = i;
        return d.x_axis[best];
    };

    Json meta;
    meta["n_probe"] = cfg.n_probe;
    meta["chi"] = chi;
    meta["quadrature_scale"] = cfg.quadrature_scale;
    meta["axis"] = grid_spec_json(no_signal.x_axis);
    meta["no_signal_peak_x"] = peak_of(no_signal);
    meta["signal_peak_x"] = peak_of(signal);
    meta["no_signal_integral"] = trapezoid_integral(no_signal.x_axis, no_signal.density);
    meta["signal_integral"] = trapezoid_integral(signal.x_axis, signal.density);

    emit_effective_config(cfg);
    if (want_csv(cfg)) {
        emit(cfg, "quad_no_signal.csv", density_csv(no_signal));
        emit(cfg, "quad_signal.csv", density_csv(signal));
        emit(cfg, "quad_profile.csv", profile_csv(profile));
    }
    if (want_json(cfg)) emit(cfg, "quad.json", dump_json(meta));
    return 0;
}

int run_roc(const CommonFlags& fl, std::vector<double> n_probes, std::vector<double> epsilons) {
    const RunConfig cfg = resolve_config(fl);
    if (n_probes.empty()) n_probes = {10.0, 30.0, 50.0};
    if (epsilons.empty()) epsilons = {1e-3, 1e-2};

    const ChiRule rule = cfg.chi_from_params
                             ? ChiRule{ChiRule::Kind::fixed, to_cavity_params(cfg).chi()}
                             : cfg.chi_rule;
    const auto rows = roc_table(n_probes, rule, epsilons, cfg.quadrature_scale);

    Json j = Json::array();
    for (const auto& r : rows) j.push_back(to_json(r));

    emit_effective_config(cfg);
    if (want_csv(cfg)) emit(cfg, "roc.csv", roc_csv(rows));
    if (want_json(cfg)) emit(cfg, "roc.json", dump_json(j));
    return 0;
}

int run_overlap(const CommonFlags& fl, const std::string& axis_name, double lo, double hi,
                int points, bool log_spacing, bool lo_set, bool hi_set, bool points_set) {
    const RunConfig cfg = resolve_config(fl);
    const OverlapAxis axis = axis_name == "n_probe" ? OverlapAxis::n_probe : OverlapAxis::chi;

    std::vector<double> values;
    if (axis == OverlapAxis::chi) {
        // flags give the coefficient c in chi = c / sqrt(n_probe)
        if (!lo_set) lo = 0.1;
        if (!hi_set) hi = 2.0;
        if (!points_set) points = 100;
        values = make_range(lo / std::sqrt(cfg.n_probe), hi / std::sqrt(cfg.n_probe), points,
                            log_spacing);
    } else {
        if (!lo_set) lo = 10.0;
        if (!hi_set) hi = 1000.0;
        if (!points_set) points = 150;
        values = make_range(lo, hi, points, true); // photon-number sweeps are log-spaced
    }

    const ChiRule rule = cfg.chi_from_params
                             ? ChiRule{ChiRule::Kind::fixed, to_cavity_params(cfg).chi()}
                             : cfg.chi_rule;
    const auto samples = overlap_sweep(axis, values, cfg.n_probe, rule);

    Json j;
    j["axis"] = axis == OverlapAxis::chi ? "chi" : "n_probe";
    j["n_probe"] = cfg.n_probe;
    Json arr = Json::array();
    for (const auto& s : samples) {
        Json row;
        row["axis_value"] = s.axis_value;
        row["overlap_sq"] = s.overlap_sq;
        arr.push_back(row);
    }
    j["samples"] = arr;
    if (axis == OverlapAxis::n_probe && samples.size() >= 2)
        j["loglog_slope"] = loglog_slope(samples);

    emit_effective_config(cfg);
    if (want_csv(cfg)) emit(cfg, "overlap.csv", overlap_csv(samples, axis, cfg.n_probe, rule));
    if (want_json(cfg)) emit(cfg, "overlap.json", dump_json(j));
    return 0;
}

int run_loss(const CommonFlags& fl) {
    const RunConfig cfg = resolve_config(fl);
    const LossReport r =
        make_loss_report(to_cavity_params(cfg), cfg.multipass_m, cfg.loss_exact_coefficient);
    emit_effective_config(cfg);
    emit(cfg, "loss.json", dump_json(to_json(r)));
    return 0;
}

int run_fidelity(const CommonFlags& fl, const std::string& gamma_text, const std::string& t_text,
                 double chi_coef) {
    const RunConfig cfg = resolve_config(fl);
    const double gamma = gamma_text.empty() ? cfg.gamma_s : parse_decay_rate(gamma_text);
    const double T = t_text.empty() ? cfg.bin_separation : parse_time(t_text);
    const double chi = chi_coef / std::sqrt(cfg.n_probe);

    const FidelityReport r = timebin_fidelity(cfg.n_probe, chi, gamma, T, cfg.window_sigmas);
    Json j = to_json(r);
    j["n_probe"] = cfg.n_probe;
    j["chi"] = chi;

    emit_effective_config(cfg);
    emit(cfg, "fidelity.json", dump_json(j));
    return 0;
}

int run_feasibility(const CommonFlags& fl) {
    const RunConfig cfg = resolve_config(fl);
    FeasibilityOptions opt;
    opt.epsilon = cfg.epsilon;
    opt.n_probe_eval_cap = cfg.n_probe_eval_cap;
    opt.quad_scale = cfg.quadrature_scale;
    opt.exact_coefficient = cfg.loss_exact_coefficient;
    opt.window_sigmas = cfg.window_sigmas;

    const FeasibilityReport r = feasibility_report(to_cavity_params(cfg), opt);
    emit_effective_config(cfg);
    emit(cfg, "feasibility.json", dump_json(to_json(r)));
    return 0;
}

int run_sweep(const CommonFlags& fl, const std::string& axis_name, const std::string& quantity_name,
              std::vector<double> values, double lo, double hi, int points, bool log_spacing,
              bool range_given) {
    const RunConfig cfg = resolve_config(fl);

    SweepSpec spec;
    if (cfg.sweep) spec = *cfg.sweep;
    if (!axis_name.empty()) spec.axis = parse_sweep_axis(axis_name);
    if (!quantity_name.empty()) spec.quantity = parse_sweep_quantity(quantity_name);
    if (!values.empty()) spec.values = std::move(values);
    else if (range_given) spec.values = make_range(lo, hi, points, log_spacing);

    const SweepEngine engine(to_cavity_params(cfg), to_engine_settings(cfg));
    const auto rows = engine.run(spec);

    Json j;
    j["axis"] = to_string(spec.axis);
    j["quantity"] = to_string(spec.quantity);
    Json arr = Json::array();
    for (const auto& r : rows) {
        Json row;
        row["axis_value"] = r.axis_value;
        row["value"] = r.value;
        arr.push_back(row);
    }
    j["rows"] = arr;

    emit_effective_config(cfg);
    if (want_csv(cfg)) emit(cfg, "sweep.csv", sweep_csv(rows, spec.axis, spec.quantity));
    if (want_json(cfg)) emit(cfg, "sweep.json", dump_json(j));
    return 0;
}

void print_error_json(const std::string& kind, const std::string& message,
                      const std::vector<std::string>& violations) {
    Json j;
    j["error"] = kind;
    j["message"] = message;
    j["violations"] = violations;
    std::cerr << dump_json(j);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qnd: cavity-assisted non-destructive photon detection analysis.\n"
                 "Simulates the stored-probe cross-phase, phase-space and homodyne\n"
                 "observables, discrimination statistics, signal loss and time-bin\n"
                 "fidelity, and emits plot-ready CSV/JSON files."};
    app.require_subcommand(1);

    CommonFlags fl;
    int rc = 0;

    auto* qfunc = app.add_subcommand(
        "qfunc", "phase-space quasi-probability map of the probe state (initial or cross-phased)");
    add_common(qfunc, fl);
    std::string which = "final";
    qfunc->add_option("--which", which, "initial or final probe state")
        ->check(CLI::IsMember({"initial", "final"}));
    qfunc->callback([&] { rc = run_qfunc(fl, which); });

    auto* quad = app.add_subcommand(
        "quad", "homodyne quadrature densities of the probe with and without the signal photon");
    add_common(quad, fl);
    quad->callback([&] { rc = run_quad(fl); });

    auto* roc = app.add_subcommand(
        "roc", "success-rate table over probe photon numbers and false-positive budgets");
    add_common(roc, fl);
    std::vector<double> roc_np, roc_eps;
    roc->add_option("--n-probe", roc_np, "probe photon numbers (default 10,30,50)")->delimiter(',');
    roc->add_option("--epsilon", roc_eps, "false-positive budgets (default 0.001,0.01)")
        ->delimiter(',');
    roc->callback([&] { rc = run_roc(fl, roc_np, roc_eps); });

    auto* overlap = app.add_subcommand(
        "overlap", "overlap of initial and cross-phased probe along chi or the photon number");
    add_common(overlap, fl);
    std::string ov_axis = "chi";
    double ov_lo = 0, ov_hi = 0;
    int ov_points = 0;
    bool ov_log = false;
    overlap->add_option("--axis", ov_axis, "chi (coefficients of 1/sqrt(n_probe)) or n_probe")
        ->check(CLI::IsMember({"chi", "n_probe"}));
    auto* o_lo = overlap->add_option("--min", ov_lo, "axis start");
    auto* o_hi = overlap->add_option("--max", ov_hi, "axis end");
    auto* o_pts = overlap->add_option("--points", ov_points, "sample count");
    overlap->add_flag("--log", ov_log, "log-spaced samples");
    overlap->callback([&] {
        rc = run_overlap(fl, ov_axis, ov_lo, ov_hi, ov_points, ov_log, o_lo->count() > 0,
                         o_hi->count() > 0, o_pts->count() > 0);
    });

    auto* loss = app.add_subcommand(
        "loss", "signal loss report: dominant term, series, exact reflection, Purcell-combined");
    add_common(loss, fl);
    loss->callback([&] { rc = run_loss(fl); });

    auto* fidelity = app.add_subcommand(
        "fidelity", "time-bin qubit output fidelity under storage-state decay");
    add_common(fidelity, fl);
    std::string fi_gamma, fi_t;
    double fi_chi_coef = 1.0;
    fidelity->add_option("--gamma", fi_gamma, "storage decay rate, unit-tagged (e.g. 100kHz)");
    fidelity->add_option("--T", fi_t, "time-bin separation, unit-tagged (e.g. 1us)");
    fidelity->add_option("--chi-coef", fi_chi_coef, "chi = coef/sqrt(n_probe); default 1");
    fidelity->callback([&] { rc = run_fidelity(fl, fi_gamma, fi_t, fi_chi_coef); });

    auto* feas = app.add_subcommand(
        "feasibility", "f-factor, loss and success composition for the configured cavity");
    add_common(feas, fl);
    feas->callback([&] { rc = run_feasibility(fl); });

    auto* sweep = app.add_subcommand("sweep", "tabulate one quantity along one parameter axis");
    add_common(sweep, fl);
    std::string sw_axis, sw_quantity;
    std::vector<double> sw_values;
    double sw_lo = 0, sw_hi = 0;
    int sw_points = 0;
    bool sw_log = false;
    sweep->add_option("--axis", sw_axis, "n_probe, chi, delta_over_kappa, epsilon or multipass_m");
    sweep->add_option("--quantity", sw_quantity, "overlap_sq, success, loss, fidelity or f");
    sweep->add_option("--values", sw_values, "explicit axis values")->delimiter(',');
    auto* s_lo = sweep->add_option("--min", sw_lo, "axis start");
    auto* s_hi = sweep->add_option("--max", sw_hi, "axis end");
    auto* s_pts = sweep->add_option("--points", sw_points, "sample count");
    sweep->add_flag("--log", sw_log, "log-spaced samples");
    sweep->callback([&] {
        const bool range_given = s_lo->count() && s_hi->count() && s_pts->count();
        rc = run_sweep(fl, sw_axis, sw_quantity, sw_values, sw_lo, sw_hi, sw_points, sw_log,
                       range_given);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        print_error_json("cli", e.what(), {});
        return e.get_exit_code() == 0 ? 1 : e.get_exit_code();
    } catch (const qnd::ConfigError& e) {
        print_error_json("config", e.what(), e.violations());
        return 1;
    } catch (const std::exception& e) {
        print_error_json("runtime", e.what(), {});
        return 1;
    }
    return rc;
}
