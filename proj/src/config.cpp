#include "qnd/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qnd/errors.hpp"

namespace qnd {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

bool parse_double(const std::string& s, double& out) {
    const std::string t = trim(s);
    const char* first = t.data();
    const char* last = t.data() + t.size();
    auto res = std::from_chars(first, last, out);
    return res.ec == std::errc() && res.ptr == last;
}

struct NumberUnit {
    double value = 0.0;
    std::string unit;
    bool ok = false;
};

// Split "8 MHz" / "100kHz" / "50.27 Mrad/s" into numeric value and unit token.
NumberUnit split_number_unit(const std::string& text) {
    NumberUnit r;
    const std::string t = trim(text);
    const char* first = t.data();
    const char* last = t.data() + t.size();
    auto res = std::from_chars(first, last, r.value);
    if (res.ec != std::errc()) return r;
    r.unit = trim(std::string(res.ptr, last));
    r.ok = true;
    return r;
}

struct UnitScale {
    const char* suffix;
    double factor;
};

double parse_tagged(const std::string& text, const UnitScale* units, std::size_t count,
                    const char* kind) {
    const NumberUnit nu = split_number_unit(text);
    if (!nu.ok)
        throw ConfigError("cannot parse " + std::string(kind) + " value '" + text + "'",
                          {std::string(kind) + " values need a numeric part and a unit suffix"});
    if (nu.unit.empty())
        throw ConfigError("missing unit on " + std::string(kind) + " value '" + text + "'",
                          {std::string(kind) + " values must carry an explicit unit suffix"});
    for (std::size_t i = 0; i < count; ++i)
        if (nu.unit == units[i].suffix) return nu.value * units[i].factor;
    throw ConfigError("unknown " + std::string(kind) + " unit '" + nu.unit + "'", {});
}

const UnitScale kAngularUnits[] = {
    {"Hz", kTwoPi},          {"kHz", kTwoPi * 1e3},   {"MHz", kTwoPi * 1e6},
    {"GHz", kTwoPi * 1e9},   {"THz", kTwoPi * 1e12},  {"rad/s", 1.0},
    {"krad/s", 1e3},         {"Mrad/s", 1e6},         {"Grad/s", 1e9},
};

// Storage decay rates: Hz-family tags are plain 1/s (this is the reading under
// which the published time-bin fidelities reproduce; see README).
const UnitScale kDecayUnits[] = {
    {"Hz", 1.0},  {"kHz", 1e3}, {"MHz", 1e6}, {"GHz", 1e9}, {"1/s", 1.0},
};

const UnitScale kTimeUnits[] = {
    {"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}, {"ns", 1e-9},
};

const UnitScale kLengthUnits[] = {
    {"m", 1.0}, {"mm", 1e-3}, {"um", 1e-6}, {"nm", 1e-9}, {"pm", 1e-12},
};

const UnitScale kAreaUnits[] = {
    {"m^2", 1.0}, {"mm^2", 1e-6}, {"um^2", 1e-12}, {"nm^2", 1e-18},
};

const UnitScale kVolumeUnits[] = {
    {"m^3", 1.0}, {"mm^3", 1e-9}, {"um^3", 1e-18}, {"nm^3", 1e-27},
};

std::string fmt_exact(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

double parse_angular_rate(const std::string& text) {
    return parse_tagged(text, kAngularUnits, std::size(kAngularUnits), "rate");
}

double parse_decay_rate(const std::string& text) {
    return parse_tagged(text, kDecayUnits, std::size(kDecayUnits), "decay rate");
}

double parse_time(const std::string& text) {
    return parse_tagged(text, kTimeUnits, std::size(kTimeUnits), "time");
}

double parse_length(const std::string& text) {
    return parse_tagged(text, kLengthUnits, std::size(kLengthUnits), "length");
}

double parse_area(const std::string& text) {
    return parse_tagged(text, kAreaUnits, std::size(kAreaUnits), "area");
}

RunConfig default_config() {
    RunConfig c;
    c.g = kTwoPi * 8e6;
    c.kappa = kTwoPi * 30e6;
    c.delta = kTwoPi * 100e6;
    c.gamma = kTwoPi * 1e3;
    c.gamma_r = kTwoPi * 1e3;
    c.gamma_s = 340.0;
    c.gamma_h = 1e5;
    c.n_atoms = 1e5;
    c.n_probe = 6000.0;
    c.eta_r = 0.5;
    return c;
}

namespace {

struct GeometryDraft {
    std::optional<double> wavelength, refractive_index, mode_area, mode_length, finesse,
        quality_factor, mode_volume;
    bool any() const {
        return wavelength || refractive_index || mode_area || mode_length || finesse ||
               quality_factor || mode_volume;
    }
};

void assign_key(RunConfig& cfg, GeometryDraft& geo, const std::string& key,
                const std::string& value, std::vector<std::string>& errors) {
    auto number = [&](double& slot) {
        double v;
        if (parse_double(value, v))
            slot = v;
        else
            errors.push_back("key '" + key + "': cannot parse number '" + value + "'");
    };
    auto tagged = [&](double& slot, auto parser) {
        try {
            slot = parser(value);
        } catch (const ConfigError& e) {
            errors.push_back("key '" + key + "': " + e.what());
        }
    };
    auto opt_tagged = [&](std::optional<double>& slot, auto parser) {
        try {
            slot = parser(value);
        } catch (const ConfigError& e) {
            errors.push_back("key '" + key + "': " + e.what());
        }
    };
    auto opt_number = [&](std::optional<double>& slot) {
        double v;
        if (parse_double(value, v))
            slot = v;
        else
            errors.push_back("key '" + key + "': cannot parse number '" + value + "'");
    };

    if (key == "g") tagged(cfg.g, parse_angular_rate);
    else if (key == "kappa") tagged(cfg.kappa, parse_angular_rate);
    else if (key == "delta") tagged(cfg.delta, parse_angular_rate);
    else if (key == "gamma") tagged(cfg.gamma, parse_angular_rate);
    else if (key == "gamma_r") tagged(cfg.gamma_r, parse_angular_rate);
    else if (key == "gamma_s") tagged(cfg.gamma_s, parse_decay_rate);
    else if (key == "gamma_h") tagged(cfg.gamma_h, parse_decay_rate);
    else if (key == "n_atoms") number(cfg.n_atoms);
    else if (key == "n_probe") number(cfg.n_probe);
    else if (key == "eta_r") number(cfg.eta_r);
    else if (key == "geometry.wavelength") opt_tagged(geo.wavelength, parse_length);
    else if (key == "geometry.refractive_index") opt_number(geo.refractive_index);
    else if (key == "geometry.mode_area") opt_tagged(geo.mode_area, parse_area);
    else if (key == "geometry.mode_length") opt_tagged(geo.mode_length, parse_length);
    else if (key == "geometry.finesse") opt_number(geo.finesse);
    else if (key == "geometry.quality_factor") opt_number(geo.quality_factor);
    else if (key == "geometry.mode_volume")
        opt_tagged(geo.mode_volume, [](const std::string& t) {
            return parse_tagged(t, kVolumeUnits, std::size(kVolumeUnits), "volume");
        });
    else if (key == "window_sigmas") number(cfg.window_sigmas);
    else if (key == "q_grid_points") {
        double v;
        if (parse_double(value, v)) cfg.q_grid_points = static_cast<int>(v);
        else errors.push_back("key 'q_grid_points': cannot parse number '" + value + "'");
    } else if (key == "quad_base_points") {
        double v;
        if (parse_double(value, v)) cfg.quad_base_points = static_cast<int>(v);
        else errors.push_back("key 'quad_base_points': cannot parse number '" + value + "'");
    } else if (key == "quadrature_scale") {
        if (value == "1") cfg.quadrature_scale = 1.0;
        else if (value == "sqrt2") cfg.quadrature_scale = std::sqrt(2.0);
        else errors.push_back("key 'quadrature_scale': expected '1' or 'sqrt2', got '" + value + "'");
    } else if (key == "loss_coefficient") {
        if (value == "rounded") cfg.loss_exact_coefficient = false;
        else if (value == "exact") cfg.loss_exact_coefficient = true;
        else errors.push_back("key 'loss_coefficient': expected 'rounded' or 'exact', got '" + value + "'");
    } else if (key == "epsilon") number(cfg.epsilon);
    else if (key == "bin_separation") tagged(cfg.bin_separation, parse_time);
    else if (key == "multipass_m") {
        double v;
        if (parse_double(value, v)) cfg.multipass_m = static_cast<int>(v);
        else errors.push_back("key 'multipass_m': cannot parse number '" + value + "'");
    } else if (key == "n_probe_eval_cap") number(cfg.n_probe_eval_cap);
    else if (key == "chi_rule") {
        std::istringstream in(value);
        std::string kind;
        in >> kind;
        if (kind == "params") {
            cfg.chi_from_params = true;
        } else if (kind == "scaled" || kind == "fixed") {
            double v;
            std::string rest;
            std::getline(in, rest);
            if (!parse_double(rest, v)) {
                errors.push_back("key 'chi_rule': expected a coefficient after '" + kind + "'");
            } else {
                cfg.chi_from_params = false;
                cfg.chi_rule.kind = kind == "scaled" ? ChiRule::Kind::scaled : ChiRule::Kind::fixed;
                cfg.chi_rule.value = v;
            }
        } else {
            errors.push_back("key 'chi_rule': expected 'params', 'scaled <c>' or 'fixed <chi>'");
        }
    } else if (key == "sweep.axis") {
        try {
            if (!cfg.sweep) cfg.sweep.emplace();
            cfg.sweep->axis = parse_sweep_axis(value);
        } catch (const ConfigError& e) {
            errors.push_back(e.what());
        }
    } else if (key == "sweep.quantity") {
        try {
            if (!cfg.sweep) cfg.sweep.emplace();
            cfg.sweep->quantity = parse_sweep_quantity(value);
        } catch (const ConfigError& e) {
            errors.push_back(e.what());
        }
    } else if (key == "sweep.values") {
        if (!cfg.sweep) cfg.sweep.emplace();
        cfg.sweep->values.clear();
        std::istringstream in(value);
        std::string item;
        while (std::getline(in, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            double v;
            if (parse_double(item, v)) cfg.sweep->values.push_back(v);
            else errors.push_back("key 'sweep.values': cannot parse '" + item + "'");
        }
    } else if (key == "out_dir") {
        cfg.out_dir = value;
    } else if (key == "format") {
        if (value == "csv") cfg.format = OutputFormat::csv;
        else if (value == "json") cfg.format = OutputFormat::json;
        else if (value == "both") cfg.format = OutputFormat::both;
        else errors.push_back("key 'format': expected csv, json or both");
    } else {
        errors.push_back("unknown key '" + key + "'");
    }
}

} // namespace

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg = default_config();
    GeometryDraft geo;
    std::vector<std::string> errors;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            errors.push_back("line " + std::to_string(lineno) + ": expected 'key = value'");
            continue;
        }
        assign_key(cfg, geo, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), errors);
    }

    if (geo.any()) {
        const bool core = geo.wavelength && geo.refractive_index && geo.mode_area &&
                          geo.mode_length && geo.finesse;
        if (!core) {
            errors.push_back("geometry block needs wavelength, refractive_index, mode_area, "
                             "mode_length and finesse");
        } else {
            Geometry g;
            g.wavelength = *geo.wavelength;
            g.refractive_index = *geo.refractive_index;
            g.mode_area = *geo.mode_area;
            g.mode_length = *geo.mode_length;
            g.finesse = *geo.finesse;
            g.quality_factor = geo.quality_factor
                                   ? *geo.quality_factor
                                   : g.finesse * 2.0 * g.mode_length /
                                         (g.wavelength / g.refractive_index);
            g.mode_volume = geo.mode_volume ? *geo.mode_volume : g.mode_area * g.mode_length;
            cfg.geometry = g;
        }
    }

    if (!errors.empty()) throw ConfigError("configuration has errors", errors);
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'", {});
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream o;
    o << "# qndsim run configuration (canonical form; values round-trip exactly)\n";
    o << "g = " << fmt_exact(cfg.g) << " rad/s\n";
    o << "kappa = " << fmt_exact(cfg.kappa) << " rad/s\n";
    o << "delta = " << fmt_exact(cfg.delta) << " rad/s\n";
    o << "gamma = " << fmt_exact(cfg.gamma) << " rad/s\n";
    o << "gamma_r = " << fmt_exact(cfg.gamma_r) << " rad/s\n";
    o << "gamma_s = " << fmt_exact(cfg.gamma_s) << " 1/s\n";
    o << "gamma_h = " << fmt_exact(cfg.gamma_h) << " 1/s\n";
    o << "n_atoms = " << fmt_exact(cfg.n_atoms) << "\n";
    o << "n_probe = " << fmt_exact(cfg.n_probe) << "\n";
    o << "eta_r = " << fmt_exact(cfg.eta_r) << "\n";
    if (cfg.geometry) {
        const auto& g = *cfg.geometry;
        o << "geometry.wavelength = " << fmt_exact(g.wavelength) << " m\n";
        o << "geometry.refractive_index = " << fmt_exact(g.refractive_index) << "\n";
        o << "geometry.mode_area = " << fmt_exact(g.mode_area) << " m^2\n";
        o << "geometry.mode_length = " << fmt_exact(g.mode_length) << " m\n";
        o << "geometry.finesse = " << fmt_exact(g.finesse) << "\n";
        o << "geometry.quality_factor = " << fmt_exact(g.quality_factor) << "\n";
        o << "geometry.mode_volume = " << fmt_exact(g.mode_volume) << " m^3\n";
    }
    o << "window_sigmas = " << fmt_exact(cfg.window_sigmas) << "\n";
    o << "q_grid_points = " << cfg.q_grid_points << "\n";
    o << "quad_base_points = " << cfg.quad_base_points << "\n";
    o << "quadrature_scale = " << (cfg.quadrature_scale == 1.0 ? "1" : "sqrt2") << "\n";
    o << "loss_coefficient = " << (cfg.loss_exact_coefficient ? "exact" : "rounded") << "\n";
    o << "epsilon = " << fmt_exact(cfg.epsilon) << "\n";
    o << "bin_separation = " << fmt_exact(cfg.bin_separation) << " s\n";
    o << "multipass_m = " << cfg.multipass_m << "\n";
    o << "n_probe_eval_cap = " << fmt_exact(cfg.n_probe_eval_cap) << "\n";
    if (cfg.chi_from_params)
        o << "chi_rule = params\n";
    else
        o << "chi_rule = " << (cfg.chi_rule.kind == ChiRule::Kind::scaled ? "scaled " : "fixed ")
          << fmt_exact(cfg.chi_rule.value) << "\n";
    if (cfg.sweep) {
        o << "sweep.axis = " << to_string(cfg.sweep->axis) << "\n";
        o << "sweep.quantity = " << to_string(cfg.sweep->quantity) << "\n";
        o << "sweep.values = ";
        for (std::size_t i = 0; i < cfg.sweep->values.size(); ++i) {
            if (i) o << ", ";
            o << fmt_exact(cfg.sweep->values[i]);
        }
        o << "\n";
    }
    o << "out_dir = " << cfg.out_dir << "\n";
    o << "format = "
      << (cfg.format == OutputFormat::csv ? "csv"
                                          : cfg.format == OutputFormat::json ? "json" : "both")
      << "\n";
    return o.str();
}

std::vector<std::string> validate(const RunConfig& cfg) {
    std::vector<std::string> v = to_cavity_params(cfg).validate();
    if (!(cfg.gamma_s >= 0.0)) v.push_back("gamma_s must be >= 0");
    if (!(cfg.gamma_h >= 0.0)) v.push_back("gamma_h must be >= 0");
    if (!(cfg.window_sigmas >= 1.0)) v.push_back("window_sigmas must be >= 1");
    if (cfg.q_grid_points < 11) v.push_back("q_grid_points must be >= 11");
    if (cfg.quad_base_points < 101) v.push_back("quad_base_points must be >= 101");
    if (cfg.quadrature_scale != 1.0 && std::fabs(cfg.quadrature_scale - std::sqrt(2.0)) > 1e-12)
        v.push_back("quadrature_scale must be 1 or sqrt2");
    if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) v.push_back("epsilon must lie in (0, 1)");
    if (!(cfg.bin_separation >= 0.0)) v.push_back("bin_separation must be >= 0");
    if (cfg.multipass_m < 1) v.push_back("multipass_m must be >= 1");
    if (!(cfg.n_probe_eval_cap >= 1.0)) v.push_back("n_probe_eval_cap must be >= 1");
    if (!cfg.chi_from_params && !(cfg.chi_rule.value > 0.0))
        v.push_back("chi_rule coefficient must be > 0");
    if (cfg.out_dir.empty()) v.push_back("out_dir must not be empty");
    return v;
}

CavityParams to_cavity_params(const RunConfig& cfg) {
    CavityParams p;
    p.g = cfg.g;
    p.kappa = cfg.kappa;
    p.delta = cfg.delta;
    p.gamma = cfg.gamma;
    p.gamma_r = cfg.gamma_r;
    p.n_atoms = cfg.n_atoms;
    p.n_probe = cfg.n_probe;
    p.eta_r = cfg.eta_r;
    p.geometry = cfg.geometry;
    return p;
}

EngineSettings to_engine_settings(const RunConfig& cfg) {
    EngineSettings s;
    s.epsilon = cfg.epsilon;
    s.window_sigmas = cfg.window_sigmas;
    s.quad_scale = cfg.quadrature_scale;
    s.exact_coefficient = cfg.loss_exact_coefficient;
    s.multipass_m = cfg.multipass_m;
    s.gamma_storage = cfg.gamma_s;
    s.bin_separation = cfg.bin_separation;
    s.chi_rule = cfg.chi_rule;
    s.chi_from_params = cfg.chi_from_params;
    s.n_probe_eval_cap = cfg.n_probe_eval_cap;
    return s;
}

} // namespace qnd
