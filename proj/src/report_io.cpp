#include "qnd/report_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace qnd {

std::string format_sig12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

void dump_value(const Json& j, std::string& out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string pad_in(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            std::size_t i = 0;
            for (auto it = j.begin(); it != j.end(); ++it, ++i) {
                out += pad_in + Json(it.key()).dump() + ": ";
                dump_value(it.value(), out, indent + 1);
                out += i + 1 < j.size() ? ",\n" : "\n";
            }
            out += pad + "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                out += pad_in;
                dump_value(j[i], out, indent + 1);
                out += i + 1 < j.size() ? ",\n" : "\n";
            }
            out += pad + "]";
            return;
        }
        case Json::value_t::number_float:
            out += format_sig12(j.get<double>());
            return;
        default:
            out += j.dump();
            return;
    }
}

} // namespace

std::string dump_json(const Json& j) {
    std::string out;
    dump_value(j, out, 0);
    out += "\n";
    return out;
}

Csv::Csv(std::vector<std::string> header) : columns_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) body_ += ',';
        body_ += header[i];
    }
    body_ += '\n';
}

void Csv::add_row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_sig12(v));
    add_row(cells);
}

void Csv::add_row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) throw std::logic_error("csv row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) body_ += ',';
        body_ += cells[i];
    }
    body_ += '\n';
}

std::string Csv::str() const { return body_; }

std::string qgrid_csv(const QGrid& grid) {
    Csv csv({"re_alpha", "im_alpha", "q"});
    for (std::size_t iy = 0; iy < grid.y_axis.size(); ++iy)
        for (std::size_t ix = 0; ix < grid.x_axis.size(); ++ix)
            csv.add_row({grid.x_axis[ix], grid.y_axis[iy], grid.at(iy, ix)});
    return csv.str();
}

std::string density_csv(const QuadratureDensity& d) {
    Csv csv({"x", "density"});
    for (std::size_t i = 0; i < d.x_axis.size(); ++i) csv.add_row({d.x_axis[i], d.density[i]});
    return csv.str();
}

std::string profile_csv(const PhaseProfile& p) {
    Csv csv({"n", "phi_n", "theta_n"});
    for (int n = p.n_min; n <= p.n_top(); ++n)
        csv.add_row({static_cast<double>(n), p.phi_at(n), p.theta_at(n)});
    return csv.str();
}

namespace {

const std::vector<std::string> kReportHeader = {
    "n_probe", "chi", "epsilon", "cutoff", "overlap_sq", "max_success_bound", "success"};

} // namespace

std::string roc_csv(const std::vector<DiscriminationReport>& rows) {
    Csv csv(kReportHeader);
    for (const auto& r : rows)
        csv.add_row({r.n_probe, r.chi, r.false_positive, r.cutoff, r.overlap_sq,
                     r.max_success_bound, r.success});
    return csv.str();
}

std::string overlap_csv(const std::vector<OverlapSample>& rows, OverlapAxis axis,
                        double fixed_n_probe, const ChiRule& rule) {
    // Same fixed column set as the roc table; discrimination-only columns are
    // left empty for sweep samples.
    Csv csv(kReportHeader);
    for (const auto& r : rows) {
        const double np = axis == OverlapAxis::chi ? fixed_n_probe : r.axis_value;
        const double chi = axis == OverlapAxis::chi ? r.axis_value : rule.at(r.axis_value);
        csv.add_row(std::vector<std::string>{format_sig12(np), format_sig12(chi), "", "",
                                             format_sig12(r.overlap_sq),
                                             format_sig12(1.0 - r.overlap_sq), ""});
    }
    return csv.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows, SweepAxis axis, SweepQuantity q) {
    Csv csv({to_string(axis), to_string(q)});
    for (const auto& r : rows) csv.add_row({r.axis_value, r.value});
    return csv.str();
}

Json to_json(const DiscriminationReport& r) {
    Json j;
    j["n_probe"] = r.n_probe;
    j["chi"] = r.chi;
    j["epsilon"] = r.false_positive;
    j["cutoff"] = r.cutoff;
    j["overlap_sq"] = r.overlap_sq;
    j["max_success_bound"] = r.max_success_bound;
    j["success"] = r.success;
    return j;
}

Json to_json(const LossReport& r) {
    Json j;
    j["zeta"] = r.zeta;
    j["alpha_series"] = r.alpha_series;
    j["reflection_exact_re"] = r.reflection_exact.real();
    j["reflection_exact_im"] = r.reflection_exact.imag();
    j["loss_exact"] = r.loss_exact;
    if (r.purcell)
        j["purcell"] = *r.purcell;
    else
        j["purcell"] = nullptr;
    j["combined_loss"] = r.combined_loss;
    j["multipass_m"] = r.multipass_m;
    j["multipass_loss"] = r.multipass_loss;
    return j;
}

Json to_json(const FidelityReport& r) {
    Json j;
    j["gamma_storage"] = r.gamma_storage;
    j["bin_separation"] = r.bin_separation;
    j["delta_theta_max"] = r.delta_theta_max;
    j["fidelity"] = r.fidelity;
    return j;
}

Json to_json(const FeasibilityReport& r) {
    Json j;
    j["f"] = r.f;
    if (r.f_geometric)
        j["f_geometric"] = *r.f_geometric;
    else
        j["f_geometric"] = nullptr;
    j["loss"] = r.loss;
    j["epsilon"] = r.epsilon;
    j["n_probe_eval"] = r.n_probe_eval;
    j["success_state_level"] = r.success_state_level;
    j["success_total"] = r.success_total;
    j["warnings"] = r.warnings;
    return j;
}

void write_file(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
        if (ec) throw std::runtime_error("cannot create directory '" + p.parent_path().string() +
                                         "': " + ec.message());
    }
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

} // namespace qnd
