#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qnd/config.hpp"
#include "qnd/discrimination.hpp"
#include "qnd/loss_fidelity.hpp"
#include "qnd/param_engine.hpp"

namespace qnd {

using Json = nlohmann::ordered_json;

/// Fixed float formatting for all emitted files: 12 significant digits,
/// '.' decimal separator, locale-independent.
std::string format_sig12(double v);

/// Serialize with format_sig12 applied to every float, 2-space indent, LF.
std::string dump_json(const Json& j);

/// CSV emission: UTF-8, header row, LF line endings, format_sig12 numbers.
class Csv {
public:
    explicit Csv(std::vector<std::string> header);
    void add_row(const std::vector<double>& values);
    void add_row(const std::vector<std::string>& cells);
    std::string str() const;

private:
    std::string body_;
    std::size_t columns_;
};

std::string qgrid_csv(const QGrid& grid);                // re_alpha, im_alpha, q
std::string density_csv(const QuadratureDensity& d);     // x, density
std::string profile_csv(const PhaseProfile& p);          // n, phi_n, theta_n
std::string roc_csv(const std::vector<DiscriminationReport>& rows);
std::string overlap_csv(const std::vector<OverlapSample>& rows, OverlapAxis axis,
                        double fixed_n_probe, const ChiRule& rule);
std::string sweep_csv(const std::vector<SweepRow>& rows, SweepAxis axis, SweepQuantity q);

Json to_json(const DiscriminationReport& r);
Json to_json(const LossReport& r);
Json to_json(const FidelityReport& r);
Json to_json(const FeasibilityReport& r);

void write_file(const std::string& path, const std::string& content);

} // namespace qnd
