#include "dupdel/report_io.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace dupdel {

namespace {

nlohmann::json optional_json(const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::optional<double> optional_from(const nlohmann::json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

}  // namespace

nlohmann::json report_to_json(const ComparisonReport& r) {
    nlohmann::json errors = nlohmann::json::array();
    for (const auto& [k, err] : r.per_k_errors) errors.push_back({k, err});
    return {{"m", r.m},
            {"tv_distance", r.tv_distance},
            {"fitted_exponent", optional_json(r.fitted_exponent)},
            {"fitted_rate", optional_json(r.fitted_rate)},
            {"growth_ratio", r.growth_ratio},
            {"per_k_errors", std::move(errors)}};
}

ComparisonReport report_from_json(const nlohmann::json& j) {
    try {
        ComparisonReport r;
        r.m = j.at("m").get<std::uint64_t>();
        r.tv_distance = j.at("tv_distance").get<double>();
        r.fitted_exponent = optional_from(j.at("fitted_exponent"));
        r.fitted_rate = optional_from(j.at("fitted_rate"));
        r.growth_ratio = j.at("growth_ratio").get<double>();
        for (const auto& entry : j.at("per_k_errors")) {
            if (!entry.is_array() || entry.size() != 2) {
                throw std::invalid_argument("per_k_errors entries must be [k, error] pairs");
            }
            r.per_k_errors.emplace_back(entry[0].get<std::size_t>(), entry[1].get<double>());
        }
        if (r.tv_distance < 0.0 || r.tv_distance > 1.0) {
            throw std::invalid_argument("tv_distance must lie in [0, 1]");
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("report JSON: ") + e.what());
    }
}

void write_reports_csv(std::ostream& out, std::span<const std::vector<ComparisonReport>> replicas) {
    out.precision(std::numeric_limits<double>::max_digits10);
    out << "replica,m,k,per_k_error,tv_distance,fitted_exponent,fitted_rate,growth_ratio\n";
    for (std::size_t i = 0; i < replicas.size(); ++i) {
        for (const auto& r : replicas[i]) {
            for (const auto& [k, err] : r.per_k_errors) {
                out << i << ',' << r.m << ',' << k << ',' << err << ',' << r.tv_distance << ',';
                if (r.fitted_exponent) out << *r.fitted_exponent;
                out << ',';
                if (r.fitted_rate) out << *r.fitted_rate;
                out << ',' << r.growth_ratio << '\n';
            }
        }
    }
}

}  // namespace dupdel
