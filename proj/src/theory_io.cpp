#include "dupdel/theory_io.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

namespace dupdel {

namespace {

std::ostream& full_precision(std::ostream& os) {
    os.precision(std::numeric_limits<double>::max_digits10);
    return os;
}

}  // namespace

std::string theory_header_line(const DegreeDistribution& d) {
    const RegimeParams rp = regime_params(d.p);
    std::ostringstream os;
    full_precision(os);
    os << "# p=" << d.p << " regime=" << to_string(rp.regime);
    if (rp.regime != Regime::Critical) os << " beta=" << rp.beta;
    os << " gamma=" << rp.gamma << " method=" << to_string(d.method) << " K=" << d.truncation()
       << " tol=" << d.tol << " tail_mass=" << d.tail_mass;
    return os.str();
}

void write_theory_csv(std::ostream& out, const DegreeDistribution& d) {
    out << theory_header_line(d) << '\n' << "k,d_k,c_k,asymptotic_k\n";
    full_precision(out);
    for (std::size_t k = 1; k <= d.truncation(); ++k) {
        const double dk = d.d(k);
        const double a = asymptotic(d.p, static_cast<double>(k));
        out << k << ',' << dk << ',' << dk / static_cast<double>(k) << ',';
        if (std::isfinite(a)) out << a;
        out << '\n';
    }
}

nlohmann::json theory_to_json(const DegreeDistribution& d) {
    const RegimeParams rp = regime_params(d.p);
    nlohmann::json j;
    j["p"] = d.p;
    j["regime"] = std::string(to_string(rp.regime));
    j["beta"] = rp.regime == Regime::Critical ? nlohmann::json(nullptr) : nlohmann::json(rp.beta);
    j["gamma"] = rp.gamma;
    j["method"] = std::string(to_string(d.method));
    j["K"] = d.truncation();
    j["tol"] = d.tol;
    j["d0"] = d.d0;
    j["tail_mass"] = d.tail_mass;
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t k = 1; k <= d.truncation(); ++k) {
        const double dk = d.d(k);
        const double a = asymptotic(d.p, static_cast<double>(k));
        rows.push_back({{"k", k},
                        {"d_k", dk},
                        {"c_k", dk / static_cast<double>(k)},
                        {"asymptotic_k", std::isfinite(a) ? nlohmann::json(a) : nlohmann::json(nullptr)}});
    }
    j["rows"] = std::move(rows);
    return j;
}

}  // namespace dupdel
