#include "llocv/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace llocv {

std::string fmt_num(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string csv_header() {
    return "length_km,alpha_low,i_ab,chi_be,chi_be_actual,key_rate,k_eff,"
           "lambda1,lambda2,lambda3,lambda4,lambda5,xi_error,xi_tole,chi_t,"
           "key_rate_conservative";
}

static std::string join_row(std::initializer_list<double> vals) {
    std::ostringstream out;
    bool first = true;
    for (double v : vals) {
        if (!first) out << ',';
        out << fmt_num(v);
        first = false;
    }
    return out.str();
}

std::string csv_row(double length_km, double alpha_low, const AttackReport& rep,
                    double key_rate_conservative) {
    const EigenSet& e = rep.keyrate.eigenset;
    return join_row({length_km, alpha_low, rep.keyrate.i_ab, rep.keyrate.chi_be,
                     rep.chi_be_actual, rep.keyrate.key_rate, rep.k_eff, e.lambda1,
                     e.lambda2, e.lambda3, e.lambda4, e.lambda5,
                     rep.keyrate.noise.xi_error, rep.state.xi_tole,
                     rep.keyrate.noise.chi_total, key_rate_conservative});
}

std::string csv_row(double length_km, double alpha_low, const KeyRateReport& rep) {
    const EigenSet& e = rep.eigenset;
    return join_row({length_km, alpha_low, rep.i_ab, rep.chi_be, rep.chi_be,
                     rep.key_rate, 0.0, e.lambda1, e.lambda2, e.lambda3, e.lambda4,
                     e.lambda5, rep.noise.xi_error, 0.0, rep.noise.chi_total,
                     rep.key_rate});
}

std::string noise_budget_csv_header() {
    return "v_drift,v_error,xi_drift,xi_error,xi_phase,xi_total,chi_line,chi_het,"
           "chi_total,fixed_point_iterations";
}

std::string noise_budget_csv_row(const NoiseBudget& b) {
    std::ostringstream out;
    out << fmt_num(b.v_drift) << ',' << fmt_num(b.v_error) << ',' << fmt_num(b.xi_drift)
        << ',' << fmt_num(b.xi_error) << ',' << fmt_num(b.xi_phase) << ','
        << fmt_num(b.xi_total) << ',' << fmt_num(b.chi_line) << ',' << fmt_num(b.chi_het)
        << ',' << fmt_num(b.chi_total) << ',' << b.fixed_point_iterations;
    return out.str();
}

std::string noise_budget_json(const NoiseBudget& b) {
    nlohmann::json j;
    j["v_drift"] = b.v_drift;
    j["v_error"] = b.v_error;
    j["xi_drift"] = b.xi_drift;
    j["xi_error"] = b.xi_error;
    j["xi_phase"] = b.xi_phase;
    j["xi_total"] = b.xi_total;
    j["chi_line"] = b.chi_line;
    j["chi_het"] = b.chi_het;
    j["chi_total"] = b.chi_total;
    j["fixed_point_iterations"] = b.fixed_point_iterations;
    return j.dump(2);
}

std::string distance_summary_json(double alpha_low, std::optional<double> critical_km,
                                  std::optional<double> null_key_km) {
    nlohmann::json j;
    j["alpha_low"] = alpha_low;
    if (critical_km)
        j["critical_km"] = *critical_km;
    else
        j["critical_km"] = nullptr;
    if (null_key_km)
        j["null_key_km"] = *null_key_km;
    else
        j["null_key_km"] = nullptr;
    return j.dump(2);
}

} // namespace llocv
