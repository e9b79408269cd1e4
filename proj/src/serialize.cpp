#include "tomo/serialize.hpp"

#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace tomo {

namespace {

nlohmann::json real_matrix_rows(const Eigen::MatrixXcd& m, bool imag) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(imag ? m(i, j).imag() : m(i, j).real());
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::json vector_json(const Eigen::VectorXd& v) {
    nlohmann::json out = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

std::string format_17g(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

} // namespace

nlohmann::json scheme_to_json(const Scheme& scheme) {
    nlohmann::json j;
    j["dimension"] = scheme.dim;
    j["groups"] = nlohmann::json::array();
    for (const auto& g : scheme.groups) {
        nlohmann::json group;
        group["total_counts"] = g.total_counts;
        group["operators"] = nlohmann::json::array();
        for (const auto& op : g.operators) {
            nlohmann::json o;
            o["re"] = real_matrix_rows(op.matrix, false);
            o["im"] = real_matrix_rows(op.matrix, true);
            o["alpha"] = op.alpha;
            group["operators"].push_back(std::move(o));
        }
        j["groups"].push_back(std::move(group));
    }
    return j;
}

Scheme scheme_from_json(const nlohmann::json& j) {
    Scheme scheme;
    scheme.dim = j.at("dimension").get<int>();
    for (const auto& group : j.at("groups")) {
        PovmGroup g;
        g.total_counts = group.at("total_counts").get<double>();
        for (const auto& o : group.at("operators")) {
            const auto& re = o.at("re");
            const auto& im = o.at("im");
            const auto rows = static_cast<Eigen::Index>(re.size());
            if (rows != scheme.dim)
                throw std::invalid_argument("scheme_from_json: operator rows do not match dimension");
            Eigen::MatrixXcd m(rows, rows);
            for (Eigen::Index r = 0; r < rows; ++r) {
                if (static_cast<Eigen::Index>(re.at(r).size()) != rows ||
                    static_cast<Eigen::Index>(im.at(r).size()) != rows)
                    throw std::invalid_argument("scheme_from_json: operator matrix is not square");
                for (Eigen::Index c = 0; c < rows; ++c)
                    m(r, c) = std::complex<double>(re.at(r).at(c).get<double>(), im.at(r).at(c).get<double>());
            }
            auto op = ProbabilityOperator::from_matrix(std::move(m));
            if (o.contains("alpha") && std::abs(op.alpha - o.at("alpha").get<double>()) > 1e-9 * std::max(1.0, op.alpha))
                throw std::invalid_argument("scheme_from_json: stored alpha does not match operator trace");
            g.operators.push_back(std::move(op));
        }
        scheme.groups.push_back(std::move(g));
    }
    scheme.validate();
    return scheme;
}

nlohmann::json ewv_report_to_json(const EwvReport& report, double lower_bound, std::optional<bool> passes_sic) {
    nlohmann::json j;
    j["value"] = report.value;
    j["lower_bound"] = lower_bound;
    j["n_total"] = report.total_counts;
    j["singular_values"] = vector_json(report.singular_values);
    if (passes_sic.has_value()) j["passes_sic"] = *passes_sic;
    return j;
}

nlohmann::json sic_report_to_json(const SicStructureReport& report) {
    return nlohmann::json{{"equal_alphas", report.equal_alphas},
                          {"off_diagonal_max", report.off_diagonal_max},
                          {"d1", report.d1},
                          {"d1_expected", report.d1_expected},
                          {"rest_min", report.rest_min},
                          {"rest_max", report.rest_max},
                          {"rest_expected", report.rest_expected},
                          {"average_ewv", report.average_ewv},
                          {"lower_bound", report.lower_bound},
                          {"passes", report.passes}};
}

nlohmann::json trial_report_to_json(const TrialReport& report) {
    nlohmann::json j{{"empirical_ewv", report.empirical_ewv},
                     {"standard_error", report.standard_error},
                     {"analytic_ewv", report.analytic_ewv},
                     {"component_variances", vector_json(report.component_variances)},
                     {"trials", report.trials}};
    if (report.has_projected) j["projected_ewv"] = report.projected_ewv;
    return j;
}

nlohmann::json average_comparison_to_json(const AverageComparison& cmp) {
    return nlohmann::json{{"mc_mean", cmp.mc_mean},
                          {"mc_standard_error", cmp.mc_standard_error},
                          {"analytic", cmp.analytic},
                          {"z_score", cmp.z_score},
                          {"samples", cmp.samples}};
}

nlohmann::json scenario_a_to_json(const ScenarioAResult& result) {
    return nlohmann::json{{"beta_grid", vector_json(result.beta_grid)},
                          {"ewv_curve", vector_json(result.ewv_curve)},
                          {"beta_opt", result.beta_opt},
                          {"ewv_opt", result.ewv_opt}};
}

nlohmann::json scenario_b_to_json(const ScenarioBResult& result, bool include_trace) {
    nlohmann::json j;
    j["beta"] = result.beta;
    j["angles"] = nlohmann::json::array();
    for (const auto& pair : result.angles) j["angles"].push_back({pair[0], pair[1]});
    j["ewv_opt"] = result.ewv_opt;
    j["best_restart"] = result.best_restart;
    if (include_trace) {
        nlohmann::json trace = nlohmann::json::array();
        for (const auto& r : result.restarts) {
            nlohmann::json entry;
            entry["start"] = vector_json(r.start);
            entry["value"] = r.value;
            entry["iterations"] = r.iterations;
            trace.push_back(std::move(entry));
        }
        j["trace"] = std::move(trace);
    }
    return j;
}

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << format_17g(m(i, j));
        }
        out << '\n';
    }
}

void write_vector_csv(std::ostream& out, const Eigen::VectorXd& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) out << ',';
        out << format_17g(v(i));
    }
    out << '\n';
}

double parse_angle(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("parse_angle: empty string");
    std::string body = text;
    bool times_pi = false;
    if (body.size() >= 2 && body.substr(body.size() - 2) == "pi") {
        times_pi = true;
        body = body.substr(0, body.size() - 2);
        if (body.empty() || body == "-" || body == "+") body += "1";
    }
    size_t consumed = 0;
    double value;
    try {
        value = std::stod(body, &consumed);
    } catch (const std::exception&) {
        throw std::invalid_argument("parse_angle: cannot parse '" + text + "'");
    }
    if (consumed != body.size()) throw std::invalid_argument("parse_angle: trailing characters in '" + text + "'");
    return times_pi ? value * std::numbers::pi : value;
}

} // namespace tomo
