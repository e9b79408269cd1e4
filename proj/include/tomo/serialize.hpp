#pragma once

#include "tomo/ewv.hpp"
#include "tomo/optimize.hpp"
#include "tomo/povm.hpp"
#include "tomo/simulate.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>

namespace tomo {

/// Scheme wire format:
///   {"dimension": d,
///    "groups": [{"total_counts": n,
///                "operators": [{"re": [[..]], "im": [[..]], "alpha": a}]}]}
/// with matrices row-major.
nlohmann::json scheme_to_json(const Scheme& scheme);
Scheme scheme_from_json(const nlohmann::json& j);

nlohmann::json ewv_report_to_json(const EwvReport& report, double lower_bound,
                                  std::optional<bool> passes_sic = std::nullopt);
nlohmann::json sic_report_to_json(const SicStructureReport& report);
nlohmann::json trial_report_to_json(const TrialReport& report);
nlohmann::json average_comparison_to_json(const AverageComparison& cmp);
nlohmann::json scenario_a_to_json(const ScenarioAResult& result);
nlohmann::json scenario_b_to_json(const ScenarioBResult& result, bool include_trace);

/// Row-major CSV with 17 significant digits and '\n' line endings.
void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m);
void write_vector_csv(std::ostream& out, const Eigen::VectorXd& v);

/// Angles are plain radians ("2.199") or multiples of pi ("0.7pi").
double parse_angle(const std::string& text);

} // namespace tomo
