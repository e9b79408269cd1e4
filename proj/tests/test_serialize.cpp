#include "tomo/measmat.hpp"
#include "tomo/povm.hpp"
#include "tomo/serialize.hpp"
#include "tomo/simulate.hpp"

#include <doctest.h>

#include <numbers>
#include <sstream>

using namespace tomo;

TEST_CASE("scheme json round trip is exact") {
    const Scheme original = ftt_scheme(2.1, 5, 3.25);
    const nlohmann::json j = scheme_to_json(original);
    const Scheme restored = scheme_from_json(j);

    CHECK(restored.dim == original.dim);
    REQUIRE(restored.groups.size() == original.groups.size());
    for (size_t g = 0; g < original.groups.size(); ++g) {
        CHECK(restored.groups[g].total_counts == original.groups[g].total_counts);
        REQUIRE(restored.groups[g].operators.size() == original.groups[g].operators.size());
        for (size_t k = 0; k < original.groups[g].operators.size(); ++k) {
            const auto& a = original.groups[g].operators[k];
            const auto& b = restored.groups[g].operators[k];
            CHECK((a.matrix - b.matrix).cwiseAbs().maxCoeff() == 0.0);
            CHECK(a.alpha == b.alpha);
        }
    }
    // and the text form itself round trips
    CHECK(scheme_to_json(restored) == j);
}

TEST_CASE("scheme json validation") {
    nlohmann::json j = scheme_to_json(pauli_six_scheme(1.0));
    SUBCASE("missing keys") {
        j.erase("groups");
        CHECK_THROWS(scheme_from_json(j));
    }
    SUBCASE("ragged operator matrix") {
        j["groups"][0]["operators"][0]["re"][0] = {1.0};
        CHECK_THROWS_AS(scheme_from_json(j), std::invalid_argument);
    }
    SUBCASE("alpha inconsistent with the trace") {
        j["groups"][0]["operators"][0]["alpha"] = 99.0;
        CHECK_THROWS_AS(scheme_from_json(j), std::invalid_argument);
    }
    SUBCASE("group sum violated") {
        j["groups"][0]["total_counts"] = 2.0;
        CHECK_THROWS_AS(scheme_from_json(j), std::invalid_argument);
    }
}

TEST_CASE("report serializers carry the documented keys") {
    const MeasurementMatrix m = build_matrix(sic_povm_qubit(2.0));
    Eigen::VectorXd mixed(4);
    mixed << 1, 0, 0, 0;
    const EwvReport report = ewv_state(m, mixed);
    const nlohmann::json j = ewv_report_to_json(report, 5.0, true);
    CHECK(j.at("value").get<double>() == doctest::Approx(5.0));
    CHECK(j.at("lower_bound").get<double>() == 5.0);
    CHECK(j.at("n_total").get<double>() == 2.0);
    CHECK(j.at("singular_values").size() == 4);
    CHECK(j.at("passes_sic").get<bool>());

    const nlohmann::json no_sic = ewv_report_to_json(report, 5.0);
    CHECK_FALSE(no_sic.contains("passes_sic"));

    TrialConfig config;
    config.scheme = pauli_six_scheme(1000.0);
    config.true_state = mixed;
    config.trials = 50;
    config.seed = 3;
    const nlohmann::json tj = trial_report_to_json(run_trials(config));
    for (const char* key : {"empirical_ewv", "standard_error", "analytic_ewv", "component_variances", "trials"})
        CHECK(tj.contains(key));
}

TEST_CASE("csv uses seventeen significant digits") {
    Eigen::MatrixXd m(1, 2);
    m << 1.0 / 3.0, 2.0;
    std::ostringstream out;
    write_matrix_csv(out, m);
    CHECK(out.str() == "0.33333333333333331,2\n");

    std::ostringstream vec;
    Eigen::VectorXd v(3);
    v << std::numbers::pi, -1.0, 0.5;
    write_vector_csv(vec, v);
    CHECK(vec.str() == "3.1415926535897931,-1,0.5\n");
}

TEST_CASE("angle parsing") {
    CHECK(parse_angle("0.7pi") == doctest::Approx(0.7 * std::numbers::pi).epsilon(1e-15));
    CHECK(parse_angle("2pi") == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-15));
    CHECK(parse_angle("pi") == doctest::Approx(std::numbers::pi).epsilon(1e-15));
    CHECK(parse_angle("-0.5pi") == doctest::Approx(-0.5 * std::numbers::pi).epsilon(1e-15));
    CHECK(parse_angle("1.25") == doctest::Approx(1.25).epsilon(1e-15));
    CHECK(parse_angle("0.375pi") == doctest::Approx(3.0 * std::numbers::pi / 8.0).epsilon(1e-15));
    CHECK_THROWS_AS(parse_angle(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_angle("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_angle("1.5tau"), std::invalid_argument);
    CHECK_THROWS_AS(parse_angle("0.7pi0.2"), std::invalid_argument);
}
