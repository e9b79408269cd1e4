// Command-line front end: build measurement matrices, evaluate the
// equally-weighted variance, sweep waveplate parameters and run Monte Carlo
// closure checks. Exit codes: 0 ok, 2 usage/parse error, 3 mathematical
// precondition failure.

#include "tomo/errors.hpp"
#include "tomo/ewv.hpp"
#include "tomo/measmat.hpp"
#include "tomo/optimize.hpp"
#include "tomo/povm.hpp"
#include "tomo/serialize.hpp"
#include "tomo/simulate.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitMath = 3;

struct SchemeOptions {
    std::string builtin;
    std::string scheme_file;
    std::string beta = "0.7pi";
    int settings = 6;
    double ncal = 1.0;
    std::vector<std::string> angles; // two-waveplate settings, pairs of angles
};

void add_scheme_flags(CLI::App* cmd, SchemeOptions& opts) {
    auto* builtin = cmd->add_option("--builtin", opts.builtin, "Builtin scheme: pauli6, sic2, ftt, twowp")
                        ->check(CLI::IsMember({"pauli6", "sic2", "ftt", "twowp"}));
    auto* file = cmd->add_option("--scheme", opts.scheme_file, "Scheme JSON file");
    builtin->excludes(file);
    file->excludes(builtin);
    cmd->add_option("--ncal", opts.ncal, "Counts collected per POVM group")->check(CLI::PositiveNumber);
    cmd->add_option("--beta", opts.beta, "Waveplate retardance (radians or '<x>pi')");
    cmd->add_option("--settings", opts.settings, "Number of waveplate orientations (ftt)")
        ->check(CLI::Range(3, 10000));
    cmd->add_option("--angles", opts.angles,
                    "Two-waveplate orientations phi1,phi2 per PVM (six values for three PVMs)");
}

tomo::Scheme load_scheme(const SchemeOptions& opts) {
    if (!opts.scheme_file.empty()) {
        std::ifstream in(opts.scheme_file);
        if (!in) throw std::invalid_argument("cannot open scheme file '" + opts.scheme_file + "'");
        nlohmann::json j = nlohmann::json::parse(in); // parse_error carries line/column
        return tomo::scheme_from_json(j);
    }
    if (opts.builtin == "pauli6") return tomo::pauli_six_scheme(opts.ncal);
    if (opts.builtin == "sic2") return tomo::sic_povm_qubit(opts.ncal);
    if (opts.builtin == "ftt")
        return tomo::ftt_scheme(tomo::parse_angle(opts.beta), opts.settings, opts.ncal);
    if (opts.builtin == "twowp") {
        std::vector<std::pair<double, double>> settings;
        if (opts.angles.empty()) {
            settings = {{0.0, 0.0},
                        {0.7 * std::numbers::pi, 0.7 * std::numbers::pi},
                        {0.7 * std::numbers::pi, 0.2 * std::numbers::pi}};
        } else {
            if (opts.angles.size() % 2 != 0)
                throw std::invalid_argument("--angles needs an even number of values (phi1,phi2 pairs)");
            for (size_t i = 0; i < opts.angles.size(); i += 2)
                settings.emplace_back(tomo::parse_angle(opts.angles[i]), tomo::parse_angle(opts.angles[i + 1]));
        }
        return tomo::two_waveplate_scheme(tomo::parse_angle(opts.beta), settings, opts.ncal);
    }
    throw std::invalid_argument("no scheme source given: use --builtin or --scheme");
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw std::invalid_argument("cannot open output file '" + path + "'");
    return file;
}

Eigen::VectorXd parse_state(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) values.push_back(std::stod(item));
    Eigen::VectorXd a(static_cast<Eigen::Index>(values.size()));
    for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = values[static_cast<size_t>(i)];
    return a;
}

int cmd_matrix(const SchemeOptions& scheme_opts, const std::string& output, const std::string& format,
               bool require_complete) {
    const tomo::Scheme scheme = load_scheme(scheme_opts);
    const tomo::MeasurementMatrix m = tomo::build_matrix(scheme);
    if (require_complete && !m.complete())
        throw tomo::IncompleteSchemeError("matrix: rank " + std::to_string(m.rank()) + " < " +
                                          std::to_string(m.cols()));
    std::ofstream file;
    std::ostream& out = open_output(file, output);
    if (format == "json") {
        nlohmann::json j;
        j["matrix"] = nlohmann::json::array();
        for (Eigen::Index i = 0; i < m.matrix().rows(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (Eigen::Index c = 0; c < m.matrix().cols(); ++c) row.push_back(m.matrix()(i, c));
            j["matrix"].push_back(std::move(row));
        }
        nlohmann::json sv = nlohmann::json::array();
        for (Eigen::Index i = 0; i < m.singular_values().size(); ++i) sv.push_back(m.singular_values()(i));
        j["singular_values"] = std::move(sv);
        j["rank"] = m.rank();
        if (m.complete()) {
            j["pseudo_inverse"] = nlohmann::json::array();
            for (Eigen::Index i = 0; i < m.pseudo_inverse().rows(); ++i) {
                nlohmann::json row = nlohmann::json::array();
                for (Eigen::Index c = 0; c < m.pseudo_inverse().cols(); ++c)
                    row.push_back(m.pseudo_inverse()(i, c));
                j["pseudo_inverse"].push_back(std::move(row));
            }
        }
        out << j.dump(2) << '\n';
    } else {
        out << "# matrix rows=" << m.rows() << " cols=" << m.cols() << '\n';
        tomo::write_matrix_csv(out, m.matrix());
        out << "# singular_values\n";
        tomo::write_vector_csv(out, m.singular_values());
        out << "# rank\n" << m.rank() << '\n';
        if (m.complete()) {
            out << "# pseudo_inverse rows=" << m.cols() << " cols=" << m.rows() << '\n';
            tomo::write_matrix_csv(out, m.pseudo_inverse());
        }
    }
    return kExitOk;
}

int cmd_ewv(const SchemeOptions& scheme_opts, const std::string& output, const std::string& state_text) {
    const tomo::Scheme scheme = load_scheme(scheme_opts);
    const tomo::MeasurementMatrix m = tomo::build_matrix(scheme);

    tomo::EwvReport report;
    if (state_text.empty()) {
        // Average over input states: same SVD data, value from the alphas.
        Eigen::VectorXd mixed = Eigen::VectorXd::Zero(m.cols());
        mixed(0) = 1.0;
        report = tomo::ewv_state(m, mixed);
        report.value = tomo::ewv_average(m);
    } else {
        report = tomo::ewv_state(m, parse_state(state_text));
    }
    const double alpha_mean = m.alphas().mean();
    const double bound = tomo::ewv_lower_bound(scheme.dim, m.rows(), alpha_mean);

    std::optional<bool> passes_sic;
    if (m.rows() == m.cols() && m.complete()) passes_sic = tomo::verify_sic_structure(m).passes;

    std::ofstream file;
    std::ostream& out = open_output(file, output);
    out << tomo::ewv_report_to_json(report, bound, passes_sic).dump(2) << '\n';
    return kExitOk;
}

int cmd_sweep(const SchemeOptions& scheme_opts, const std::string& output, int points,
              const std::string& beta_min, const std::string& beta_max, const std::string& beta_step,
              int restarts, std::uint64_t seed) {
    std::ofstream file;
    std::ostream& out = open_output(file, output);
    if (scheme_opts.builtin == "ftt") {
        tomo::ScenarioAResult result = tomo::scenario_a(scheme_opts.settings, points);
        out << "beta,ewv_times_nt,bound\n";
        for (Eigen::Index i = 0; i < result.beta_grid.size(); ++i) {
            Eigen::VectorXd row(3);
            row << result.beta_grid(i), result.ewv_curve(i), 10.0;
            tomo::write_vector_csv(out, row);
        }
        std::cerr << "optimum: beta=" << result.beta_opt << " ewv_times_nt=" << result.ewv_opt << '\n';
        return kExitOk;
    }
    if (scheme_opts.builtin == "twowp") {
        const double lo = tomo::parse_angle(beta_min);
        const double hi = tomo::parse_angle(beta_max);
        const double step = tomo::parse_angle(beta_step);
        if (!(step > 0.0) || !(hi >= lo)) throw std::invalid_argument("sweep: bad beta range");
        out << "beta,ewv_opt_times_nt,bound\n";
        for (double beta = lo; beta <= hi + 1e-12; beta += step) {
            const tomo::ScenarioBResult result = tomo::scenario_b(beta, restarts, seed);
            Eigen::VectorXd row(3);
            row << beta, result.ewv_opt, 10.0;
            tomo::write_vector_csv(out, row);
        }
        return kExitOk;
    }
    throw std::invalid_argument("sweep: --builtin must be ftt or twowp");
}

int cmd_simulate(const SchemeOptions& scheme_opts, const std::string& output, const std::string& state_text,
                 long trials, long samples, bool verify_avg, std::uint64_t seed, bool project_physical,
                 const std::string& dump_path) {
    const tomo::Scheme scheme = load_scheme(scheme_opts);
    std::ofstream file;
    std::ostream& out = open_output(file, output);

    if (verify_avg) {
        const tomo::AverageComparison cmp = tomo::verify_average(scheme, samples, seed);
        nlohmann::json j = tomo::average_comparison_to_json(cmp);
        j["pass"] = std::abs(cmp.z_score) < 3.0;
        out << j.dump(2) << '\n';
        return std::abs(cmp.z_score) < 3.0 ? kExitOk : kExitMath;
    }

    tomo::TrialConfig config;
    config.scheme = scheme;
    config.trials = trials;
    config.seed = seed;
    config.project_physical = project_physical;
    if (state_text.empty()) {
        config.true_state = Eigen::VectorXd::Zero(scheme.dim * scheme.dim);
        config.true_state(0) = 1.0;
    } else {
        config.true_state = parse_state(state_text);
    }

    std::ofstream dump;
    tomo::TrialSink sink;
    if (!dump_path.empty()) {
        dump.open(dump_path);
        if (!dump) throw std::invalid_argument("cannot open dump file '" + dump_path + "'");
        dump << "trial";
        for (int j = 1; j <= scheme.operator_count(); ++j) dump << ",n_" << j;
        for (int i = 0; i < scheme.dim * scheme.dim; ++i) dump << ",S_" << i;
        dump << '\n';
        sink = [&dump](long trial, const Eigen::VectorXd& counts, const Eigen::VectorXd& coeffs) {
            dump << trial;
            for (Eigen::Index j = 0; j < counts.size(); ++j) dump << ',' << counts(j);
            Eigen::VectorXd row = coeffs;
            std::ostringstream ss;
            tomo::write_vector_csv(ss, row);
            dump << ',' << ss.str();
        };
    }

    const tomo::TrialReport report = tomo::run_trials(config, sink);
    const double z = report.standard_error > 0.0
                         ? (report.empirical_ewv - report.analytic_ewv) / report.standard_error
                         : 0.0;
    nlohmann::json j = tomo::trial_report_to_json(report);
    j["z_score"] = z;
    j["pass"] = std::abs(z) < 3.0;
    out << j.dump(2) << '\n';
    return std::abs(z) < 3.0 ? kExitOk : kExitMath;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tomography scheme conditioning and equally-weighted-variance toolkit"};
    app.require_subcommand(1);

    SchemeOptions scheme_opts;
    std::string output;
    std::string format = "csv";
    std::string state_text;
    bool require_complete = false;

    auto* matrix = app.add_subcommand("matrix", "Measurement matrix, singular values, rank and pseudo-inverse");
    add_scheme_flags(matrix, scheme_opts);
    matrix->add_option("--output,-o", output, "Output file (default stdout)");
    matrix->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    matrix->add_flag("--require-complete", require_complete, "Fail (exit 3) when rank < d^2");

    auto* ewv = app.add_subcommand("ewv", "Equally-weighted variance (state-dependent or average) plus lower bound");
    add_scheme_flags(ewv, scheme_opts);
    ewv->add_option("--output,-o", output, "Output file (default stdout)");
    ewv->add_option("--state", state_text, "Coefficient vector S_0,S_1,... (omit for the state average)");

    int points = 256;
    std::string beta_min = "0.15pi", beta_max = "0.85pi", beta_step = "0.05pi";
    int restarts = 16;
    std::uint64_t sweep_seed = 20240813;
    auto* sweep = app.add_subcommand("sweep", "Retardance sweeps: ftt curve or twowp per-beta optima");
    add_scheme_flags(sweep, scheme_opts);
    sweep->add_option("--output,-o", output, "Output file (default stdout)");
    sweep->add_option("--points", points, "Grid points for the ftt sweep")->check(CLI::Range(16, 1 << 20));
    sweep->add_option("--beta-min", beta_min, "twowp sweep start");
    sweep->add_option("--beta-max", beta_max, "twowp sweep end");
    sweep->add_option("--beta-step", beta_step, "twowp sweep step");
    sweep->add_option("--restarts", restarts, "Optimizer restarts per beta")->check(CLI::Range(1, 4096));
    sweep->add_option("--seed", sweep_seed, "Optimizer seed");

    long trials = 100000;
    long samples = 10000;
    bool verify_avg = false;
    bool project_physical = false;
    std::string dump_path;
    std::uint64_t sim_seed = 0;
    auto* simulate = app.add_subcommand("simulate", "Poisson Monte Carlo closure against the analytic EWV");
    add_scheme_flags(simulate, scheme_opts);
    simulate->add_option("--output,-o", output, "Output file (default stdout)");
    simulate->add_option("--state", state_text, "True state S_0,... (default maximally mixed)");
    simulate->add_option("--trials", trials, "Poisson trials")->check(CLI::PositiveNumber);
    simulate->add_option("--samples", samples, "States for --verify-average")->check(CLI::PositiveNumber);
    simulate->add_flag("--verify-average", verify_avg, "Compare Monte Carlo state average against the closed form");
    simulate->add_flag("--project-physical", project_physical, "Also report the nearest-physical-state error");
    simulate->add_option("--dump-trials", dump_path, "Per-trial CSV dump file");
    auto* seed_opt = simulate->add_option("--seed", sim_seed, "RNG seed (required)");
    seed_opt->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (matrix->parsed()) return cmd_matrix(scheme_opts, output, format, require_complete);
        if (ewv->parsed()) return cmd_ewv(scheme_opts, output, state_text);
        if (sweep->parsed())
            return cmd_sweep(scheme_opts, output, points, beta_min, beta_max, beta_step, restarts, sweep_seed);
        if (simulate->parsed())
            return cmd_simulate(scheme_opts, output, state_text, trials, samples, verify_avg, sim_seed,
                                project_physical, dump_path);
    } catch (const tomo::IncompleteSchemeError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitMath;
    } catch (const tomo::DegenerateSchemeError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitMath;
    } catch (const tomo::DegenerateReconstructionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitMath;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitOk;
}
