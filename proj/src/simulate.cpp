#include "tomo/simulate.hpp"

#include "tomo/basis.hpp"
#include "tomo/ewv.hpp"
#include "tomo/measmat.hpp"
#include "tomo/rng.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace tomo {

namespace {

// Mean and standard error of the mean via a deterministic pairwise reduction.
std::pair<double, double> mean_and_se(std::span<const double> values) {
    const auto n = static_cast<double>(values.size());
    const double mean = pairwise_sum(values) / n;
    if (values.size() < 2) return {mean, 0.0};
    std::vector<double> sq(values.size());
    for (size_t i = 0; i < values.size(); ++i) sq[i] = (values[i] - mean) * (values[i] - mean);
    const double var = pairwise_sum(sq) / (n - 1.0);
    return {mean, std::sqrt(var / n)};
}

void parallel_chunks(long total, const std::function<void(long, long)>& body) {
    const int workers = std::min<long>(worker_count(), total) > 0 ? static_cast<int>(std::min<long>(worker_count(), total)) : 1;
    if (workers == 1) {
        body(0, total);
        return;
    }
    std::vector<std::thread> pool;
    const long chunk = (total + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const long lo = w * chunk;
        const long hi = std::min(total, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back(body, lo, hi);
    }
    for (auto& t : pool) t.join();
}

} // namespace

TrialReport run_trials(const TrialConfig& config, const TrialSink& sink) {
    if (config.trials < 1) throw std::invalid_argument("run_trials: trials must be >= 1");
    const HermitianBasis basis(config.scheme.dim);
    const MeasurementMatrix m(config.scheme, basis);
    const Eigen::MatrixXd& pinv = m.pseudo_inverse(); // throws when incomplete

    const Eigen::VectorXd expected = m.expected_counts(config.true_state);
    if (expected.minCoeff() < 0.0)
        throw std::invalid_argument("run_trials: negative expected counts; state and scheme are inconsistent");

    const long trials = config.trials;
    const int d2 = m.cols();
    std::vector<double> sq_error(static_cast<size_t>(trials));
    Eigen::MatrixXd comp_sq(trials, d2);
    std::vector<double> proj_error(config.project_physical ? static_cast<size_t>(trials) : 0);

    const auto one_trial = [&](long t, Eigen::VectorXd& counts) {
        auto eng = substream(config.seed, static_cast<std::uint64_t>(t));
        if (config.exact_means) {
            counts = expected;
        } else {
            for (Eigen::Index j = 0; j < counts.size(); ++j)
                counts(j) = static_cast<double>(poisson_draw(eng, expected(j)));
        }
        const Eigen::VectorXd a_hat = pinv * counts;
        const Eigen::VectorXd delta = a_hat - config.true_state;
        sq_error[static_cast<size_t>(t)] = delta.squaredNorm();
        comp_sq.row(t) = delta.cwiseProduct(delta).transpose();
        if (config.project_physical) {
            const Eigen::MatrixXcd rho = project_to_physical(a_hat, basis);
            const Eigen::VectorXd a_proj = basis.density_to_coeffs(rho);
            proj_error[static_cast<size_t>(t)] = (a_proj - config.true_state).squaredNorm();
        }
        return a_hat;
    };
    if (sink) {
        // Observed runs stay single-threaded so the sink sees trials in order.
        Eigen::VectorXd counts(m.rows());
        for (long t = 0; t < trials; ++t) {
            const Eigen::VectorXd a_hat = one_trial(t, counts);
            sink(t, counts, a_hat);
        }
    } else {
        parallel_chunks(trials, [&](long lo, long hi) {
            Eigen::VectorXd counts(m.rows());
            for (long t = lo; t < hi; ++t) one_trial(t, counts);
        });
    }

    TrialReport report;
    report.trials = trials;
    auto [mean, se] = mean_and_se(sq_error);
    report.empirical_ewv = mean;
    report.standard_error = se;
    report.analytic_ewv = ewv_state(m, config.true_state).value;
    report.component_variances.resize(d2);
    for (int i = 0; i < d2; ++i) {
        const Eigen::VectorXd col = comp_sq.col(i);
        report.component_variances(i) = pairwise_sum({col.data(), static_cast<size_t>(col.size())}) / trials;
    }
    if (config.project_physical) {
        report.has_projected = true;
        report.projected_ewv = pairwise_sum(proj_error) / static_cast<double>(trials);
    }
    return report;
}

Eigen::MatrixXcd random_state(int d, const Eigen::VectorXd& spectrum, std::uint64_t seed) {
    if (spectrum.size() != d) throw std::invalid_argument("random_state: spectrum length must equal dimension");
    if (spectrum.minCoeff() < 0.0 || std::abs(spectrum.sum() - 1.0) > 1e-12)
        throw std::invalid_argument("random_state: spectrum must be nonnegative and sum to 1");
    auto eng = substream(seed, 0);
    const Eigen::MatrixXcd q = haar_unitary(d, eng);
    return q * spectrum.asDiagonal() * q.adjoint();
}

AverageComparison verify_average(const Scheme& scheme, long samples, std::uint64_t seed) {
    if (samples < 2) throw std::invalid_argument("verify_average: need at least 2 samples");
    const HermitianBasis basis(scheme.dim);
    const MeasurementMatrix m(scheme, basis);
    const double analytic = ewv_average(m);

    std::vector<double> values(static_cast<size_t>(samples));
    parallel_chunks(samples, [&](long lo, long hi) {
        for (long s = lo; s < hi; ++s) {
            auto eng = substream(seed, static_cast<std::uint64_t>(s));
            const Eigen::VectorXd spectrum = dirichlet_flat(scheme.dim, eng);
            const Eigen::MatrixXcd q = haar_unitary(scheme.dim, eng);
            const Eigen::MatrixXcd rho = q * spectrum.asDiagonal() * q.adjoint();
            values[static_cast<size_t>(s)] = ewv_state(m, basis.density_to_coeffs(rho)).value;
        }
    });

    AverageComparison cmp;
    cmp.samples = samples;
    auto [mean, se] = mean_and_se(values);
    cmp.mc_mean = mean;
    cmp.mc_standard_error = se;
    cmp.analytic = analytic;
    cmp.z_score = se > 0.0 ? (mean - analytic) / se : 0.0;
    return cmp;
}

} // namespace tomo
