#pragma once

#include "tomo/povm.hpp"

#include <Eigen/Dense>
#include <cstdint>
#include <functional>

namespace tomo {

/// Monte Carlo configuration: Poisson-noisy counts for `true_state` under
/// `scheme`, reconstructed by linear inversion, `trials` times. Each trial
/// draws from its own substream of `seed`, so results do not depend on
/// execution order. `exact_means` replaces the Poisson draws with their
/// means (debug aid). When `project_physical` is set the report also
/// carries the error of the nearest physical state.
struct TrialConfig {
    Scheme scheme;
    Eigen::VectorXd true_state;
    long trials = 1;
    std::uint64_t seed = 0;
    bool project_physical = false;
    bool exact_means = false;
};

struct TrialReport {
    double empirical_ewv = 0.0;    // mean over trials of sum_i (S_i_hat - S_i)^2
    double standard_error = 0.0;   // of the mean, for trials >= 2
    double analytic_ewv = 0.0;     // from ewv_state
    Eigen::VectorXd component_variances; // mean (S_i_hat - S_i)^2 per component
    double projected_ewv = 0.0;    // only meaningful when project_physical
    bool has_projected = false;
    long trials = 0;
};

/// Optional per-trial observer (counts and reconstructed coefficients);
/// used by the CLI to dump raw trials.
using TrialSink = std::function<void(long trial, const Eigen::VectorXd& counts, const Eigen::VectorXd& coeffs)>;

TrialReport run_trials(const TrialConfig& config, const TrialSink& sink = {});

/// rho = Q diag(spectrum) Q^dag with Q Haar-distributed; deterministic per
/// seed. The spectrum must be nonnegative and sum to one.
Eigen::MatrixXcd random_state(int d, const Eigen::VectorXd& spectrum, std::uint64_t seed);

/// Monte Carlo check that the state average of the EWV matches the closed
/// form: states drawn with Haar eigenvectors and flat-Dirichlet spectra.
struct AverageComparison {
    double mc_mean = 0.0;
    double mc_standard_error = 0.0;
    double analytic = 0.0;
    double z_score = 0.0;
    long samples = 0;
};

AverageComparison verify_average(const Scheme& scheme, long samples, std::uint64_t seed);

} // namespace tomo
