#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <functional>
#include <vector>

namespace tomo {

struct NelderMeadOptions {
    double diameter_tol = 1e-8; // stop when max vertex distance falls below
    int max_iterations = 20000;
    double initial_step = 0.5;
};

struct NelderMeadResult {
    Eigen::VectorXd x;
    double value = 0.0;
    int iterations = 0;
    int evaluations = 0;
    bool converged = false;
};

/// Downhill simplex with reflection 1, expansion 2, contraction 0.5 and
/// shrink 0.5.
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& objective,
                             const Eigen::VectorXd& start, const NelderMeadOptions& options = {});

/// Golden-section minimization of a unimodal 1-D function on [lo, hi],
/// refined until the bracket is shorter than tol.
double golden_section_min(const std::function<double(double)>& f, double lo, double hi, double tol);

/// Retardance sweep for the single-waveplate scheme. Values are reported
/// dimensionless as average EWV times N_T.
struct ScenarioAResult {
    Eigen::VectorXd beta_grid;
    Eigen::VectorXd ewv_curve; // <EWV> * N_T per grid point
    double beta_opt = 0.0;
    double ewv_opt = 0.0; // <EWV> * N_T at beta_opt
};

/// Evaluate the average EWV over a uniform beta grid on (0, pi) and refine
/// the best cell by golden-section search to |dbeta| < 1e-6.
ScenarioAResult scenario_a(int num_settings, int grid_points);

struct RestartRecord {
    Eigen::VectorXd start;
    double value = 0.0;
    int iterations = 0;
};

/// Orientation optimization for three PVMs behind two waveplates of fixed
/// retardance; the first PVM is pinned at (0, 0).
struct ScenarioBResult {
    double beta = 0.0;
    std::array<std::array<double, 2>, 3> angles{}; // (phi1, phi2) per PVM
    double ewv_opt = 0.0;                          // <EWV> * N_T
    int best_restart = -1;
    std::vector<RestartRecord> restarts;
};

/// Multi-start Nelder-Mead over (phi1, phi2) of the second and third PVMs,
/// starting points drawn deterministically from `seed`. Candidates whose
/// measurement matrix is rank-deficient score +infinity.
ScenarioBResult scenario_b(double beta, int restarts, std::uint64_t seed);

} // namespace tomo
