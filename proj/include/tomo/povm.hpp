#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

namespace tomo {

/// Unnormalized probability operator: Hermitian PSD with trace alpha.
struct ProbabilityOperator {
    Eigen::MatrixXcd matrix;
    double alpha = 0.0;

    static ProbabilityOperator from_matrix(Eigen::MatrixXcd m);
};

/// Operators of one measurement, summing to total_counts * I.
struct PovmGroup {
    std::vector<ProbabilityOperator> operators;
    double total_counts = 0.0;

    void validate() const; // throws std::invalid_argument on violation
};

/// Ordered list of POVM groups over a common dimension. Informational
/// completeness is a property of the measurement matrix, not enforced here.
struct Scheme {
    int dim = 0;
    std::vector<PovmGroup> groups;

    int operator_count() const;
    double total_counts() const; // N_T = sum of group counts
    std::vector<const ProbabilityOperator*> flat_operators() const;
    Eigen::VectorXd alphas() const;
    void validate() const;
};

/// Waveplate setting: retardance beta and orientation phi about the
/// optical axis.
struct WaveplateParams {
    double beta = 0.0;
    double phi = 0.0;
};

enum class Outcome { H, V };

/// Three projective measurements along the H/V, D/A and R/L directions,
/// each collecting ncal counts. N = 6, N_T = 3 ncal.
Scheme pauli_six_scheme(double ncal);

/// Qubit SIC-POVM: four operators (ncal/4)(I + t_j . sigma) with t_j the
/// vertices of a regular tetrahedron (first at +z, second in the x-z plane
/// with positive x). Single group, alpha_j = ncal/2.
Scheme sic_povm_qubit(double ncal);

/// U(beta, phi) = cos(beta/2) I - i sin(beta/2) (cos(phi) sigma_z + sin(phi) sigma_x).
/// Conjugating a projector with U . U^dag rotates its Bloch vector by beta
/// about the axis (sin(phi), 0, cos(phi)).
Eigen::Matrix2cd waveplate_unitary(const WaveplateParams& p);

/// Single rotating-waveplate scheme: num_settings PVMs {E_H, E_V} at
/// orientations phi_k = pi/6 + k pi/3 (6/num_settings). N = 2 num_settings,
/// N_T = ncal * num_settings. Requires beta not a multiple of pi.
Scheme ftt_scheme(double beta, int num_settings, double ncal);

/// Measurement operator behind two waveplates of equal retardance at
/// orientations phi1 (first plate) and phi2 (second plate).
ProbabilityOperator two_waveplate_operator(double beta, double phi1, double phi2, Outcome a, double ncal);

/// PVMs {E_H, E_V} for each (phi1, phi2) setting of the two-waveplate bench.
Scheme two_waveplate_scheme(double beta, const std::vector<std::pair<double, double>>& settings, double ncal);

/// num_groups Haar-random projective measurements (rank-1 projectors scaled
/// by ncal); used for randomized property checks.
Scheme random_projective_scheme(int dim, int num_groups, double ncal, std::uint64_t seed);

} // namespace tomo
