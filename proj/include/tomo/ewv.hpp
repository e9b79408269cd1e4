#pragma once

#include "tomo/measmat.hpp"

#include <Eigen/Dense>

namespace tomo {

/// Equally-weighted variance of the reconstructed coefficients under
/// Poisson counting noise, together with the SVD data it was computed from.
struct EwvReport {
    double value = 0.0;              // sum of coefficient variances
    Eigen::VectorXd singular_values; // of M, descending
    Eigen::MatrixXd r_matrix;        // r(i,k) = sum_j U(j,i)^2 M(j,k), d^2 x d^2
    double total_counts = 0.0;       // N_T of the scheme
};

/// State-dependent EWV: sum_i (1/mu_i^2) sum_k r(i,k) a_k. Requires an
/// informationally complete matrix and a normalized state (a_0 = 1).
EwvReport ewv_state(const MeasurementMatrix& m, const Eigen::VectorXd& a);

/// EWV averaged over all input states: (1/d) sum_ij alpha_j U(j,i)^2 / mu_i^2.
/// Equals ewv_state at the maximally mixed state, and (alpha/d) sum_i 1/mu_i^2
/// when all operator traces are equal.
double ewv_average(const MeasurementMatrix& m, const Eigen::VectorXd& alphas);
double ewv_average(const MeasurementMatrix& m);

/// d^2 (d^2 + d - 1) / (n_ops * alpha): the smallest average EWV any scheme
/// of n_ops equally-weighted operators can attain.
double ewv_lower_bound(int d, int n_ops, double alpha);

/// Structural checks that characterize a SIC-POVM through its measurement
/// matrix: equal traces, M^T M diagonal with first entry alpha^2 and the
/// rest alpha^2/(d+1), and the average EWV at the lower bound.
struct SicStructureReport {
    bool equal_alphas = false;
    double off_diagonal_max = 0.0; // of M^T M, relative to alpha^2
    double d1 = 0.0;               // (M^T M)(0,0)
    double d1_expected = 0.0;      // alpha^2 = (ncal/d)^2
    double rest_min = 0.0;         // remaining diagonal range
    double rest_max = 0.0;
    double rest_expected = 0.0; // alpha^2 / (d+1)
    double average_ewv = 0.0;   // NaN when the matrix is rank-deficient
    double lower_bound = 0.0;
    bool passes = false; // all checks within 1e-9 relative
};

/// Requires a minimal scheme (N = d^2 operators).
SicStructureReport verify_sic_structure(const MeasurementMatrix& m);

} // namespace tomo
