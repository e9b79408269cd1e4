#pragma once

#include "tomo/basis.hpp"
#include "tomo/povm.hpp"

#include <Eigen/Dense>

namespace tomo {

/// N x d^2 measurement matrix M with M(i,j) = Tr[sigma_j E_i] / sqrt(2d),
/// rows ordered by (group, operator). The SVD and the Moore-Penrose
/// pseudo-inverse are computed at construction; a singular value counts as
/// zero when mu_i < 1e-10 * mu_1.
class MeasurementMatrix {
  public:
    MeasurementMatrix(const Scheme& scheme, const HermitianBasis& basis);

    int dim() const { return dim_; }
    int rows() const { return static_cast<int>(m_.rows()); }
    int cols() const { return static_cast<int>(m_.cols()); }

    const Eigen::MatrixXd& matrix() const { return m_; }
    const Eigen::VectorXd& singular_values() const { return singular_values_; } // descending
    const Eigen::MatrixXd& left_singular_vectors() const { return u_; }         // thin U
    const Eigen::MatrixXd& right_singular_vectors() const { return v_; }

    int rank() const { return rank_; }
    bool complete() const { return rank_ == cols(); }

    /// Moore-Penrose pseudo-inverse; throws IncompleteSchemeError when
    /// rank < d^2 (the deficient rank is named in the message).
    const Eigen::MatrixXd& pseudo_inverse() const;

    /// n = M a (expected counts under the Born rule).
    Eigen::VectorXd expected_counts(const Eigen::VectorXd& a) const;

    /// a = M+ n; least-squares solution for overcomplete schemes.
    Eigen::VectorXd reconstruct(const Eigen::VectorXd& counts) const;

    /// Operator traces alpha_j, row-aligned with the matrix.
    const Eigen::VectorXd& alphas() const { return alphas_; }
    double total_counts() const { return total_counts_; } // N_T

  private:
    int dim_;
    Eigen::MatrixXd m_;
    Eigen::MatrixXd u_, v_;
    Eigen::VectorXd singular_values_;
    Eigen::MatrixXd pinv_;
    Eigen::VectorXd alphas_;
    double total_counts_;
    int rank_;
};

inline MeasurementMatrix build_matrix(const Scheme& scheme, const HermitianBasis& basis) {
    return MeasurementMatrix(scheme, basis);
}
inline MeasurementMatrix build_matrix(const Scheme& scheme) {
    return MeasurementMatrix(scheme, HermitianBasis(scheme.dim));
}

/// Nearest physical state to a linear-inversion coefficient vector under the
/// Euclidean coefficient distance (proportional to Frobenius): rescale so
/// S_0 = 1, eigendecompose, project the spectrum onto the probability
/// simplex, keep the eigenvectors. Throws DegenerateReconstructionError when
/// a(0) <= 0.
Eigen::MatrixXcd project_to_physical(const Eigen::VectorXd& a, const HermitianBasis& basis);

/// Euclidean projection of a real vector onto the probability simplex
/// (sort-and-threshold).
Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& values);

} // namespace tomo
