#pragma once

#include <Eigen/Dense>
#include <vector>

namespace tomo {

/// Orthogonal Hermitian operator basis for d-level systems: a scaled
/// identity sigma_0 = sqrt(2/d) I followed by the d^2 - 1 generalized Pauli
/// (Gell-Mann) matrices, normalized so Tr[sigma_i sigma_j] = 2 delta_ij.
///
/// Ordering: sigma_0, then symmetric pair matrices E_jk + E_kj (j < k,
/// lexicographic), then antisymmetric pairs -i(E_jk - E_kj), then the
/// diagonal matrices. For d = 2 this reproduces (sigma_x, sigma_y, sigma_z).
class HermitianBasis {
  public:
    explicit HermitianBasis(int dim);

    int dim() const { return dim_; }
    int size() const { return static_cast<int>(elements_.size()); }
    const Eigen::MatrixXcd& element(int i) const { return elements_.at(static_cast<size_t>(i)); }
    const std::vector<Eigen::MatrixXcd>& elements() const { return elements_; }

    /// rho = (1/sqrt(2d)) sum_i a_i sigma_i. Hermitian with trace a_0 by
    /// construction; positivity is not enforced here.
    Eigen::MatrixXcd coeffs_to_density(const Eigen::VectorXd& a) const;

    /// S_k = sqrt(d/2) Tr[rho sigma_k]; inverse of coeffs_to_density.
    Eigen::VectorXd density_to_coeffs(const Eigen::MatrixXcd& rho) const;

  private:
    int dim_;
    std::vector<Eigen::MatrixXcd> elements_;
};

inline HermitianBasis make_basis(int dim) { return HermitianBasis(dim); }

/// Checks Hermiticity (1e-12), unit trace (1e-12) and eigenvalues >= -1e-10.
bool is_physical_density(const Eigen::MatrixXcd& rho);

} // namespace tomo
