#include "tomo/basis.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace tomo {

using std::complex;

HermitianBasis::HermitianBasis(int dim) : dim_(dim) {
    if (dim < 2) throw std::invalid_argument("HermitianBasis: dimension must be >= 2, got " + std::to_string(dim));
    const int d = dim;
    elements_.reserve(static_cast<size_t>(d) * d);

    elements_.push_back(std::sqrt(2.0 / d) * Eigen::MatrixXcd::Identity(d, d));

    // Symmetric pairs: E_jk + E_kj, j < k.
    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
            m(j, k) = 1.0;
            m(k, j) = 1.0;
            elements_.push_back(std::move(m));
        }
    }
    // Antisymmetric pairs: -i (E_jk - E_kj) = i E_kj - i E_jk, j < k.
    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
            m(j, k) = complex<double>(0.0, -1.0);
            m(k, j) = complex<double>(0.0, 1.0);
            elements_.push_back(std::move(m));
        }
    }
    // Diagonal: sqrt(2/(l(l+1))) (sum_{j<=l} E_jj - l E_{l+1,l+1}), l = 1..d-1.
    for (int l = 1; l < d; ++l) {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
        const double norm = std::sqrt(2.0 / (static_cast<double>(l) * (l + 1)));
        for (int j = 0; j < l; ++j) m(j, j) = norm;
        m(l, l) = -norm * l;
        elements_.push_back(std::move(m));
    }
}

Eigen::MatrixXcd HermitianBasis::coeffs_to_density(const Eigen::VectorXd& a) const {
    if (a.size() != size())
        throw std::invalid_argument("coeffs_to_density: expected length " + std::to_string(size()) +
                                    ", got " + std::to_string(a.size()));
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim_, dim_);
    for (int i = 0; i < size(); ++i) rho += a(i) * elements_[static_cast<size_t>(i)];
    rho /= std::sqrt(2.0 * dim_);
    return rho;
}

Eigen::VectorXd HermitianBasis::density_to_coeffs(const Eigen::MatrixXcd& rho) const {
    if (rho.rows() != dim_ || rho.cols() != dim_)
        throw std::invalid_argument("density_to_coeffs: matrix must be " + std::to_string(dim_) + "x" +
                                    std::to_string(dim_));
    Eigen::VectorXd a(size());
    const double scale = std::sqrt(dim_ / 2.0);
    for (int k = 0; k < size(); ++k)
        a(k) = scale * (rho * elements_[static_cast<size_t>(k)]).trace().real();
    return a;
}

bool is_physical_density(const Eigen::MatrixXcd& rho) {
    if (rho.rows() != rho.cols()) return false;
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12) return false;
    if (std::abs(rho.trace().real() - 1.0) > 1e-12 || std::abs(rho.trace().imag()) > 1e-12) return false;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -1e-10;
}

} // namespace tomo
