#include "tomo/measmat.hpp"

#include "tomo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tomo {

namespace {
constexpr double kRankTolFactor = 1e-10;
}

MeasurementMatrix::MeasurementMatrix(const Scheme& scheme, const HermitianBasis& basis) : dim_(scheme.dim) {
    if (scheme.dim != basis.dim())
        throw std::invalid_argument("MeasurementMatrix: scheme dimension " + std::to_string(scheme.dim) +
                                    " does not match basis dimension " + std::to_string(basis.dim()));
    const auto ops = scheme.flat_operators();
    const int n = static_cast<int>(ops.size());
    const int d2 = basis.size();
    const double scale = 1.0 / std::sqrt(2.0 * dim_);

    m_.resize(n, d2);
    alphas_.resize(n);
    for (int i = 0; i < n; ++i) {
        alphas_(i) = ops[static_cast<size_t>(i)]->alpha;
        for (int j = 0; j < d2; ++j)
            m_(i, j) = scale * (basis.element(j) * ops[static_cast<size_t>(i)]->matrix).trace().real();
    }
    total_counts_ = scheme.total_counts();

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m_, Eigen::ComputeThinU | Eigen::ComputeThinV);
    u_ = svd.matrixU();
    v_ = svd.matrixV();
    singular_values_ = svd.singularValues();

    const double tol = singular_values_.size() > 0 ? kRankTolFactor * singular_values_(0) : 0.0;
    rank_ = 0;
    for (Eigen::Index i = 0; i < singular_values_.size(); ++i)
        if (singular_values_(i) > tol) ++rank_;

    Eigen::VectorXd inv = Eigen::VectorXd::Zero(singular_values_.size());
    for (Eigen::Index i = 0; i < singular_values_.size(); ++i)
        if (singular_values_(i) > tol) inv(i) = 1.0 / singular_values_(i);
    pinv_ = v_ * inv.asDiagonal() * u_.transpose();
}

const Eigen::MatrixXd& MeasurementMatrix::pseudo_inverse() const {
    if (!complete())
        throw IncompleteSchemeError("scheme is informationally incomplete: rank " + std::to_string(rank_) +
                                    " < " + std::to_string(cols()));
    return pinv_;
}

Eigen::VectorXd MeasurementMatrix::expected_counts(const Eigen::VectorXd& a) const {
    if (a.size() != m_.cols())
        throw std::invalid_argument("expected_counts: coefficient vector length " + std::to_string(a.size()) +
                                    " != " + std::to_string(m_.cols()));
    return m_ * a;
}

Eigen::VectorXd MeasurementMatrix::reconstruct(const Eigen::VectorXd& counts) const {
    if (counts.size() != m_.rows())
        throw std::invalid_argument("reconstruct: count vector length " + std::to_string(counts.size()) +
                                    " != " + std::to_string(m_.rows()));
    return pseudo_inverse() * counts;
}

Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& values) {
    const Eigen::Index n = values.size();
    std::vector<double> sorted(values.data(), values.data() + n);
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());

    double cumulative = 0.0;
    double shift = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        cumulative += sorted[static_cast<size_t>(k)];
        const double candidate = (1.0 - cumulative) / static_cast<double>(k + 1);
        if (sorted[static_cast<size_t>(k)] + candidate > 0.0) shift = candidate;
    }
    return values.unaryExpr([shift](double v) { return std::max(v + shift, 0.0); });
}

Eigen::MatrixXcd project_to_physical(const Eigen::VectorXd& a, const HermitianBasis& basis) {
    if (a.size() != basis.size())
        throw std::invalid_argument("project_to_physical: coefficient vector length mismatch");
    if (!(a(0) > 0.0))
        throw DegenerateReconstructionError("project_to_physical: identity coefficient S_0 = " +
                                            std::to_string(a(0)) + " is not positive");
    const Eigen::MatrixXcd rho = basis.coeffs_to_density(a / a(0));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    const Eigen::VectorXd projected = project_to_simplex(es.eigenvalues());
    return es.eigenvectors() * projected.asDiagonal() * es.eigenvectors().adjoint();
}

} // namespace tomo
