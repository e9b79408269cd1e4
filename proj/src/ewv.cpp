#include "tomo/ewv.hpp"

#include "tomo/errors.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tomo {

namespace {

constexpr double kSicRelTol = 1e-9;

void require_complete(const MeasurementMatrix& m, const char* where) {
    if (!m.complete())
        throw IncompleteSchemeError(std::string(where) + ": scheme is informationally incomplete (rank " +
                                    std::to_string(m.rank()) + " < " + std::to_string(m.cols()) + ")");
}

} // namespace

EwvReport ewv_state(const MeasurementMatrix& m, const Eigen::VectorXd& a) {
    require_complete(m, "ewv_state");
    if (a.size() != m.cols())
        throw std::invalid_argument("ewv_state: coefficient vector length mismatch");
    if (std::abs(a(0) - 1.0) > 1e-9)
        throw std::invalid_argument("ewv_state: state is not normalized (S_0 = " + std::to_string(a(0)) + ")");

    const Eigen::MatrixXd& u = m.left_singular_vectors();
    const Eigen::VectorXd& mu = m.singular_values();

    EwvReport report;
    report.singular_values = mu;
    report.total_counts = m.total_counts();
    // r(i,k) = sum_j U(j,i)^2 M(j,k)
    report.r_matrix = u.cwiseProduct(u).transpose() * m.matrix();

    const Eigen::VectorXd ra = report.r_matrix * a;
    double value = 0.0;
    for (Eigen::Index i = 0; i < mu.size(); ++i) value += ra(i) / (mu(i) * mu(i));
    report.value = value;
    return report;
}

double ewv_average(const MeasurementMatrix& m, const Eigen::VectorXd& alphas) {
    require_complete(m, "ewv_average");
    if (alphas.size() != m.rows())
        throw std::invalid_argument("ewv_average: alphas length " + std::to_string(alphas.size()) +
                                    " != operator count " + std::to_string(m.rows()));
    const Eigen::MatrixXd& u = m.left_singular_vectors();
    const Eigen::VectorXd& mu = m.singular_values();
    double sum = 0.0;
    for (Eigen::Index i = 0; i < mu.size(); ++i) {
        double weighted = 0.0;
        for (Eigen::Index j = 0; j < u.rows(); ++j) weighted += alphas(j) * u(j, i) * u(j, i);
        sum += weighted / (mu(i) * mu(i));
    }
    return sum / m.dim();
}

double ewv_average(const MeasurementMatrix& m) { return ewv_average(m, m.alphas()); }

double ewv_lower_bound(int d, int n_ops, double alpha) {
    if (d < 2) throw std::invalid_argument("ewv_lower_bound: dimension must be >= 2");
    if (!(alpha > 0.0)) throw std::invalid_argument("ewv_lower_bound: alpha must be positive");
    if (n_ops < d * d)
        throw std::invalid_argument("ewv_lower_bound: no informationally complete scheme with " +
                                    std::to_string(n_ops) + " < " + std::to_string(d * d) + " operators");
    const double d2 = static_cast<double>(d) * d;
    return d2 * (d2 + d - 1.0) / (n_ops * alpha);
}

SicStructureReport verify_sic_structure(const MeasurementMatrix& m) {
    const int d = m.dim();
    if (m.rows() != d * d)
        throw std::invalid_argument("verify_sic_structure: scheme is not minimal (N = " +
                                    std::to_string(m.rows()) + " != " + std::to_string(d * d) + ")");

    SicStructureReport report;
    const Eigen::VectorXd& alphas = m.alphas();
    const double alpha = alphas.mean();
    report.equal_alphas = (alphas.maxCoeff() - alphas.minCoeff()) <= kSicRelTol * std::abs(alpha);
    report.d1_expected = alpha * alpha;
    report.rest_expected = alpha * alpha / (d + 1.0);

    const Eigen::MatrixXd gram = m.matrix().transpose() * m.matrix();
    double off = 0.0;
    for (Eigen::Index i = 0; i < gram.rows(); ++i)
        for (Eigen::Index j = 0; j < gram.cols(); ++j)
            if (i != j) off = std::max(off, std::abs(gram(i, j)));
    report.off_diagonal_max = off / report.d1_expected;
    report.d1 = gram(0, 0);
    report.rest_min = std::numeric_limits<double>::infinity();
    report.rest_max = 0.0;
    for (Eigen::Index i = 1; i < gram.rows(); ++i) {
        report.rest_min = std::min(report.rest_min, gram(i, i));
        report.rest_max = std::max(report.rest_max, gram(i, i));
    }

    report.lower_bound = ewv_lower_bound(d, m.rows(), alpha);
    bool bound_attained = false;
    if (m.complete()) {
        report.average_ewv = ewv_average(m);
        bound_attained = std::abs(report.average_ewv - report.lower_bound) <= kSicRelTol * report.lower_bound;
    } else {
        report.average_ewv = std::numeric_limits<double>::quiet_NaN();
    }

    report.passes = report.equal_alphas && report.off_diagonal_max <= kSicRelTol &&
                    std::abs(report.d1 - report.d1_expected) <= kSicRelTol * report.d1_expected &&
                    std::abs(report.rest_min - report.rest_expected) <= kSicRelTol * report.rest_expected &&
                    std::abs(report.rest_max - report.rest_expected) <= kSicRelTol * report.rest_expected &&
                    bound_attained;
    return report;
}

} // namespace tomo
