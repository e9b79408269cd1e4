#include "tomo/povm.hpp"

#include "tomo/errors.hpp"
#include "tomo/rng.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace tomo {

namespace {

constexpr double kGroupTol = 1e-10;
const std::complex<double> kI(0.0, 1.0);

Eigen::Matrix2cd pauli_x() { return (Eigen::Matrix2cd() << 0, 1, 1, 0).finished(); }
Eigen::Matrix2cd pauli_y() { return (Eigen::Matrix2cd() << 0, -kI, kI, 0).finished(); }
Eigen::Matrix2cd pauli_z() { return (Eigen::Matrix2cd() << 1, 0, 0, -1).finished(); }

Eigen::Matrix2cd bloch_projector(const Eigen::Vector3d& t) {
    return 0.5 * (Eigen::Matrix2cd::Identity() + t.x() * pauli_x() + t.y() * pauli_y() + t.z() * pauli_z());
}

Eigen::Matrix2cd outcome_projector(Outcome a) {
    Eigen::Matrix2cd p = Eigen::Matrix2cd::Zero();
    p(a == Outcome::H ? 0 : 1, a == Outcome::H ? 0 : 1) = 1.0;
    return p;
}

PovmGroup pvm_pair(const Eigen::Matrix2cd& unitary, double ncal) {
    PovmGroup g;
    g.total_counts = ncal;
    for (Outcome a : {Outcome::H, Outcome::V}) {
        Eigen::MatrixXcd e = ncal * (unitary * outcome_projector(a) * unitary.adjoint());
        g.operators.push_back(ProbabilityOperator::from_matrix(std::move(e)));
    }
    return g;
}

void require_positive_counts(double ncal) {
    if (!(ncal > 0.0)) throw std::invalid_argument("scheme: ncal must be positive");
}

} // namespace

ProbabilityOperator ProbabilityOperator::from_matrix(Eigen::MatrixXcd m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("ProbabilityOperator: matrix must be square");
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("ProbabilityOperator: matrix must be Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
        throw std::invalid_argument("ProbabilityOperator: matrix must be positive semidefinite");
    ProbabilityOperator op;
    op.alpha = m.trace().real();
    op.matrix = std::move(m);
    return op;
}

void PovmGroup::validate() const {
    if (operators.empty()) throw std::invalid_argument("PovmGroup: no operators");
    if (!(total_counts > 0.0)) throw std::invalid_argument("PovmGroup: total_counts must be positive");
    const auto d = operators.front().matrix.rows();
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
    for (const auto& op : operators) sum += op.matrix;
    sum -= total_counts * Eigen::MatrixXcd::Identity(d, d);
    if (sum.cwiseAbs().maxCoeff() > kGroupTol * std::max(1.0, total_counts))
        throw std::invalid_argument("PovmGroup: operators do not sum to total_counts * I");
}

int Scheme::operator_count() const {
    int n = 0;
    for (const auto& g : groups) n += static_cast<int>(g.operators.size());
    return n;
}

double Scheme::total_counts() const {
    double nt = 0.0;
    for (const auto& g : groups) nt += g.total_counts;
    return nt;
}

std::vector<const ProbabilityOperator*> Scheme::flat_operators() const {
    std::vector<const ProbabilityOperator*> out;
    out.reserve(static_cast<size_t>(operator_count()));
    for (const auto& g : groups)
        for (const auto& op : g.operators) out.push_back(&op);
    return out;
}

Eigen::VectorXd Scheme::alphas() const {
    const auto ops = flat_operators();
    Eigen::VectorXd a(static_cast<Eigen::Index>(ops.size()));
    for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = ops[static_cast<size_t>(i)]->alpha;
    return a;
}

void Scheme::validate() const {
    if (dim < 2) throw std::invalid_argument("Scheme: dimension must be >= 2");
    if (groups.empty()) throw std::invalid_argument("Scheme: no groups");
    for (const auto& g : groups) {
        g.validate();
        for (const auto& op : g.operators)
            if (op.matrix.rows() != dim) throw std::invalid_argument("Scheme: operator dimension mismatch");
    }
}

Scheme pauli_six_scheme(double ncal) {
    require_positive_counts(ncal);
    const double r = 1.0 / std::sqrt(2.0);
    const Eigen::Vector2cd h(1, 0), v(0, 1);
    const Eigen::Vector2cd dvec = r * (h + v), avec = r * (h - v);
    const Eigen::Vector2cd rvec = r * (h + kI * v), lvec = r * (h - kI * v);

    Scheme s;
    s.dim = 2;
    for (auto [plus, minus] : {std::pair{h, v}, std::pair{dvec, avec}, std::pair{rvec, lvec}}) {
        PovmGroup g;
        g.total_counts = ncal;
        g.operators.push_back(ProbabilityOperator::from_matrix(ncal * plus * plus.adjoint()));
        g.operators.push_back(ProbabilityOperator::from_matrix(ncal * minus * minus.adjoint()));
        s.groups.push_back(std::move(g));
    }
    return s;
}

Scheme sic_povm_qubit(double ncal) {
    require_positive_counts(ncal);
    const double s2 = std::sqrt(2.0), s6 = std::sqrt(6.0);
    const std::vector<Eigen::Vector3d> tetra = {
        {0.0, 0.0, 1.0},
        {2.0 * s2 / 3.0, 0.0, -1.0 / 3.0},
        {-s2 / 3.0, s6 / 3.0, -1.0 / 3.0},
        {-s2 / 3.0, -s6 / 3.0, -1.0 / 3.0},
    };
    Scheme s;
    s.dim = 2;
    PovmGroup g;
    g.total_counts = ncal;
    for (const auto& t : tetra)
        g.operators.push_back(ProbabilityOperator::from_matrix(0.5 * ncal * bloch_projector(t)));
    s.groups.push_back(std::move(g));
    return s;
}

Eigen::Matrix2cd waveplate_unitary(const WaveplateParams& p) {
    const Eigen::Matrix2cd axis = std::cos(p.phi) * pauli_z() + std::sin(p.phi) * pauli_x();
    return std::cos(p.beta / 2.0) * Eigen::Matrix2cd::Identity() - kI * std::sin(p.beta / 2.0) * axis;
}

Scheme ftt_scheme(double beta, int num_settings, double ncal) {
    require_positive_counts(ncal);
    if (num_settings < 3)
        throw std::invalid_argument("ftt_scheme: need at least 3 settings, got " + std::to_string(num_settings));
    if (std::abs(std::remainder(beta, std::numbers::pi)) < 1e-12)
        throw DegenerateSchemeError("ftt_scheme: retardance at a multiple of pi is informationally incomplete");

    Scheme s;
    s.dim = 2;
    for (int k = 0; k < num_settings; ++k) {
        const double phi = std::numbers::pi / 6.0 + k * (std::numbers::pi / 3.0) * (6.0 / num_settings);
        s.groups.push_back(pvm_pair(waveplate_unitary({beta, phi}), ncal));
    }
    return s;
}

ProbabilityOperator two_waveplate_operator(double beta, double phi1, double phi2, Outcome a, double ncal) {
    require_positive_counts(ncal);
    const Eigen::Matrix2cd w = waveplate_unitary({beta, phi2}) * waveplate_unitary({beta, phi1});
    return ProbabilityOperator::from_matrix(ncal * (w * outcome_projector(a) * w.adjoint()));
}

Scheme two_waveplate_scheme(double beta, const std::vector<std::pair<double, double>>& settings, double ncal) {
    require_positive_counts(ncal);
    if (settings.empty()) throw std::invalid_argument("two_waveplate_scheme: no settings");
    Scheme s;
    s.dim = 2;
    for (const auto& [phi1, phi2] : settings) {
        const Eigen::Matrix2cd w = waveplate_unitary({beta, phi2}) * waveplate_unitary({beta, phi1});
        s.groups.push_back(pvm_pair(w, ncal));
    }
    return s;
}

Scheme random_projective_scheme(int dim, int num_groups, double ncal, std::uint64_t seed) {
    require_positive_counts(ncal);
    if (dim < 2 || num_groups < 1) throw std::invalid_argument("random_projective_scheme: bad shape");
    Scheme s;
    s.dim = dim;
    for (int g = 0; g < num_groups; ++g) {
        auto eng = substream(seed, static_cast<std::uint64_t>(g));
        const Eigen::MatrixXcd q = haar_unitary(dim, eng);
        PovmGroup group;
        group.total_counts = ncal;
        for (int j = 0; j < dim; ++j) {
            const Eigen::VectorXcd col = q.col(j);
            group.operators.push_back(ProbabilityOperator::from_matrix(ncal * col * col.adjoint()));
        }
        s.groups.push_back(std::move(group));
    }
    return s;
}

} // namespace tomo
