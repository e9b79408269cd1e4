#include "tomo/basis.hpp"
#include "tomo/errors.hpp"
#include "tomo/measmat.hpp"
#include "tomo/povm.hpp"
#include "tomo/rng.hpp"
#include "tomo/simulate.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace tomo;

TEST_CASE("pauli six measurement matrix and pseudo-inverse match the reference") {
    const double ncal = 2.5;
    const MeasurementMatrix m = build_matrix(pauli_six_scheme(ncal));
    CHECK((m.matrix() - oracles::pauli6_matrix(ncal)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(m.rank() == 4);
    CHECK((m.pseudo_inverse() - oracles::pauli6_pseudo_inverse(ncal)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("single full-trace operator produces a single identity-component row") {
    const double ncal = 3.0;
    Scheme s;
    s.dim = 2;
    PovmGroup g;
    g.total_counts = ncal;
    g.operators.push_back(ProbabilityOperator::from_matrix(ncal * Eigen::MatrixXcd::Identity(2, 2)));
    s.groups.push_back(std::move(g));

    const MeasurementMatrix m = build_matrix(s);
    REQUIRE(m.rows() == 1);
    Eigen::RowVector4d expected(ncal, 0, 0, 0);
    CHECK((m.matrix() - expected).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(m.rank() == 1);
    CHECK_FALSE(m.complete());
}

TEST_CASE("six-orientation waveplate scheme reproduces the published 12x4 matrix") {
    auto eng = substream(17, 0);
    std::uniform_real_distribution<double> uni(0.05, std::numbers::pi - 0.05);
    for (int trial = 0; trial < 20; ++trial) {
        const double beta = uni(eng);
        const double ncal = 1.0 + trial * 0.25;
        const MeasurementMatrix m = build_matrix(ftt_scheme(beta, 6, ncal));
        const Eigen::MatrixXd published = oracles::ftt12_matrix(beta, ncal);
        // rows are grouped (H_k, V_k); the reference lists the H block first
        for (int i = 0; i < 12; ++i) {
            const int built_row = oracles::ftt12_row_in_built(i);
            CHECK((m.matrix().row(built_row) - published.row(i)).cwiseAbs().maxCoeff() < 1e-12);
        }

        const Eigen::Vector4d mu = oracles::ftt12_singular_values(beta, ncal);
        Eigen::Vector4d mu_sorted = mu;
        std::sort(mu_sorted.data(), mu_sorted.data() + 4, std::greater<double>());
        for (int i = 0; i < 4; ++i)
            CHECK(m.singular_values()(i) == doctest::Approx(mu_sorted(i)).epsilon(1e-9));
    }
}

TEST_CASE("svd factorization and pseudo-inverse identities") {
    const std::vector<Scheme> schemes = {pauli_six_scheme(2.0), sic_povm_qubit(1.0), ftt_scheme(1.3, 6, 1.0),
                                         random_projective_scheme(3, 4, 1.5, 31)};
    for (const auto& s : schemes) {
        const MeasurementMatrix m = build_matrix(s);
        const Eigen::MatrixXd& u = m.left_singular_vectors();
        const Eigen::MatrixXd& v = m.right_singular_vectors();
        const Eigen::MatrixXd rebuilt = u * m.singular_values().asDiagonal() * v.transpose();
        CHECK((rebuilt - m.matrix()).cwiseAbs().maxCoeff() < 1e-10);

        REQUIRE(m.complete());
        const Eigen::MatrixXd& pinv = m.pseudo_inverse();
        const Eigen::MatrixXd mp = m.matrix() * pinv;
        const Eigen::MatrixXd pm = pinv * m.matrix();
        CHECK((pm - Eigen::MatrixXd::Identity(m.cols(), m.cols())).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((mp - mp.transpose()).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((pm - pm.transpose()).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((m.matrix() * pinv * m.matrix() - m.matrix()).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((pinv * m.matrix() * pinv - pinv).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("square complete matrix inverts exactly") {
    const MeasurementMatrix m = build_matrix(sic_povm_qubit(2.0));
    REQUIRE(m.rows() == m.cols());
    const Eigen::MatrixXd& pinv = m.pseudo_inverse();
    CHECK((m.matrix() * pinv - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((pinv * m.matrix() - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("rank-deficient schemes are reported") {
    Scheme s;
    s.dim = 2;
    PovmGroup g;
    g.total_counts = 1.0;
    g.operators.push_back(ProbabilityOperator::from_matrix(Eigen::MatrixXcd::Identity(2, 2)));
    s.groups.push_back(g);
    s.groups.push_back(g);

    const MeasurementMatrix m = build_matrix(s);
    CHECK(m.rank() == 1);
    CHECK_THROWS_WITH_AS(m.pseudo_inverse(), doctest::Contains("rank 1"), IncompleteSchemeError);
    CHECK_THROWS_AS(m.reconstruct(Eigen::VectorXd::Zero(2)), IncompleteSchemeError);
}

TEST_CASE("expected counts") {
    const double ncal = 4.0;
    const MeasurementMatrix m = build_matrix(pauli_six_scheme(ncal));

    SUBCASE("horizontal state") {
        Eigen::VectorXd a(4);
        a << 1, 0, 0, 1;
        Eigen::VectorXd expected(6);
        expected << ncal, 0, ncal / 2, ncal / 2, ncal / 2, ncal / 2;
        CHECK((m.expected_counts(a) - expected).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("maximally mixed state sees alpha/d per outcome") {
        Eigen::VectorXd mixed = Eigen::VectorXd::Zero(4);
        mixed(0) = 1.0;
        const Eigen::VectorXd n = m.expected_counts(mixed);
        for (Eigen::Index j = 0; j < n.size(); ++j) CHECK(n(j) == doctest::Approx(m.alphas()(j) / 2));
    }
    SUBCASE("group sums equal the group counts for physical states") {
        const HermitianBasis basis(2);
        for (int k = 0; k < 10; ++k) {
            auto eng = substream(23, static_cast<std::uint64_t>(k));
            const Eigen::MatrixXcd rho = random_state(2, dirichlet_flat(2, eng), 900 + k);
            const Eigen::VectorXd n = m.expected_counts(basis.density_to_coeffs(rho));
            for (int g = 0; g < 3; ++g) CHECK(n(2 * g) + n(2 * g + 1) == doctest::Approx(ncal).epsilon(1e-12));
        }
    }
    SUBCASE("shape mismatch") { CHECK_THROWS_AS(m.expected_counts(Eigen::VectorXd::Zero(5)), std::invalid_argument); }
}

TEST_CASE("reconstruction") {
    const double ncal = 2.0;
    const MeasurementMatrix m = build_matrix(pauli_six_scheme(ncal));

    SUBCASE("reference linear combination of counts") {
        auto eng = substream(29, 0);
        std::uniform_real_distribution<double> uni(0.0, 50.0);
        for (int k = 0; k < 50; ++k) {
            Eigen::VectorXd n(6);
            for (int j = 0; j < 6; ++j) n(j) = uni(eng);
            const Eigen::VectorXd a = m.reconstruct(n);
            Eigen::VectorXd expected(4);
            expected << n.sum() / 3.0, n(2) - n(3), n(4) - n(5), n(0) - n(1);
            expected /= ncal;
            CHECK((a - expected).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
    SUBCASE("noiseless round trip over random states") {
        const HermitianBasis basis(2);
        for (int k = 0; k < 100; ++k) {
            auto eng = substream(31, static_cast<std::uint64_t>(k));
            const Eigen::MatrixXcd rho = random_state(2, dirichlet_flat(2, eng), 310 + k);
            const Eigen::VectorXd a = basis.density_to_coeffs(rho);
            CHECK((m.reconstruct(m.expected_counts(a)) - a).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
    SUBCASE("least-squares optimality: residual orthogonal to the column space") {
        auto eng = substream(37, 0);
        std::uniform_real_distribution<double> uni(0.0, 10.0);
        for (int k = 0; k < 20; ++k) {
            Eigen::VectorXd n(6);
            for (int j = 0; j < 6; ++j) n(j) = uni(eng);
            const Eigen::VectorXd a = m.reconstruct(n);
            const Eigen::VectorXd residual = n - m.matrix() * a;
            CHECK((m.matrix().transpose() * residual).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("structural identities of the measurement matrix") {
    const HermitianBasis basis2(2), basis3(3);
    const std::vector<Scheme> schemes = {pauli_six_scheme(1.5), sic_povm_qubit(2.0), ftt_scheme(0.8, 6, 1.0),
                                         ftt_scheme(2.2, 9, 0.5), random_projective_scheme(3, 4, 1.0, 77)};
    for (const auto& s : schemes) {
        const HermitianBasis& basis = s.dim == 2 ? basis2 : basis3;
        const MeasurementMatrix m = build_matrix(s, basis);

        // singular values squared are the eigenvalues of M^T M
        const Eigen::MatrixXd gram = m.matrix().transpose() * m.matrix();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
        Eigen::VectorXd eig = es.eigenvalues().reverse();
        for (Eigen::Index i = 0; i < eig.size(); ++i) {
            const double mu2 = m.singular_values()(i) * m.singular_values()(i);
            CHECK(std::abs(mu2 - eig(i)) < 1e-10 * std::max(1.0, eig(0)));
        }

        // trace identity: sum of diagonal = sum mu_i^2 = sum alpha_i^2 / d
        const double diag_sum = gram.trace();
        const double mu_sum = m.singular_values().squaredNorm();
        const double alpha_sum = m.alphas().squaredNorm() / s.dim;
        CHECK(diag_sum == doctest::Approx(mu_sum).epsilon(1e-9));
        CHECK(diag_sum == doctest::Approx(alpha_sum).epsilon(1e-9));

        // row lengths: sum_k Tr[sigma_k E_i]^2 = 2 alpha_i^2
        const auto ops = s.flat_operators();
        for (size_t i = 0; i < ops.size(); ++i) {
            double sum = 0.0;
            for (int k = 0; k < basis.size(); ++k) {
                const double t = (basis.element(k) * ops[i]->matrix).trace().real();
                sum += t * t;
            }
            CHECK(sum == doctest::Approx(2.0 * ops[i]->alpha * ops[i]->alpha).epsilon(1e-9));
        }
    }
}

TEST_CASE("dimension mismatch is rejected") {
    CHECK_THROWS_AS(build_matrix(pauli_six_scheme(1.0), HermitianBasis(3)), std::invalid_argument);
}

TEST_CASE("simplex projection") {
    SUBCASE("already on the simplex") {
        Eigen::VectorXd v(3);
        v << 0.2, 0.5, 0.3;
        CHECK((project_to_simplex(v) - v).cwiseAbs().maxCoeff() < 1e-15);
    }
    SUBCASE("clipping a negative eigenvalue") {
        Eigen::VectorXd v(2);
        v << 1.1, -0.1;
        Eigen::VectorXd expected(2);
        expected << 1.0, 0.0;
        CHECK((project_to_simplex(v) - expected).cwiseAbs().maxCoeff() < 1e-15);
    }
}

TEST_CASE("projection to the nearest physical state") {
    const HermitianBasis basis(2);

    SUBCASE("physical states are fixed points") {
        for (int k = 0; k < 20; ++k) {
            auto eng = substream(41, static_cast<std::uint64_t>(k));
            const Eigen::MatrixXcd rho = random_state(2, dirichlet_flat(2, eng), 410 + k);
            const Eigen::VectorXd a = basis.density_to_coeffs(rho);
            CHECK((project_to_physical(a, basis) - rho).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
    SUBCASE("overlong Bloch vector lands on the boundary projector") {
        Eigen::VectorXd a(4);
        a << 1, 0, 0, 1.2;
        Eigen::Matrix2cd h_proj;
        h_proj << 1, 0, 0, 0;
        CHECK((project_to_physical(a, basis) - h_proj).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("non-positive identity weight is an error") {
        Eigen::VectorXd a(4);
        a << 0.0, 0, 0, 1;
        CHECK_THROWS_AS(project_to_physical(a, basis), DegenerateReconstructionError);
        a(0) = -0.5;
        CHECK_THROWS_AS(project_to_physical(a, basis), DegenerateReconstructionError);
    }
    SUBCASE("projected error is at most twice the raw error") {
        // triangle bound against the true state over noisy reconstructions
        const MeasurementMatrix m = build_matrix(pauli_six_scheme(100.0));
        Eigen::VectorXd truth(4);
        truth << 1, 0, 0, 1; // boundary state, projections frequently active
        const Eigen::VectorXd expected = m.expected_counts(truth);
        for (int t = 0; t < 1000; ++t) {
            auto eng = substream(43, static_cast<std::uint64_t>(t));
            Eigen::VectorXd counts(6);
            for (Eigen::Index j = 0; j < 6; ++j)
                counts(j) = static_cast<double>(poisson_draw(eng, expected(j)));
            const Eigen::VectorXd a_li = m.reconstruct(counts);
            if (!(a_li(0) > 0.0)) continue;
            const Eigen::VectorXd a_ph = basis.density_to_coeffs(project_to_physical(a_li, basis));
            Eigen::VectorXd a_li_scaled = a_li / a_li(0);
            const double d_ph = (a_ph - truth).norm();
            const double d_li = (a_li_scaled - truth).norm();
            CHECK(d_ph <= 2.0 * d_li + 1e-12);
        }
    }
}
