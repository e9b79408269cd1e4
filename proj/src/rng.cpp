#include "tomo/rng.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

namespace tomo {

Eigen::MatrixXcd haar_unitary(int d, std::mt19937_64& eng) {
    if (d < 1) throw std::invalid_argument("haar_unitary: dimension must be positive");
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd z(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) z(i, j) = std::complex<double>(gauss(eng), gauss(eng));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < d; ++j) {
        const std::complex<double> rjj = r(j, j);
        const double mag = std::abs(rjj);
        q.col(j) *= (mag > 0.0) ? rjj / mag : 1.0;
    }
    return q;
}

Eigen::VectorXd dirichlet_flat(int d, std::mt19937_64& eng) {
    std::exponential_distribution<double> expo(1.0);
    Eigen::VectorXd lambda(d);
    for (int i = 0; i < d; ++i) lambda(i) = expo(eng);
    return lambda / lambda.sum();
}

double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 32) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

int worker_count() {
    int n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("TOMO_THREADS")) {
        try {
            const int cap = std::stoi(env);
            if (cap >= 1) n = std::min(n, cap);
        } catch (const std::exception&) {
            // unparsable value: ignore, keep hardware default
        }
    }
    return n;
}

} // namespace tomo
