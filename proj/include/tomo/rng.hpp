#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace tomo {

/// SplitMix64 finalizer; used to whiten seeds and derive substreams.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Engine for substream `index` of `seed`. Substreams are independent of
/// execution order, which keeps parallel trial loops deterministic.
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(index + 1)));
}

/// One Poisson draw. std::poisson_distribution requires mean > 0.
inline long poisson_draw(std::mt19937_64& eng, double mean) {
    if (mean <= 0.0) return 0;
    std::poisson_distribution<long> dist(mean);
    return dist(eng);
}

/// Haar-distributed d x d unitary: QR of a complex Ginibre matrix with the
/// R diagonal phases absorbed into Q.
Eigen::MatrixXcd haar_unitary(int d, std::mt19937_64& eng);

/// Flat Dirichlet sample on the probability simplex (normalized Exp(1) draws).
Eigen::VectorXd dirichlet_flat(int d, std::mt19937_64& eng);

/// Pairwise (tree-order) summation; deterministic regardless of how the
/// values were produced, accurate for long accumulations.
double pairwise_sum(std::span<const double> values);

/// Worker count for parallel sections: min(hardware, TOMO_THREADS if set).
int worker_count();

} // namespace tomo
