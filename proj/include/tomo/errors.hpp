#pragma once

#include <stdexcept>
#include <string>

namespace tomo {

/// Measurement matrix has rank < d*d, so linear inversion is impossible.
struct IncompleteSchemeError : std::runtime_error {
    explicit IncompleteSchemeError(const std::string& what) : std::runtime_error(what) {}
};

/// Scheme parameters collapse the measurement set (e.g. retardance at a
/// multiple of pi, where the waveplate orbit degenerates).
struct DegenerateSchemeError : std::runtime_error {
    explicit DegenerateSchemeError(const std::string& what) : std::runtime_error(what) {}
};

/// Linear inversion produced a coefficient vector with non-positive weight
/// on the identity component; no physical state can be assigned.
struct DegenerateReconstructionError : std::runtime_error {
    explicit DegenerateReconstructionError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace tomo
