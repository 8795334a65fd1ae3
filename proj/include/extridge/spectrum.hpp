#pragma once

#include <cstddef>
#include <vector>

#include "extridge/errors.hpp"

namespace extridge {

/// Pooled eigenvalues of one or more sampled R^T R matrices: the empirical
/// realization of the spectral distribution the risk integrals run over.
/// Eigenvalues are stored in sample blocks of length n, each block ascending,
/// so per-sample statistics stay recoverable. Tiny negatives from roundoff
/// (>= -1e-10 * max) are clamped to zero on construction.
struct Spectrum {
    std::vector<double> eigenvalues; // n * samples values, grouped by sample
    int n = 0;
    int samples = 0;

    Spectrum() = default;
    Spectrum(std::vector<double> eigenvalues_, int n_, int samples_);

    std::size_t size() const { return eigenvalues.size(); }
};

} // namespace extridge
