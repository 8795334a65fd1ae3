#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "extridge/linalg.hpp"
#include "extridge/noise_model.hpp"
#include "extridge/spectrum.hpp"

namespace extridge {

/// A scalar spectral filter gamma(u) identifying an estimator of the form
/// xhat = Q diag(gamma(lambda)) Q^T R^T y, where (lambda, Q) = eigh(R^T R).
struct SpectralFilter {
    enum class Kind { Standard, Tikhonov, Optimal, Confluent, Custom };

    Kind kind = Kind::Standard;
    double t = 0.0;      // Tikhonov ridge
    double theta = 1.0;  // Optimal
    double s = 0.0;      // Optimal
    double lambda = 0.0; // Confluent deflation
    std::vector<double> table; // Custom: gamma tabulated per eigenvalue index

    static SpectralFilter standard();
    static SpectralFilter tikhonov(double t);
    static SpectralFilter optimal(double theta, double s);
    static SpectralFilter optimal(const DerivedParams& d);
    static SpectralFilter confluent(double lambda);
    static SpectralFilter custom(std::vector<double> gamma_values);

    /// Filter value at eigenvalue u. `index` selects the tabulated entry for
    /// Custom filters; `max_eig` drives the Standard truncation threshold
    /// 1e-10 * max(max_eig, 1).
    double gamma(double u, std::size_t index, double max_eig) const;

    std::string name() const;
};

/// xhat = Gamma R^T y with Gamma = Q diag(gamma(lambda)) Q^T.
/// Confluent filters fail if any eigenvalue sits within 1e-8 * max(lambda)
/// of the pole.
Vector apply_filter(const Matrix& r, const Vector& y, const SpectralFilter& f);

/// Same, on an already-computed decomposition of R^T R and precomputed R^T y.
Vector apply_filter(const EigenDecomposition& ed, const Vector& rty,
                    const SpectralFilter& f);

/// Closed form of the optimal estimator:
/// xhat = alpha (R^T R + t I)^{-1} R^T y.
Vector solve_optimal(const Matrix& r, const Vector& y, const DerivedParams& d);

/// Minimum-square solution (R^T R)^{-1} R^T y with pseudoinverse truncation
/// of near-zero eigenvalues.
Vector solve_standard(const Matrix& r, const Vector& y);

/// max over spectrum eigenvalues of u (1+u) gamma^2(u); the admissibility
/// diagnostic for membership in the filter class.
double class_k_witness(const SpectralFilter& f, const Spectrum& spec);

} // namespace extridge
