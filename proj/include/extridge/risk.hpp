#pragma once

#include <vector>

#include "extridge/filters.hpp"
#include "extridge/noise_model.hpp"
#include "extridge/spectrum.hpp"

namespace extridge {

/// Theoretical risk figures evaluated on one pooled spectrum.
/// d_std is +infinity when the standard solution's risk diverges.
struct RiskReport {
    double d_filter; // risk of the filter under study
    double d_opt;    // minimal risk over the filter class
    double d_std;    // risk of the minimum-square solution, may be inf
    int spectrum_samples;
    NoiseModel model;
};

/// Draws `samples` problem instances on streams rng.stream, rng.stream+1, ...
/// and pools the eigenvalues of each R^T R. Deterministic given (seed,
/// stream range); samples are computed concurrently.
Spectrum pool_spectrum(const NoiseModel& m, int samples, RngSpec rng);

/// Per-sample values of the risk functional: sample k contributes
/// n^{-1} sum_i [1 - 2 theta u g(u) + theta^2 u^2 g^2(u) + s u g^2(u)]
/// over its block of eigenvalues. Used for both the pooled mean and its
/// sampling error.
std::vector<double> risk_functional_per_sample(const SpectralFilter& f,
                                               const Spectrum& spec,
                                               const DerivedParams& d);

/// Mean of risk_functional_per_sample: the quadratic risk of the filter on
/// this spectrum. Standard filter at a zero eigenvalue with s > 0 gives
/// +infinity.
double risk_functional(const SpectralFilter& f, const Spectrum& spec,
                       const DerivedParams& d);

/// Minimal risk: average of s/(s + theta^2 u). A dead direction (u = 0)
/// with s = 0 contributes 1 (0/0 convention: an unidentifiable component's
/// risk is its prior variance).
double risk_opt(const Spectrum& spec, const DerivedParams& d);

/// Risk of the standard solution: average of (1-theta)^2 + s/u.
/// +infinity when any eigenvalue <= 1e-300 and s > 0.
double risk_std(const Spectrum& spec, const DerivedParams& d);

/// risk_std - risk_opt; nonnegative up to roundoff.
double risk_gap(const Spectrum& spec, const DerivedParams& d);

/// Closed-form E n^{-1} tr (R^T R)^{-1} = n / ((a+p)(N-n-1)) for the
/// Wishart gram matrix of R. Requires N - n - 1 >= 1; below that the trace
/// mean is divergent.
double inverse_trace_oracle(const NoiseModel& m);

RiskReport make_risk_report(const SpectralFilter& f, const Spectrum& spec,
                            const DerivedParams& d, const NoiseModel& m);

} // namespace extridge
