#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "extridge/filters.hpp"
#include "extridge/noise_model.hpp"
#include "extridge/risk.hpp"

namespace extridge {

struct ExperimentConfig {
    NoiseModel model;
    std::vector<SpectralFilter> filters;
    long trials = 1;
    std::uint64_t seed = 0;
    int spectrum_samples = 1; // for the theoretical side
};

/// Per-filter Monte Carlo risk estimate. The median is a heavy-tail
/// diagnostic only; all contracts are on the mean.
struct EmpiricalRisk {
    double mean = 0.0;
    double stderr_ = 0.0;
    double median = 0.0;
    long trials = 0;
    long failures = 0;
    std::string filter;
};

/// Theoretical risk on the pooled spectrum, with the sampling error of the
/// pooling itself (the spectrum is a finite draw, so the theory side carries
/// its own uncertainty).
struct TheoryEstimate {
    double value = 0.0;
    double stderr_ = 0.0;
};

struct ExperimentResult {
    std::vector<EmpiricalRisk> empirical; // one per filter, config order
    std::vector<TheoryEstimate> theory;   // parallel to empirical
    RiskReport report;                    // d_filter is the first filter's
    Spectrum spectrum;                    // the pooled theoretical spectrum
};

/// Runs `trials` independent problem draws on streams (seed, 0..trials-1),
/// applies every filter to the same draw (common random numbers), and
/// measures mean squared error per filter. The theoretical spectrum pool
/// runs on disjoint streams. Deterministic given the config; trials execute
/// concurrently and aggregate in fixed order.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

struct RiskCurveRow {
    double a, p, q;
    int n, N;
    std::string filter;
    double theory;
    double theory_stderr;
    double empirical;
    double stderr_;
    double gap_vs_opt; // theory minus the optimal risk on the same spectrum
};

/// One row per (model, filter) over the grid; divergent cells carry +inf.
std::vector<RiskCurveRow> risk_curve(const std::vector<NoiseModel>& grid,
                                     const std::vector<SpectralFilter>& filters,
                                     long trials, std::uint64_t seed,
                                     int spectrum_samples = 200);

/// Monte Carlo check of E[db^T M db] = q n^{-1} tr M for a fixed seeded
/// random symmetric M and db ~ N(0, (q/n) I).
struct QuadraticFormReport {
    double estimate;
    double expected;
    double stderr_;
};

QuadraticFormReport rhs_quadratic_form_check(const NoiseModel& m, long trials,
                                             RngSpec rng = {0x0f0du, 0});

} // namespace extridge
