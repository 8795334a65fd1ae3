#pragma once

#include <cstdint>

#include "extridge/linalg.hpp"
#include "extridge/rng.hpp"

namespace extridge {

/// Gaussian sampling model for a noisy linear system A x = b observed as
/// R = A + dA, y = b + db. Entry variances: A_ij ~ N(0, a/n),
/// x_j ~ N(0, 1/n), dA_ij ~ N(0, p/n), db_i ~ N(0, q/n).
struct NoiseModel {
    double a;
    double p;
    double q;
    int n; // unknowns
    int N; // equations

    NoiseModel() : NoiseModel(1.0, 0.0, 0.0, 1, 1) {}
    NoiseModel(double a_, double p_, double q_, int n_, int N_);

    /// True when N >= n, the regime the risk formulas target; N < n is
    /// accepted so the square / divergent case is expressible.
    bool tall() const { return N >= n; }
};

/// Parameters of the optimal estimator derived from the model:
/// theta = a/(a+p), s = a p/(a+p) + q, alpha = 1/theta, t = s/theta^2.
struct DerivedParams {
    double theta;
    double s;
    double alpha;
    double t;
};

DerivedParams derive_params(const NoiseModel& m);

/// One realized problem: true system (A, x, b) with b = A x, plus the
/// observed pair (R, y).
struct ProblemSample {
    Matrix A;
    Vector x;
    Vector b;
    Matrix R;
    Vector y;
};

/// Draw order is fixed: A row-major, then x, then dA row-major, then db.
/// Bitwise reproducible from (seed, stream).
ProblemSample sample_instance(const NoiseModel& m, RngSpec rng);

/// Monte Carlo check of the Gaussian integration-by-parts identity
/// E[r f(r)] = sigma^2 E[f'(r)] for f(r) = r/(1+r^2), r ~ N(0, sigma2).
struct SteinReport {
    double lhs;       // estimate of E[r f(r)]
    double rhs;       // estimate of sigma^2 E[f'(r)]
    double stderr_of_diff;
};

SteinReport stein_check(double sigma2, long trials,
                        RngSpec rng = {0x57e1u, 0});

} // namespace extridge
