#include "extridge/noise_model.hpp"

#include <cmath>
#include <string>

namespace extridge {

NoiseModel::NoiseModel(double a_, double p_, double q_, int n_, int N_)
    : a(a_), p(p_), q(q_), n(n_), N(N_) {
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw InputError("NoiseModel requires a > 0, got a = " + std::to_string(a));
    }
    if (!(p >= 0.0) || !std::isfinite(p)) {
        throw InputError("NoiseModel requires p >= 0, got p = " + std::to_string(p));
    }
    if (!(q >= 0.0) || !std::isfinite(q)) {
        throw InputError("NoiseModel requires q >= 0, got q = " + std::to_string(q));
    }
    if (n < 1 || N < 1) {
        throw InputError("NoiseModel requires n >= 1 and N >= 1, got n = " +
                         std::to_string(n) + ", N = " + std::to_string(N));
    }
}

DerivedParams derive_params(const NoiseModel& m) {
    DerivedParams d;
    d.theta = m.a / (m.a + m.p);
    d.s = m.a * m.p / (m.a + m.p) + m.q;
    d.alpha = 1.0 / d.theta;
    d.t = d.s / (d.theta * d.theta);
    return d;
}

ProblemSample sample_instance(const NoiseModel& m, RngSpec rng) {
    CounterRng g(rng);
    const auto n = static_cast<std::size_t>(m.n);
    const auto N = static_cast<std::size_t>(m.N);
    const double sd_a = std::sqrt(m.a / m.n);
    const double sd_x = std::sqrt(1.0 / m.n);
    const double sd_p = std::sqrt(m.p / m.n);
    const double sd_q = std::sqrt(m.q / m.n);

    ProblemSample out;
    out.A = Matrix(N, n);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < n; ++j) out.A(i, j) = g.normal(sd_a);

    out.x = Vector(n);
    for (std::size_t j = 0; j < n; ++j) out.x[j] = g.normal(sd_x);

    out.b = matvec(out.A, out.x);

    out.R = out.A;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < n; ++j) out.R(i, j) += g.normal(sd_p);

    out.y = out.b;
    for (std::size_t i = 0; i < N; ++i) out.y[i] += g.normal(sd_q);

    return out;
}

SteinReport stein_check(double sigma2, long trials, RngSpec rng) {
    if (!(sigma2 > 0.0)) {
        throw InputError("stein_check requires sigma2 > 0");
    }
    if (trials < 1000) {
        throw InputError("stein_check requires trials >= 1000");
    }
    CounterRng g(rng);
    const double sd = std::sqrt(sigma2);

    double sum_lhs = 0.0, sum_rhs = 0.0, sum_d = 0.0, sum_d2 = 0.0;
    for (long k = 0; k < trials; ++k) {
        const double r = g.normal(sd);
        const double denom = 1.0 + r * r;
        const double lhs = r * (r / denom);                       // r f(r)
        const double rhs = sigma2 * (1.0 - r * r) / (denom * denom); // s^2 f'(r)
        sum_lhs += lhs;
        sum_rhs += rhs;
        const double d = lhs - rhs;
        sum_d += d;
        sum_d2 += d * d;
    }
    const double t = static_cast<double>(trials);
    const double mean_d = sum_d / t;
    const double var_d = (sum_d2 - t * mean_d * mean_d) / (t - 1.0);
    return {sum_lhs / t, sum_rhs / t, std::sqrt(var_d / t)};
}

} // namespace extridge
