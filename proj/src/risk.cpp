#include "extridge/risk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "extridge/detail/parallel.hpp"

namespace extridge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using detail::run_partitioned;

} // namespace

Spectrum::Spectrum(std::vector<double> eigenvalues_, int n_, int samples_)
    : eigenvalues(std::move(eigenvalues_)), n(n_), samples(samples_) {
    if (n < 1 || samples < 1) {
        throw InputError("Spectrum requires n >= 1 and samples >= 1");
    }
    if (eigenvalues.size() != static_cast<std::size_t>(n) *
                                  static_cast<std::size_t>(samples)) {
        throw InputError("Spectrum holds " + std::to_string(eigenvalues.size()) +
                         " eigenvalues, expected n * samples = " +
                         std::to_string(static_cast<long>(n) * samples));
    }
    double max_eig = 0.0;
    for (double u : eigenvalues) max_eig = std::max(max_eig, u);
    const double floor = -1e-10 * std::max(max_eig, 1.0);
    for (double& u : eigenvalues) {
        if (u < floor) {
            throw InputError("Spectrum eigenvalue " + std::to_string(u) +
                             " is negative beyond roundoff tolerance");
        }
        if (u < 0.0) u = 0.0;
    }
}

Spectrum pool_spectrum(const NoiseModel& m, int samples, RngSpec rng) {
    if (samples < 1) throw InputError("pool_spectrum requires samples >= 1");
    const std::size_t n = static_cast<std::size_t>(m.n);
    std::vector<double> pooled(n * static_cast<std::size_t>(samples));
    std::vector<std::string> failures(static_cast<std::size_t>(samples));

    run_partitioned(samples, [&](int k) {
        try {
            const ProblemSample ps = sample_instance(
                m, RngSpec{rng.seed, rng.stream + static_cast<std::uint64_t>(k)});
            const EigenDecomposition ed = eigh(gram(ps.R));
            for (std::size_t i = 0; i < n; ++i) {
                pooled[static_cast<std::size_t>(k) * n + i] = ed.eigenvalues[i];
            }
        } catch (const std::exception& e) {
            failures[static_cast<std::size_t>(k)] = e.what();
        }
    });
    for (const auto& msg : failures) {
        if (!msg.empty()) {
            throw NumericError("pool_spectrum sample failed: " + msg);
        }
    }
    return Spectrum(std::move(pooled), m.n, samples);
}

std::vector<double> risk_functional_per_sample(const SpectralFilter& f,
                                               const Spectrum& spec,
                                               const DerivedParams& d) {
    const double max_eig =
        spec.eigenvalues.empty()
            ? 0.0
            : *std::max_element(spec.eigenvalues.begin(), spec.eigenvalues.end());
    const auto n = static_cast<std::size_t>(spec.n);
    std::vector<double> out(static_cast<std::size_t>(spec.samples));
    for (std::size_t k = 0; k < out.size(); ++k) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t idx = k * n + i;
            const double u = spec.eigenvalues[idx];
            if (f.kind == SpectralFilter::Kind::Standard && u <= 1e-300) {
                // gamma = 1/u: u gamma and u^2 gamma^2 stay finite in the
                // limit, the s u gamma^2 = s/u term diverges.
                if (d.s > 0.0) {
                    sum = kInf;
                    break;
                }
                sum += (1.0 - d.theta) * (1.0 - d.theta);
                continue;
            }
            double g = f.gamma(u, idx, max_eig);
            if (f.kind == SpectralFilter::Kind::Standard) g = 1.0 / u;
            const double ug = u * g;
            sum += 1.0 - 2.0 * d.theta * ug + d.theta * d.theta * ug * ug +
                   d.s * u * g * g;
        }
        out[k] = std::isinf(sum) ? kInf : sum / static_cast<double>(n);
    }
    return out;
}

double risk_functional(const SpectralFilter& f, const Spectrum& spec,
                       const DerivedParams& d) {
    const std::vector<double> per = risk_functional_per_sample(f, spec, d);
    double sum = 0.0;
    for (double v : per) {
        if (std::isinf(v)) return kInf;
        sum += v;
    }
    return sum / static_cast<double>(per.size());
}

double risk_opt(const Spectrum& spec, const DerivedParams& d) {
    double sum = 0.0;
    for (double u : spec.eigenvalues) {
        const double denom = d.s + d.theta * d.theta * u;
        // 0/0 at a dead direction with s = 0: no information, risk is the
        // prior variance 1.
        sum += denom > 0.0 ? d.s / denom : 1.0;
    }
    return sum / static_cast<double>(spec.size());
}

double risk_std(const Spectrum& spec, const DerivedParams& d) {
    const double bias = (1.0 - d.theta) * (1.0 - d.theta);
    double sum = 0.0;
    for (double u : spec.eigenvalues) {
        if (u <= 1e-300) {
            if (d.s > 0.0) return kInf;
            sum += bias;
        } else {
            sum += bias + d.s / u;
        }
    }
    return sum / static_cast<double>(spec.size());
}

double risk_gap(const Spectrum& spec, const DerivedParams& d) {
    const double std_risk = risk_std(spec, d);
    if (std::isinf(std_risk)) return kInf;
    return std_risk - risk_opt(spec, d);
}

double inverse_trace_oracle(const NoiseModel& m) {
    if (m.N - m.n - 1 < 1) {
        throw InputError("divergent regime: inverse-Wishart trace mean needs "
                         "N - n - 1 >= 1, got N = " + std::to_string(m.N) +
                         ", n = " + std::to_string(m.n));
    }
    return m.n / ((m.a + m.p) * (m.N - m.n - 1));
}

RiskReport make_risk_report(const SpectralFilter& f, const Spectrum& spec,
                            const DerivedParams& d, const NoiseModel& m) {
    return RiskReport{risk_functional(f, spec, d), risk_opt(spec, d),
                      risk_std(spec, d), spec.samples, m};
}

} // namespace extridge
