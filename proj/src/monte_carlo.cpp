#include "extridge/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "extridge/detail/parallel.hpp"

namespace extridge {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Pairwise summation over [lo, hi): fixed reduction order, O(log) error.
double pairwise_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
    const std::size_t len = hi - lo;
    if (len <= 8) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += v[i];
        return s;
    }
    const std::size_t mid = lo + len / 2;
    return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

double pairwise_sum(const std::vector<double>& v) {
    return pairwise_sum(v, 0, v.size());
}

struct MeanStderr {
    double mean;
    double stderr_;
};

MeanStderr mean_and_stderr(const std::vector<double>& v) {
    const double t = static_cast<double>(v.size());
    const double mean = pairwise_sum(v) / t;
    if (v.size() < 2 || std::isinf(mean)) return {mean, 0.0};
    std::vector<double> dev2(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double d = v[i] - mean;
        dev2[i] = d * d;
    }
    const double var = pairwise_sum(dev2) / (t - 1.0);
    return {mean, std::sqrt(var / t)};
}

double median_of(std::vector<double> v) {
    if (v.empty()) return kNaN;
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw InputError("run_experiment requires trials >= 1");
    if (cfg.spectrum_samples < 1) {
        throw InputError("run_experiment requires spectrum_samples >= 1");
    }
    const std::size_t nf = cfg.filters.size();
    const auto trials = static_cast<std::size_t>(cfg.trials);

    // errs[f * trials + k]: squared error of filter f in trial k; NaN marks
    // a per-filter failure (e.g. a confluent pole), which must not disturb
    // the other filters' statistics.
    std::vector<double> errs(nf * trials, kNaN);
    std::vector<std::string> aborts(trials);

    detail::run_partitioned(static_cast<int>(cfg.trials), [&](int k) {
        try {
            const ProblemSample ps = sample_instance(
                cfg.model,
                RngSpec{cfg.seed, static_cast<std::uint64_t>(k)});
            const EigenDecomposition ed = eigh(gram(ps.R));
            const Vector rty = matvec_transposed(ps.R, ps.y);
            for (std::size_t f = 0; f < nf; ++f) {
                try {
                    const Vector xhat = apply_filter(ed, rty, cfg.filters[f]);
                    double se = 0.0;
                    for (std::size_t i = 0; i < xhat.dim(); ++i) {
                        const double d = ps.x[i] - xhat[i];
                        se += d * d;
                    }
                    errs[f * trials + static_cast<std::size_t>(k)] = se;
                } catch (const NumericError&) {
                    // stays NaN: counted as a failure for this filter only
                }
            }
        } catch (const std::exception& e) {
            aborts[static_cast<std::size_t>(k)] = e.what();
        }
    });
    for (const auto& msg : aborts) {
        if (!msg.empty()) throw NumericError("trial aborted: " + msg);
    }

    ExperimentResult out;
    out.spectrum = pool_spectrum(cfg.model, cfg.spectrum_samples,
                                 RngSpec{cfg.seed, kSpectrumStreamBase});
    const DerivedParams d = derive_params(cfg.model);

    for (std::size_t f = 0; f < nf; ++f) {
        std::vector<double> ok;
        ok.reserve(trials);
        long failures = 0;
        for (std::size_t k = 0; k < trials; ++k) {
            const double e = errs[f * trials + k];
            if (std::isnan(e)) {
                ++failures;
            } else {
                ok.push_back(e);
            }
        }
        EmpiricalRisk er;
        er.filter = cfg.filters[f].name();
        er.trials = cfg.trials;
        er.failures = failures;
        if (!ok.empty()) {
            const MeanStderr ms = mean_and_stderr(ok);
            er.mean = ms.mean;
            er.stderr_ = ms.stderr_;
            er.median = median_of(ok);
        } else {
            er.mean = er.stderr_ = er.median = kNaN;
        }
        out.empirical.push_back(std::move(er));

        TheoryEstimate te;
        const auto& filt = cfg.filters[f];
        if (filt.kind == SpectralFilter::Kind::Custom &&
            filt.table.size() != out.spectrum.size()) {
            te.value = te.stderr_ = kNaN; // table not sized for this pool
        } else {
            const MeanStderr ms =
                mean_and_stderr(risk_functional_per_sample(filt, out.spectrum, d));
            te.value = ms.mean;
            te.stderr_ = ms.stderr_;
        }
        out.theory.push_back(te);
    }

    out.report = RiskReport{out.theory.empty() ? kNaN : out.theory.front().value,
                            risk_opt(out.spectrum, d),
                            risk_std(out.spectrum, d),
                            cfg.spectrum_samples, cfg.model};
    return out;
}

std::vector<RiskCurveRow> risk_curve(const std::vector<NoiseModel>& grid,
                                     const std::vector<SpectralFilter>& filters,
                                     long trials, std::uint64_t seed,
                                     int spectrum_samples) {
    if (grid.empty()) throw InputError("risk_curve requires a non-empty grid");
    std::vector<RiskCurveRow> rows;
    for (const NoiseModel& m : grid) {
        ExperimentConfig cfg{m, filters, trials, seed, spectrum_samples};
        const ExperimentResult res = run_experiment(cfg);
        for (std::size_t f = 0; f < filters.size(); ++f) {
            RiskCurveRow row;
            row.a = m.a;
            row.p = m.p;
            row.q = m.q;
            row.n = m.n;
            row.N = m.N;
            row.filter = filters[f].name();
            row.theory = res.theory[f].value;
            row.theory_stderr = res.theory[f].stderr_;
            row.empirical = res.empirical[f].mean;
            row.stderr_ = res.empirical[f].stderr_;
            row.gap_vs_opt = row.theory - res.report.d_opt;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

QuadraticFormReport rhs_quadratic_form_check(const NoiseModel& m, long trials,
                                             RngSpec rng) {
    if (trials < 1000) {
        throw InputError("rhs_quadratic_form_check requires trials >= 1000");
    }
    const auto N = static_cast<std::size_t>(m.N);

    // Fixed symmetric test matrix, drawn once from the base stream.
    CounterRng gm(rng);
    Matrix M(N, N);
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = i; j < N; ++j) {
            const double v = gm.normal();
            M(i, j) = v;
            M(j, i) = v;
        }
    }
    double trace = 0.0;
    for (std::size_t i = 0; i < N; ++i) trace += M(i, i);
    const double expected = m.q * trace / m.n;

    const double sd = std::sqrt(m.q / m.n);
    std::vector<double> vals(static_cast<std::size_t>(trials));
    detail::run_partitioned(static_cast<int>(trials), [&](int k) {
        CounterRng g(RngSpec{rng.seed, rng.stream + 1 + static_cast<std::uint64_t>(k)});
        Vector db(N);
        for (std::size_t i = 0; i < N; ++i) db[i] = g.normal(sd);
        const Vector mdb = matvec(M, db);
        double acc = 0.0;
        for (std::size_t i = 0; i < N; ++i) acc += db[i] * mdb[i];
        vals[static_cast<std::size_t>(k)] = acc;
    });

    const MeanStderr ms = mean_and_stderr(vals);
    return {ms.mean, expected, ms.stderr_};
}

} // namespace extridge
