// Command-line front end: solve single systems, run Monte Carlo experiments,
// dump pooled spectra, and sweep model grids into plot-ready CSV tables.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "extridge/io.hpp"
#include "extridge/monte_carlo.hpp"

using namespace extridge;

namespace {

SpectralFilter parse_filter(const std::string& spec, const DerivedParams& d) {
    if (spec == "standard") return SpectralFilter::standard();
    if (spec == "optimal") return SpectralFilter::optimal(d);
    const auto colon = spec.find(':');
    if (colon != std::string::npos) {
        const std::string kind = spec.substr(0, colon);
        double value = 0.0;
        try {
            value = std::stod(spec.substr(colon + 1));
        } catch (const std::exception&) {
            throw InputError("bad filter parameter in \"" + spec + "\"");
        }
        if (kind == "tikhonov") return SpectralFilter::tikhonov(value);
        if (kind == "confluent") return SpectralFilter::confluent(value);
    }
    if (spec == "tikhonov") {
        throw InputError("tikhonov filter needs a ridge value: tikhonov:t");
    }
    throw InputError("unknown filter \"" + spec +
                     "\" (expected standard, optimal, tikhonov:t, confluent:l)");
}

std::vector<SpectralFilter> parse_filter_list(const std::string& csv,
                                              const DerivedParams& d) {
    std::vector<SpectralFilter> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(parse_filter(item, d));
    }
    if (out.empty()) throw InputError("empty filter list");
    return out;
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw InputError("cannot write file: " + path);
    return file;
}

double z_score(double emp, double emp_se, double th, double th_se) {
    const double diff = emp - th;
    const double se = std::sqrt(emp_se * emp_se + th_se * th_se);
    if (se == 0.0) return diff == 0.0 ? 0.0 : std::copysign(INFINITY, diff);
    return diff / se;
}

struct SolveArgs {
    std::string matrix_path, rhs_path, method = "optimal", out_path;
    double a = 1.0, p = 0.0, q = 0.0;
};

int cmd_solve(const SolveArgs& args) {
    const Matrix r = read_matrix_file(args.matrix_path);
    const Vector y = read_vector_file(args.rhs_path);
    if (r.rows() != y.dim()) {
        throw InputError("matrix has " + std::to_string(r.rows()) +
                         " rows but rhs has dim " + std::to_string(y.dim()));
    }
    const NoiseModel model(args.a, args.p, args.q, static_cast<int>(r.cols()),
                           static_cast<int>(r.rows()));
    const DerivedParams d = derive_params(model);
    const SpectralFilter filter = parse_filter(args.method, d);

    const Vector xhat = args.method == "optimal" ? solve_optimal(r, y, d)
                                                 : apply_filter(r, y, filter);

    if (args.out_path.empty()) {
        for (std::size_t i = 0; i < xhat.dim(); ++i) {
            std::cout << format_double(xhat[i]) << "\n";
        }
    } else {
        write_vector_csv(args.out_path, xhat);
    }

    // Theoretical risk on this matrix's own single-sample spectrum.
    const EigenDecomposition ed = eigh(gram(r));
    Spectrum spec(ed.eigenvalues.entries(), static_cast<int>(r.cols()), 1);
    std::cout << "theta = " << format_double(d.theta) << "\n"
              << "s = " << format_double(d.s) << "\n"
              << "alpha = " << format_double(d.alpha) << "\n"
              << "t = " << format_double(d.t) << "\n"
              << "risk[" << args.method
              << "] = " << format_double(risk_functional(filter, spec, d))
              << "\n"
              << "risk[optimal-bound] = " << format_double(risk_opt(spec, d))
              << "\n";
    return 0;
}

struct McArgs {
    double a = 1.0, p = 0.0, q = 0.0;
    int n = 1, N = 1, samples = 200;
    long trials = 1000;
    std::uint64_t seed = 0;
    std::string filters = "optimal,standard";
    std::string format = "csv";
    std::string out_path;
};

int cmd_mc(const McArgs& args) {
    const NoiseModel model(args.a, args.p, args.q, args.n, args.N);
    const DerivedParams d = derive_params(model);
    ExperimentConfig cfg{model, parse_filter_list(args.filters, d), args.trials,
                         args.seed, args.samples};
    const ExperimentResult res = run_experiment(cfg);

    std::ofstream file;
    std::ostream& out = open_out(file, args.out_path);
    if (args.format == "json") {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t f = 0; f < cfg.filters.size(); ++f) {
            rows.push_back({{"filter", res.empirical[f].filter},
                            {"empirical_mean", res.empirical[f].mean},
                            {"stderr", res.empirical[f].stderr_},
                            {"theory", res.theory[f].value},
                            {"z_score", z_score(res.empirical[f].mean,
                                                res.empirical[f].stderr_,
                                                res.theory[f].value,
                                                res.theory[f].stderr_)},
                            {"failures", res.empirical[f].failures}});
        }
        out << rows.dump(2) << "\n";
    } else if (args.format == "csv") {
        out << "filter,empirical_mean,stderr,theory,z_score\n";
        for (std::size_t f = 0; f < cfg.filters.size(); ++f) {
            out << res.empirical[f].filter << ","
                << format_double(res.empirical[f].mean) << ","
                << format_double(res.empirical[f].stderr_) << ","
                << format_double(res.theory[f].value) << ","
                << format_double(z_score(res.empirical[f].mean,
                                         res.empirical[f].stderr_,
                                         res.theory[f].value,
                                         res.theory[f].stderr_))
                << "\n";
        }
    } else {
        throw InputError("unknown format \"" + args.format + "\"");
    }
    return 0;
}

struct SpectrumArgs {
    double a = 1.0, p = 0.0;
    int n = 1, N = 1, samples = 1;
    std::uint64_t seed = 0;
    std::string out_path;
};

int cmd_spectrum(const SpectrumArgs& args) {
    const NoiseModel model(args.a, args.p, 0.0, args.n, args.N);
    const Spectrum spec = pool_spectrum(model, args.samples, RngSpec{args.seed, 0});

    std::ofstream file;
    std::ostream& out = open_out(file, args.out_path);
    out << "sample,eigenvalue\n";
    for (int k = 0; k < spec.samples; ++k) {
        for (int i = 0; i < spec.n; ++i) {
            out << k << ","
                << format_double(
                       spec.eigenvalues[static_cast<std::size_t>(k) * spec.n + i])
                << "\n";
        }
    }

    double sum = 0.0, mn = spec.eigenvalues.front(), inv_sum = 0.0;
    for (double u : spec.eigenvalues) {
        sum += u;
        mn = std::min(mn, u);
        inv_sum += u > 0.0 ? 1.0 / u : INFINITY;
    }
    const double count = static_cast<double>(spec.size());
    std::ostream& summary = args.out_path.empty() ? std::cerr : std::cout;
    summary << "mean_eigenvalue = " << format_double(sum / count) << "\n"
            << "min_eigenvalue = " << format_double(mn) << "\n"
            << "inv_trace_estimate = " << format_double(inv_sum / count) << "\n";
    if (model.N - model.n - 1 >= 1) {
        summary << "inv_trace_oracle = "
                << format_double(inverse_trace_oracle(model)) << "\n";
    } else {
        summary << "inv_trace_oracle = divergent regime\n";
    }
    return 0;
}

template <typename T>
std::vector<T> axis_values(const nlohmann::json& j, const std::string& key,
                           T fallback) {
    if (!j.contains(key)) return {fallback};
    const auto& v = j.at(key);
    if (v.is_array()) return v.get<std::vector<T>>();
    return {v.get<T>()};
}

int cmd_sweep(const std::string& config_path, const std::string& out_path) {
    std::ifstream in(config_path);
    if (!in) throw InputError("cannot open file: " + config_path);
    nlohmann::json cfg;
    try {
        cfg = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(config_path + ": " + e.what());
    }
    static const std::vector<std::string> known = {
        "a", "p", "q", "n", "N", "filters", "trials", "seed", "samples"};
    for (const auto& [key, value] : cfg.items()) {
        (void)value;
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw InputError("unknown config key \"" + key + "\"");
        }
    }
    const auto as = axis_values<double>(cfg, "a", 1.0);
    const auto ps = axis_values<double>(cfg, "p", 0.0);
    const auto qs = axis_values<double>(cfg, "q", 0.0);
    const auto ns = axis_values<int>(cfg, "n", 1);
    const auto Ns = axis_values<int>(cfg, "N", 1);
    const auto filter_names = cfg.contains("filters")
                                  ? cfg["filters"].get<std::vector<std::string>>()
                                  : std::vector<std::string>{"optimal", "standard"};
    const long trials = cfg.value("trials", 1000L);
    const auto seed = cfg.value("seed", std::uint64_t{0});
    const int samples = cfg.value("samples", 200);

    std::ofstream file;
    std::ostream& out = open_out(file, out_path);
    out << "a,p,q,n,N,filter,theory,empirical,stderr,gap_vs_opt\n";
    for (double a : as)
        for (double p : ps)
            for (double q : qs)
                for (int n : ns)
                    for (int N : Ns) {
                        const NoiseModel model(a, p, q, n, N);
                        const DerivedParams d = derive_params(model);
                        std::vector<SpectralFilter> filters;
                        for (const auto& name : filter_names) {
                            filters.push_back(parse_filter(name, d));
                        }
                        for (const RiskCurveRow& row : risk_curve(
                                 {model}, filters, trials, seed, samples)) {
                            out << format_double(row.a) << ","
                                << format_double(row.p) << ","
                                << format_double(row.q) << "," << row.n << ","
                                << row.N << "," << row.filter << ","
                                << format_double(row.theory) << ","
                                << format_double(row.empirical) << ","
                                << format_double(row.stderr_) << ","
                                << format_double(row.gap_vs_opt) << "\n";
                        }
                    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimum-risk solutions to linear systems with Gaussian-noisy "
                 "coefficients and right-hand sides"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    auto* solve = app.add_subcommand("solve", "Solve one system from files");
    solve->add_option("--matrix", solve_args.matrix_path)->required();
    solve->add_option("--rhs", solve_args.rhs_path)->required();
    solve->add_option("--a", solve_args.a);
    solve->add_option("--p", solve_args.p);
    solve->add_option("--q", solve_args.q);
    solve->add_option("--method", solve_args.method);
    solve->add_option("--out", solve_args.out_path);

    McArgs mc_args;
    auto* mc = app.add_subcommand("mc", "Monte Carlo risk experiment");
    mc->add_option("--a", mc_args.a);
    mc->add_option("--p", mc_args.p);
    mc->add_option("--q", mc_args.q);
    mc->add_option("--n", mc_args.n)->required();
    mc->add_option("--N", mc_args.N)->required();
    mc->add_option("--trials", mc_args.trials);
    mc->add_option("--seed", mc_args.seed);
    mc->add_option("--samples", mc_args.samples);
    mc->add_option("--filters", mc_args.filters);
    mc->add_option("--format", mc_args.format);
    mc->add_option("--out", mc_args.out_path);

    SpectrumArgs sp_args;
    auto* sp = app.add_subcommand("spectrum", "Pooled eigenvalue spectrum");
    sp->add_option("--a", sp_args.a);
    sp->add_option("--p", sp_args.p);
    sp->add_option("--n", sp_args.n)->required();
    sp->add_option("--N", sp_args.N)->required();
    sp->add_option("--samples", sp_args.samples);
    sp->add_option("--seed", sp_args.seed);
    sp->add_option("--out", sp_args.out_path);

    std::string sweep_config, sweep_out;
    auto* sweep = app.add_subcommand("sweep", "Risk table over a model grid");
    sweep->add_option("--config", sweep_config)->required();
    sweep->add_option("--out", sweep_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (solve->parsed()) return cmd_solve(solve_args);
        if (mc->parsed()) return cmd_mc(mc_args);
        if (sp->parsed()) return cmd_spectrum(sp_args);
        if (sweep->parsed()) return cmd_sweep(sweep_config, sweep_out);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
