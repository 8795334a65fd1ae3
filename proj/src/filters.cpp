#include "extridge/filters.hpp"

#include <algorithm>
#include <cmath>

namespace extridge {

SpectralFilter SpectralFilter::standard() {
    return SpectralFilter{};
}

SpectralFilter SpectralFilter::tikhonov(double t) {
    if (!(t >= 0.0)) throw InputError("Tikhonov filter requires t >= 0");
    SpectralFilter f;
    f.kind = Kind::Tikhonov;
    f.t = t;
    return f;
}

SpectralFilter SpectralFilter::optimal(double theta, double s) {
    if (!(theta > 0.0) || !(s >= 0.0)) {
        throw InputError("Optimal filter requires theta > 0 and s >= 0");
    }
    SpectralFilter f;
    f.kind = Kind::Optimal;
    f.theta = theta;
    f.s = s;
    return f;
}

SpectralFilter SpectralFilter::optimal(const DerivedParams& d) {
    return optimal(d.theta, d.s);
}

SpectralFilter SpectralFilter::confluent(double lambda) {
    if (!(lambda >= 0.0)) throw InputError("Confluent filter requires lambda >= 0");
    SpectralFilter f;
    f.kind = Kind::Confluent;
    f.lambda = lambda;
    return f;
}

SpectralFilter SpectralFilter::custom(std::vector<double> gamma_values) {
    for (double g : gamma_values) {
        if (!(g >= 0.0) || !std::isfinite(g)) {
            throw InputError("Custom filter values must be finite and >= 0");
        }
    }
    SpectralFilter f;
    f.kind = Kind::Custom;
    f.table = std::move(gamma_values);
    return f;
}

double SpectralFilter::gamma(double u, std::size_t index, double max_eig) const {
    switch (kind) {
    case Kind::Standard:
        if (u <= 1e-10 * std::max(max_eig, 1.0)) return 0.0;
        return 1.0 / u;
    case Kind::Tikhonov:
        return 1.0 / (u + t);
    case Kind::Optimal:
        return theta / (theta * theta * u + s);
    case Kind::Confluent:
        return 1.0 / (u - lambda);
    case Kind::Custom:
        if (index >= table.size()) {
            throw InputError("Custom filter table has " +
                             std::to_string(table.size()) +
                             " entries, eigenvalue index " +
                             std::to_string(index) + " requested");
        }
        return table[index];
    }
    throw InputError("unknown filter kind");
}

std::string SpectralFilter::name() const {
    switch (kind) {
    case Kind::Standard: return "standard";
    case Kind::Tikhonov: return "tikhonov:" + std::to_string(t);
    case Kind::Optimal: return "optimal";
    case Kind::Confluent: return "confluent:" + std::to_string(lambda);
    case Kind::Custom: return "custom";
    }
    return "?";
}

Vector apply_filter(const EigenDecomposition& ed, const Vector& rty,
                    const SpectralFilter& f) {
    const std::size_t n = ed.eigenvalues.dim();
    const double max_eig =
        n == 0 ? 0.0 : *std::max_element(ed.eigenvalues.entries().begin(),
                                         ed.eigenvalues.entries().end());
    if (f.kind == SpectralFilter::Kind::Confluent) {
        for (std::size_t i = 0; i < n; ++i) {
            if (std::fabs(ed.eigenvalues[i] - f.lambda) <= 1e-8 * max_eig) {
                throw NumericError("deflation singularity: eigenvalue " +
                                   std::to_string(ed.eigenvalues[i]) +
                                   " at the confluent pole " +
                                   std::to_string(f.lambda));
            }
        }
    }

    Vector w = matvec_transposed(ed.eigenvectors, rty); // Q^T R^T y
    for (std::size_t i = 0; i < n; ++i) {
        w[i] *= f.gamma(ed.eigenvalues[i], i, max_eig);
    }
    return matvec(ed.eigenvectors, w);
}

Vector apply_filter(const Matrix& r, const Vector& y, const SpectralFilter& f) {
    if (r.rows() != y.dim()) {
        throw InputError("apply_filter: matrix has " + std::to_string(r.rows()) +
                         " rows but rhs has dim " + std::to_string(y.dim()));
    }
    const EigenDecomposition ed = eigh(gram(r));
    return apply_filter(ed, matvec_transposed(r, y), f);
}

Vector solve_optimal(const Matrix& r, const Vector& y, const DerivedParams& d) {
    Matrix w = gram(r);
    for (std::size_t i = 0; i < w.rows(); ++i) w(i, i) += d.t;
    Vector z = solve_spd(w, matvec_transposed(r, y));
    for (std::size_t i = 0; i < z.dim(); ++i) z[i] *= d.alpha;
    return z;
}

Vector solve_standard(const Matrix& r, const Vector& y) {
    return apply_filter(r, y, SpectralFilter::standard());
}

double class_k_witness(const SpectralFilter& f, const Spectrum& spec) {
    const double max_eig =
        spec.eigenvalues.empty()
            ? 0.0
            : *std::max_element(spec.eigenvalues.begin(), spec.eigenvalues.end());
    double witness = 0.0;
    for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i) {
        const double u = spec.eigenvalues[i];
        const double g = f.gamma(u, i, max_eig);
        witness = std::max(witness, u * (1.0 + u) * g * g);
    }
    return witness;
}

} // namespace extridge
