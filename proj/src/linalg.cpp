#include "extridge/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace extridge {

namespace {

std::string shape_str(std::size_t r, std::size_t c) {
    return std::to_string(r) + "x" + std::to_string(c);
}

} // namespace

Vector::Vector(std::initializer_list<double> values) : entries_(values) {
    require_finite();
}

Vector Vector::from_entries(std::vector<double> entries) {
    Vector v;
    v.entries_ = std::move(entries);
    v.require_finite();
    return v;
}

void Vector::require_finite() const {
    for (double e : entries_) {
        if (!std::isfinite(e)) {
            throw InputError("vector contains a non-finite entry");
        }
    }
}

Matrix Matrix::from_entries(std::size_t rows, std::size_t cols,
                            std::vector<double> row_major) {
    if (row_major.size() != rows * cols) {
        throw InputError("entry count " + std::to_string(row_major.size()) +
                         " does not match shape " + shape_str(rows, cols));
    }
    Matrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    m.entries_ = std::move(row_major);
    m.require_finite();
    return m;
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

double Matrix::max_abs() const {
    double mx = 0.0;
    for (double e : entries_) mx = std::max(mx, std::fabs(e));
    return mx;
}

void Matrix::require_finite() const {
    for (double e : entries_) {
        if (!std::isfinite(e)) {
            throw InputError("matrix contains a non-finite entry");
        }
    }
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw InputError("matmul dimension mismatch: " +
                         shape_str(a.rows(), a.cols()) + " * " +
                         shape_str(b.rows(), b.cols()));
    }
    Matrix c(a.rows(), b.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) {
                c(i, j) += aik * b(k, j);
            }
        }
    }
    return c;
}

Matrix transpose(const Matrix& m) {
    Matrix t(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            t(j, i) = m(i, j);
        }
    }
    return t;
}

Matrix gram(const Matrix& r) {
    const std::size_t n = r.cols();
    Matrix w(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double sum = 0.0;
            for (std::size_t k = 0; k < r.rows(); ++k) {
                sum += r(k, i) * r(k, j);
            }
            w(i, j) = sum;
            w(j, i) = sum;
        }
    }
    return w;
}

Vector matvec(const Matrix& m, const Vector& v) {
    if (m.cols() != v.dim()) {
        throw InputError("matvec dimension mismatch: " +
                         shape_str(m.rows(), m.cols()) + " * vector of dim " +
                         std::to_string(v.dim()));
    }
    Vector out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            sum += m(i, j) * v[j];
        }
        out[i] = sum;
    }
    return out;
}

Vector matvec_transposed(const Matrix& m, const Vector& v) {
    if (m.rows() != v.dim()) {
        throw InputError("matvec_transposed dimension mismatch: " +
                         shape_str(m.cols(), m.rows()) + " * vector of dim " +
                         std::to_string(v.dim()));
    }
    Vector out(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            sum += m(i, j) * v[i];
        }
        out[j] = sum;
    }
    return out;
}

namespace {

double off_diagonal_norm(const Matrix& a) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (i != j) sum += a(i, j) * a(i, j);
        }
    }
    return std::sqrt(sum);
}

double frobenius_norm(const Matrix& a) {
    double sum = 0.0;
    for (double e : a.entries()) sum += e * e;
    return std::sqrt(sum);
}

} // namespace

EigenDecomposition eigh(const Matrix& s) {
    if (s.rows() != s.cols()) {
        throw InputError("eigh requires a square matrix, got " +
                         shape_str(s.rows(), s.cols()));
    }
    const std::size_t n = s.rows();
    const double scale = s.max_abs();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::fabs(s(i, j) - s(j, i)) > 1e-9 * std::max(scale, 1e-300)) {
                throw InputError("eigh input is not symmetric at (" +
                                 std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
    }

    Matrix a = s;
    Matrix v = Matrix::identity(n);
    const double target = 1e-12 * frobenius_norm(s);
    constexpr int max_sweeps = 100;

    bool converged = n < 2 || off_diagonal_norm(a) <= target;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::fabs(apq) <= 1e-300) continue;
                const double phi = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (phi >= 0 ? 1.0 : -1.0) /
                                 (std::fabs(phi) + std::sqrt(phi * phi + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                const double tau = sn / (1.0 + c);

                const double app = a(p, p);
                const double aqq = a(q, q);
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r != p && r != q) {
                        const double arp = a(r, p);
                        const double arq = a(r, q);
                        a(r, p) = a(p, r) = arp - sn * (arq + tau * arp);
                        a(r, q) = a(q, r) = arq + sn * (arp - tau * arq);
                    }
                    const double vrp = v(r, p);
                    const double vrq = v(r, q);
                    v(r, p) = vrp - sn * (vrq + tau * vrp);
                    v(r, q) = vrq + sn * (vrp - tau * vrq);
                }
            }
        }
        converged = off_diagonal_norm(a) <= target;
    }
    if (!converged) {
        throw NumericError("eigh did not converge in 100 sweeps; residual "
                           "off-diagonal norm " +
                           std::to_string(off_diagonal_norm(a)));
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

    EigenDecomposition ed;
    ed.eigenvalues = Vector(n);
    ed.eigenvectors = Matrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        ed.eigenvalues[k] = a(order[k], order[k]);
        for (std::size_t r = 0; r < n; ++r) {
            ed.eigenvectors(r, k) = v(r, order[k]);
        }
    }
    return ed;
}

Vector solve_spd(const Matrix& s, const Vector& rhs) {
    if (s.rows() != s.cols() || s.rows() != rhs.dim()) {
        throw InputError("solve_spd dimension mismatch: matrix " +
                         shape_str(s.rows(), s.cols()) + ", rhs dim " +
                         std::to_string(rhs.dim()));
    }
    const std::size_t n = s.rows();
    const double pivot_floor = 1e-13 * s.max_abs();

    // Lower-triangular Cholesky factor.
    Matrix l(n, n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double diag = s(j, j);
        for (std::size_t k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
        if (diag <= pivot_floor) {
            throw NumericError("not positive definite: pivot " +
                               std::to_string(diag) + " at index " +
                               std::to_string(j));
        }
        l(j, j) = std::sqrt(diag);
        for (std::size_t i = j + 1; i < n; ++i) {
            double sum = s(i, j);
            for (std::size_t k = 0; k < j; ++k) sum -= l(i, k) * l(j, k);
            l(i, j) = sum / l(j, j);
        }
    }

    Vector z(n);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = rhs[i];
        for (std::size_t k = 0; k < i; ++k) sum -= l(i, k) * z[k];
        z[i] = sum / l(i, i);
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double sum = z[ii];
        for (std::size_t k = ii + 1; k < n; ++k) sum -= l(k, ii) * z[k];
        z[ii] = sum / l(ii, ii);
    }
    return z;
}

} // namespace extridge
