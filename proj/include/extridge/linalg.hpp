#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "extridge/errors.hpp"

namespace extridge {

/// Dense vector of doubles. Entries are required to be finite when the
/// vector is built from external data.
class Vector {
public:
    Vector() = default;
    explicit Vector(std::size_t dim, double fill = 0.0) : entries_(dim, fill) {}
    Vector(std::initializer_list<double> values);

    static Vector from_entries(std::vector<double> entries);

    std::size_t dim() const { return entries_.size(); }
    double& operator[](std::size_t i) { return entries_[i]; }
    double operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<double>& entries() const { return entries_; }

    void require_finite() const;

private:
    std::vector<double> entries_;
};

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), entries_(rows * cols, fill) {}

    static Matrix from_entries(std::size_t rows, std::size_t cols,
                               std::vector<double> row_major);
    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
    const std::vector<double>& entries() const { return entries_; }

    double max_abs() const;
    void require_finite() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> entries_;
};

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& m);

/// R^T R, computed symmetric: entry (i,j) is stored identical to (j,i).
Matrix gram(const Matrix& r);

Vector matvec(const Matrix& m, const Vector& v);           // m v
Vector matvec_transposed(const Matrix& m, const Vector& v); // m^T v

/// Eigenvalues ascending; eigenvector i is column i of `eigenvectors`.
struct EigenDecomposition {
    Vector eigenvalues;
    Matrix eigenvectors;
};

/// Symmetric eigendecomposition by cyclic Jacobi sweeps. Converges when the
/// off-diagonal Frobenius norm drops below 1e-12 * ||S||_F; capped at 100
/// sweeps. Input must be symmetric to 1e-9 relative tolerance.
EigenDecomposition eigh(const Matrix& s);

/// Solve S z = rhs for symmetric positive definite S via Cholesky.
/// A pivot at or below 1e-13 * max|S| fails as "not positive definite".
Vector solve_spd(const Matrix& s, const Vector& rhs);

} // namespace extridge
