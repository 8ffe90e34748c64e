#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "rbfode/errors.hpp"

namespace rbfode {

// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

inline double infinity_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// Maximum absolute column sum.
inline double one_norm(const Matrix& a) {
    double m = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i) s += std::abs(a(i, j));
        m = std::max(m, s);
    }
    return m;
}

// LU factorization with partial (row) pivoting, done in place.
// `perm[i]` is the original row index that ended up in row i.
// Throws singular_matrix_error when a pivot falls below the hard floor.
struct LUFactors {
    Matrix lu;
    std::vector<std::size_t> perm;
};

inline LUFactors lu_factor(Matrix a) {
    constexpr double pivot_floor = 1e-300;
    const std::size_t n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("lu_factor: matrix must be square");

    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(a(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (best < pivot_floor) {
            throw singular_matrix_error("lu_factor: pivot " + std::to_string(best) +
                                        " below threshold at column " + std::to_string(k));
        }
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            std::swap(perm[k], perm[p]);
        }
        const double inv_pivot = 1.0 / a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double l = a(i, k) * inv_pivot;
            a(i, k) = l;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= l * a(k, j);
        }
    }
    return LUFactors{std::move(a), std::move(perm)};
}

inline std::vector<double> lu_solve(const LUFactors& f, const std::vector<double>& b) {
    const std::size_t n = f.lu.rows();
    if (b.size() != n) throw std::invalid_argument("lu_solve: size mismatch");

    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
    // Forward substitution with unit lower triangle.
    for (std::size_t i = 1; i < n; ++i) {
        double s = x[i];
        for (std::size_t j = 0; j < i; ++j) s -= f.lu(i, j) * x[j];
        x[i] = s;
    }
    // Back substitution.
    for (std::size_t ii = n; ii-- > 0;) {
        double s = x[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= f.lu(ii, j) * x[j];
        x[ii] = s / f.lu(ii, ii);
    }
    return x;
}

// Convenience: solve A x = b from scratch.
inline std::vector<double> solve_dense(const Matrix& a, const std::vector<double>& b) {
    return lu_solve(lu_factor(a), b);
}

inline Matrix inverse(const Matrix& a) {
    const std::size_t n = a.rows();
    const LUFactors f = lu_factor(a);
    Matrix inv(n, n);
    std::vector<double> e(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        e[j] = 1.0;
        const std::vector<double> col = lu_solve(f, e);
        e[j] = 0.0;
        for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
    }
    return inv;
}

// 1-norm condition number via the explicit inverse. Returns +infinity for a
// matrix that is singular to working precision instead of throwing, so that
// conditioning diagnostics never abort a solve.
inline double cond_1(const Matrix& a) {
    try {
        return one_norm(a) * one_norm(inverse(a));
    } catch (const singular_matrix_error&) {
        return std::numeric_limits<double>::infinity();
    }
}

}  // namespace rbfode
