#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rbfode/kernels.hpp"
#include "rbfode/linalg.hpp"

namespace rbfode {

// A strictly increasing set of collocation centers on the real line.
class CenterSet {
public:
    CenterSet() = default;
    explicit CenterSet(std::vector<double> points) : points_(std::move(points)) {
        if (points_.empty()) throw std::invalid_argument("CenterSet: must be non-empty");
        for (std::size_t i = 1; i < points_.size(); ++i) {
            if (!(points_[i] > points_[i - 1])) {
                throw std::invalid_argument("CenterSet: points must be strictly increasing");
            }
        }
    }

    std::size_t size() const noexcept { return points_.size(); }
    double operator[](std::size_t i) const { return points_[i]; }
    const std::vector<double>& points() const noexcept { return points_; }
    double front() const { return points_.front(); }
    double back() const { return points_.back(); }

private:
    std::vector<double> points_;
};

// `count` equally spaced points on [a, b] including both endpoints.
inline CenterSet uniform_centers(double a, double b, std::size_t count) {
    if (count < 2) throw std::invalid_argument("uniform_centers: need at least 2 points");
    if (!(b > a)) throw std::invalid_argument("uniform_centers: need b > a");
    std::vector<double> pts(count);
    const double h = (b - a) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) pts[i] = a + static_cast<double>(i) * h;
    pts.back() = b;  // exact right endpoint regardless of rounding
    return CenterSet(std::move(pts));
}

// Square collocation matrix A(i, j) = phi(x_i - x_j).
inline Matrix interpolation_matrix(const KernelSpec& kernel, const CenterSet& centers) {
    const std::size_t n = centers.size();
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a(i, j) = eval(kernel, centers[i] - centers[j]);
        }
    }
    return a;
}

// A fitted radial-basis interpolant s(x) = sum_j w_j phi(x - x_j).
struct RBFInterpolant {
    KernelSpec kernel;
    CenterSet centers;
    std::vector<double> weights;
    double condition = 0.0;  // 1-norm condition estimate of the fit matrix

    double eval(double x) const {
        double s = 0.0;
        for (std::size_t j = 0; j < centers.size(); ++j) {
            s += weights[j] * rbfode::eval(kernel, x - centers[j]);
        }
        return s;
    }

    double eval_derivative(double x, int order) const {
        double s = 0.0;
        for (std::size_t j = 0; j < centers.size(); ++j) {
            s += weights[j] * rbfode::eval_derivative(kernel, x - centers[j], order);
        }
        return s;
    }
};

// Fit interpolation weights through the given values at the centers.
inline RBFInterpolant fit_interpolant(const KernelSpec& kernel, const CenterSet& centers,
                                      const std::vector<double>& values) {
    if (values.size() != centers.size()) {
        throw std::invalid_argument("fit_interpolant: values/centers size mismatch");
    }
    Matrix a = interpolation_matrix(kernel, centers);
    const double cond = cond_1(a);
    std::vector<double> w = solve_dense(a, values);
    return RBFInterpolant{kernel, centers, std::move(w), cond};
}

}  // namespace rbfode
