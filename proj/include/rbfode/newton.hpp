#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "rbfode/errors.hpp"
#include "rbfode/linalg.hpp"

namespace rbfode {

using VectorFunction = std::function<std::vector<double>(const std::vector<double>&)>;
using JacobianFunction = std::function<Matrix(const std::vector<double>&)>;

struct NewtonConfig {
    double residual_tolerance = 1e-12;  // stop when ||F||_inf falls below this
    double step_tolerance = 1e-14;      // stop when the damped step stalls
    int max_iterations = 200;
    int max_halvings = 30;  // damping: halve the step until the residual decreases
    double fd_step_scale = std::sqrt(std::numeric_limits<double>::epsilon());
};

struct NewtonReport {
    std::vector<double> x;
    double residual_norm = std::numeric_limits<double>::quiet_NaN();
    int iterations = 0;
    bool converged = false;
    std::vector<double> residual_history;  // ||F||_inf per iterate, including x0
    double jacobian_condition = 0.0;       // cond_1 of the last Jacobian factored
};

// Forward-difference Jacobian; column j uses step h_j = scale * max(1, |x_j|).
inline Matrix fd_jacobian(const VectorFunction& f, const std::vector<double>& x,
                          const std::vector<double>& f0, double scale) {
    const std::size_t n = x.size();
    Matrix jac(f0.size(), n);
    std::vector<double> xp = x;
    for (std::size_t j = 0; j < n; ++j) {
        const double h = scale * std::max(1.0, std::abs(x[j]));
        xp[j] = x[j] + h;
        const std::vector<double> fp = f(xp);
        xp[j] = x[j];
        for (std::size_t i = 0; i < f0.size(); ++i) jac(i, j) = (fp[i] - f0[i]) / h;
    }
    return jac;
}

// Damped Newton iteration for square systems F(x) = 0. The Jacobian comes
// from `jacobian` when one is supplied and from forward differences otherwise.
// A singular Jacobian raises singular_matrix_error; exhausting the iteration
// or damping budget returns converged = false with the best iterate reached,
// never a silently wrong answer.
inline NewtonReport solve_newton(const VectorFunction& f, const JacobianFunction& jacobian,
                                 std::vector<double> x, const NewtonConfig& config = {}) {
    NewtonReport report;
    std::vector<double> fx = f(x);
    if (fx.size() != x.size()) {
        throw std::invalid_argument("solve_newton: system must be square");
    }
    double norm = infinity_norm(fx);
    report.residual_history.push_back(norm);

    for (int iter = 0; iter < config.max_iterations; ++iter) {
        if (norm <= config.residual_tolerance) {
            report.converged = true;
            break;
        }
        Matrix jac = jacobian ? jacobian(x) : fd_jacobian(f, x, fx, config.fd_step_scale);
        report.jacobian_condition = cond_1(jac);
        const LUFactors lu = lu_factor(std::move(jac));

        std::vector<double> rhs(fx.size());
        for (std::size_t i = 0; i < fx.size(); ++i) rhs[i] = -fx[i];
        const std::vector<double> step = lu_solve(lu, rhs);

        double damping = 1.0;
        bool accepted = false;
        std::vector<double> x_trial(x.size());
        std::vector<double> f_trial;
        for (int halving = 0; halving <= config.max_halvings; ++halving) {
            for (std::size_t i = 0; i < x.size(); ++i) x_trial[i] = x[i] + damping * step[i];
            f_trial = f(x_trial);
            const double trial_norm = infinity_norm(f_trial);
            if (trial_norm < norm) {
                accepted = true;
                norm = trial_norm;
                break;
            }
            damping *= 0.5;
        }
        if (!accepted) break;  // stalled: no damped step reduces the residual

        const double step_size = damping * infinity_norm(step);
        x.swap(x_trial);
        fx.swap(f_trial);
        report.iterations = iter + 1;
        report.residual_history.push_back(norm);
        if (norm <= config.residual_tolerance) {
            report.converged = true;
            break;
        }
        if (step_size <= config.step_tolerance) break;  // no further progress possible
    }

    if (norm <= config.residual_tolerance) report.converged = true;
    report.x = std::move(x);
    report.residual_norm = norm;
    return report;
}

inline NewtonReport solve_newton(const VectorFunction& f, std::vector<double> x,
                                 const NewtonConfig& config = {}) {
    return solve_newton(f, JacobianFunction{}, std::move(x), config);
}

}  // namespace rbfode
