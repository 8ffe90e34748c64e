#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rbfode/cone.hpp"
#include "rbfode/interpolation.hpp"
#include "rbfode/kernels.hpp"
#include "rbfode/newton.hpp"
#include "rbfode/report.hpp"

namespace rbfode {

// Direct collocation expansion: the unknown profile itself is written as a
// kernel expansion f(eta) ~ sum_j w_j phi(eta - x_j) and differentiated
// analytically as needed.
class DirectExpansion {
public:
    DirectExpansion(ConeProblem problem, KernelSpec kernel, CenterSet centers,
                    std::vector<double> weights)
        : problem_(std::move(problem)),
          kernel_(kernel),
          centers_(std::move(centers)),
          weights_(std::move(weights)) {
        if (weights_.size() != centers_.size()) {
            throw std::invalid_argument("DirectExpansion: weights/centers size mismatch");
        }
    }

    const ConeProblem& problem() const noexcept { return problem_; }
    const KernelSpec& kernel() const noexcept { return kernel_; }
    const CenterSet& centers() const noexcept { return centers_; }
    const std::vector<double>& weights() const noexcept { return weights_; }

    double eval(double eta) const {
        double s = 0.0;
        for (std::size_t j = 0; j < centers_.size(); ++j) {
            s += weights_[j] * rbfode::eval(kernel_, eta - centers_[j]);
        }
        return s;
    }

    double eval_derivative(double eta, int order) const {
        double s = 0.0;
        for (std::size_t j = 0; j < centers_.size(); ++j) {
            s += weights_[j] * rbfode::eval_derivative(kernel_, eta - centers_[j], order);
        }
        return s;
    }

private:
    ConeProblem problem_;
    KernelSpec kernel_;
    CenterSet centers_;
    std::vector<double> weights_;
};

namespace detail {

// Precomputed basis values for the direct system: level-k basis value at
// center i for weight j (level 0 is the kernel itself, level 3 its third
// derivative), plus the boundary rows.
struct DirectTableau {
    ConeProblem problem;
    std::size_t m = 0;
    bool anchor_far_field = false;
    std::array<Matrix, 4> level;
    std::vector<double> bc_value_at_0;
    std::vector<double> bc_curvature_at_0;
    std::vector<double> bc_slope_at_far;
};

inline std::vector<double> direct_basis_row(const KernelSpec& kernel, const CenterSet& centers,
                                            double eta, int lvl) {
    std::vector<double> row(centers.size());
    for (std::size_t j = 0; j < centers.size(); ++j) {
        const double t = eta - centers[j];
        row[j] = (lvl == 0) ? eval(kernel, t) : eval_derivative(kernel, t, lvl);
    }
    return row;
}

inline std::shared_ptr<const DirectTableau> make_direct_tableau(const ConeProblem& problem,
                                                                const KernelSpec& kernel,
                                                                const CenterSet& centers) {
    validate(kernel);
    const std::size_t m = centers.size();
    if (m < 4) {
        throw std::invalid_argument("assemble_direct_system: need at least 4 centers");
    }
    auto tab = std::make_shared<DirectTableau>(
        DirectTableau{problem, m, !is_decaying(kernel.family), {}, {}, {}, {}});
    for (int lvl = 0; lvl < 4; ++lvl) {
        Matrix v(m, m);
        for (std::size_t i = 0; i < m; ++i) {
            const std::vector<double> row = direct_basis_row(kernel, centers, centers[i], lvl);
            for (std::size_t j = 0; j < m; ++j) v(i, j) = row[j];
        }
        tab->level[static_cast<std::size_t>(lvl)] = std::move(v);
    }
    tab->bc_value_at_0 = direct_basis_row(kernel, centers, 0.0, 0);
    tab->bc_curvature_at_0 = direct_basis_row(kernel, centers, 0.0, 2);
    tab->bc_slope_at_far = direct_basis_row(kernel, centers, problem.eta_infinity(), 1);
    return tab;
}

inline double dot_row_direct(const Matrix& a, std::size_t i, const std::vector<double>& u) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * u[j];
    return s;
}

inline double dot_direct(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
    return s;
}

}  // namespace detail

// Nonlinear residual map for the direct method on a given center set.
// With M centers the system has M equations:
//   - the ODE residual collocated at the M - 2 interior centers,
//   - s(0) = 0,
//   - s''(0) + 1 = 0.
// Non-decaying kernels get no free far-field behavior from the basis, so for
// them the last interior collocation row is replaced by s'(eta_infinity) = 0.
inline VectorFunction assemble_direct_system(const ConeProblem& problem,
                                             const KernelSpec& kernel,
                                             const CenterSet& centers) {
    auto tab = detail::make_direct_tableau(problem, kernel, centers);
    return [tab](const std::vector<double>& w) -> std::vector<double> {
        const std::size_t m = tab->m;
        if (w.size() != m) {
            throw std::invalid_argument("direct system: weight vector size mismatch");
        }
        std::vector<double> res(m);
        // Interior centers are x_1 .. x_{m-2}; row i-1 collocates at x_i.
        for (std::size_t i = 1; i + 1 < m; ++i) {
            res[i - 1] = tab->problem.ode_residual(
                detail::dot_row_direct(tab->level[0], i, w),
                detail::dot_row_direct(tab->level[1], i, w),
                detail::dot_row_direct(tab->level[2], i, w),
                detail::dot_row_direct(tab->level[3], i, w));
        }
        if (tab->anchor_far_field) {
            res[m - 3] = detail::dot_direct(tab->bc_slope_at_far, w);
        }
        res[m - 2] = detail::dot_direct(tab->bc_value_at_0, w);
        res[m - 1] = detail::dot_direct(tab->bc_curvature_at_0, w) + 1.0;
        return res;
    };
}

// Exact Jacobian of the direct residual map (quadratic in the weights).
inline JacobianFunction assemble_direct_jacobian(const ConeProblem& problem,
                                                 const KernelSpec& kernel,
                                                 const CenterSet& centers) {
    auto tab = detail::make_direct_tableau(problem, kernel, centers);
    return [tab](const std::vector<double>& w) -> Matrix {
        const std::size_t m = tab->m;
        if (w.size() != m) {
            throw std::invalid_argument("direct system: weight vector size mismatch");
        }
        const double c1 = tab->problem.advection_coefficient();
        const double c2 = tab->problem.shear_coefficient();
        Matrix jac(m, m);
        for (std::size_t i = 1; i + 1 < m; ++i) {
            if (tab->anchor_far_field && i + 2 == m) break;
            const double y0 = detail::dot_row_direct(tab->level[0], i, w);
            const double y1 = detail::dot_row_direct(tab->level[1], i, w);
            const double y2 = detail::dot_row_direct(tab->level[2], i, w);
            for (std::size_t j = 0; j < m; ++j) {
                jac(i - 1, j) = tab->level[3](i, j) +
                                c1 * (y2 * tab->level[0](i, j) + y0 * tab->level[2](i, j)) -
                                2.0 * c2 * y1 * tab->level[1](i, j);
            }
        }
        for (std::size_t j = 0; j < m; ++j) {
            if (tab->anchor_far_field) jac(m - 3, j) = tab->bc_slope_at_far[j];
            jac(m - 2, j) = tab->bc_value_at_0[j];
            jac(m - 1, j) = tab->bc_curvature_at_0[j];
        }
        return jac;
    };
}

// Solve the direct collocation system for resolution parameter n. The center
// family divides [0, eta_infinity] into n equal cells and keeps all n + 1
// cell boundaries, including both endpoints.
inline SolveReport<DirectExpansion> drbf_solve(const ConeProblem& problem,
                                               const KernelSpec& kernel, int n,
                                               const NewtonConfig& config = {}) {
    if (n < 3) throw std::invalid_argument("drbf_solve: need n >= 3");
    const CenterSet centers =
        uniform_centers(0.0, problem.eta_infinity(), static_cast<std::size_t>(n) + 1);
    const VectorFunction system = assemble_direct_system(problem, kernel, centers);
    const JacobianFunction jacobian = assemble_direct_jacobian(problem, kernel, centers);

    const std::vector<double> x0(centers.size(), 0.0);
    NewtonReport newton = solve_newton(system, jacobian, x0, config);

    SolveReport<DirectExpansion> report{
        Method::DRBF,
        DirectExpansion(problem, kernel, centers, std::move(newton.x)),
        n};
    report.f_prime_at_0 = report.expansion.eval_derivative(0.0, 1);
    report.newton_iterations = newton.iterations;
    report.collocation_residual_inf_norm = newton.residual_norm;
    report.res_norm_sq = residual_norm_squared(report.expansion);
    report.interp_matrix_condition = cond_1(interpolation_matrix(kernel, centers));
    report.converged = newton.converged;
    report.ill_conditioned = newton.jacobian_condition > ill_conditioning_threshold;
    return report;
}

}  // namespace rbfode
