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

// Integrated collocation expansion: the kernel expansion represents the THIRD
// derivative of the profile, and lower derivatives are recovered by exact
// repeated antiderivatives plus the integration constants d1, d2, d3:
//   f'''(eta) = sum_j w_j phi(eta - x_j)
//   f''(eta)  = sum_j w_j H2(eta - x_j) + d1
//   f'(eta)   = sum_j w_j H1(eta - x_j) + d1 eta + d2
//   f(eta)    = sum_j w_j H0(eta - x_j) + d1 eta^2 / 2 + d2 eta + d3
class IntegratedExpansion {
public:
    IntegratedExpansion(ConeProblem problem, KernelSpec kernel, CenterSet centers,
                        std::vector<double> weights, double d1, double d2, double d3)
        : problem_(std::move(problem)),
          kernel_(kernel),
          centers_(std::move(centers)),
          weights_(std::move(weights)),
          d1_(d1),
          d2_(d2),
          d3_(d3) {
        if (weights_.size() != centers_.size()) {
            throw std::invalid_argument("IntegratedExpansion: weights/centers size mismatch");
        }
    }

    const ConeProblem& problem() const noexcept { return problem_; }
    const KernelSpec& kernel() const noexcept { return kernel_; }
    const CenterSet& centers() const noexcept { return centers_; }
    const std::vector<double>& weights() const noexcept { return weights_; }
    double d1() const noexcept { return d1_; }
    double d2() const noexcept { return d2_; }
    double d3() const noexcept { return d3_; }

    double eval(double eta) const {
        double s = 0.0;
        for (std::size_t j = 0; j < centers_.size(); ++j) {
            s += weights_[j] * eval_antiderivative(kernel_, eta - centers_[j], 0);
        }
        return s + 0.5 * d1_ * eta * eta + d2_ * eta + d3_;
    }

    double eval_derivative(double eta, int order) const {
        if (order < 1 || order > 3) {
            throw std::invalid_argument("IntegratedExpansion: order must be 1, 2, or 3");
        }
        double s = 0.0;
        if (order == 3) {
            for (std::size_t j = 0; j < centers_.size(); ++j) {
                s += weights_[j] * rbfode::eval(kernel_, eta - centers_[j]);
            }
            return s;
        }
        if (order == 2) {
            for (std::size_t j = 0; j < centers_.size(); ++j) {
                s += weights_[j] * eval_antiderivative(kernel_, eta - centers_[j], 2);
            }
            return s + d1_;
        }
        for (std::size_t j = 0; j < centers_.size(); ++j) {
            s += weights_[j] * eval_antiderivative(kernel_, eta - centers_[j], 1);
        }
        return s + d1_ * eta + d2_;
    }

private:
    ConeProblem problem_;
    KernelSpec kernel_;
    CenterSet centers_;
    std::vector<double> weights_;
    double d1_ = 0.0;
    double d2_ = 0.0;
    double d3_ = 0.0;
};

namespace detail {

// Precomputed basis values for the integrated system. Column j < m belongs to
// kernel weight j; the last three columns belong to d1, d2, d3. Row i of
// level_k holds the level-k basis values at center i (level 0 is the profile
// itself, level 3 its third derivative).
struct IntegratedTableau {
    ConeProblem problem;
    std::size_t m = 0;
    std::array<Matrix, 4> level;
    std::vector<double> bc_value_at_0;       // s(0) row
    std::vector<double> bc_curvature_at_0;   // s''(0) row
    std::vector<double> bc_slope_at_far;     // s'(eta_infinity) row

    std::vector<double> basis_row(const KernelSpec& kernel, const CenterSet& centers,
                                  double eta, int lvl) const {
        std::vector<double> row(m + 3, 0.0);
        for (std::size_t j = 0; j < m; ++j) {
            const double t = eta - centers[j];
            row[j] = (lvl == 3) ? eval(kernel, t) : eval_antiderivative(kernel, t, lvl);
        }
        if (lvl == 0) {
            row[m] = 0.5 * eta * eta;
            row[m + 1] = eta;
            row[m + 2] = 1.0;
        } else if (lvl == 1) {
            row[m] = eta;
            row[m + 1] = 1.0;
        } else if (lvl == 2) {
            row[m] = 1.0;
        }
        return row;
    }
};

inline std::shared_ptr<const IntegratedTableau> make_integrated_tableau(
    const ConeProblem& problem, const KernelSpec& kernel, const CenterSet& centers) {
    validate(kernel);
    const std::size_t m = centers.size();
    if (m < 2) {
        throw std::invalid_argument("assemble_integrated_system: need at least 2 centers");
    }
    auto tab = std::make_shared<IntegratedTableau>(IntegratedTableau{problem, m, {}, {}, {}, {}});
    for (int lvl = 0; lvl < 4; ++lvl) {
        Matrix v(m, m + 3);
        for (std::size_t i = 0; i < m; ++i) {
            const std::vector<double> row = tab->basis_row(kernel, centers, centers[i], lvl);
            for (std::size_t j = 0; j < m + 3; ++j) v(i, j) = row[j];
        }
        tab->level[static_cast<std::size_t>(lvl)] = std::move(v);
    }
    tab->bc_value_at_0 = tab->basis_row(kernel, centers, 0.0, 0);
    tab->bc_curvature_at_0 = tab->basis_row(kernel, centers, 0.0, 2);
    tab->bc_slope_at_far = tab->basis_row(kernel, centers, problem.eta_infinity(), 1);
    return tab;
}

inline double dot_row(const Matrix& a, std::size_t i, const std::vector<double>& u) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * u[j];
    return s;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
    return s;
}

}  // namespace detail

// Nonlinear residual map for the integrated method on a given center set.
// With M centers the unknowns are the M kernel weights plus d1, d2, d3, and
// the M + 3 equations are:
//   - the ODE residual collocated at every center (boundary ones included),
//   - s(0) = 0,
//   - s''(0) + 1 = 0,
//   - s'(eta_infinity) = 0 (the d1 * eta_infinity term included).
inline VectorFunction assemble_integrated_system(const ConeProblem& problem,
                                                 const KernelSpec& kernel,
                                                 const CenterSet& centers) {
    auto tab = detail::make_integrated_tableau(problem, kernel, centers);
    return [tab](const std::vector<double>& u) -> std::vector<double> {
        const std::size_t m = tab->m;
        if (u.size() != m + 3) {
            throw std::invalid_argument("integrated system: unknown vector size mismatch");
        }
        std::vector<double> res(m + 3);
        for (std::size_t i = 0; i < m; ++i) {
            res[i] = tab->problem.ode_residual(
                detail::dot_row(tab->level[0], i, u), detail::dot_row(tab->level[1], i, u),
                detail::dot_row(tab->level[2], i, u), detail::dot_row(tab->level[3], i, u));
        }
        res[m] = detail::dot(tab->bc_value_at_0, u);
        res[m + 1] = detail::dot(tab->bc_curvature_at_0, u) + 1.0;
        res[m + 2] = detail::dot(tab->bc_slope_at_far, u);
        return res;
    };
}

// Exact Jacobian of the integrated residual map; the map is quadratic in the
// unknowns, so the Jacobian is linear in them and exact in closed form.
inline JacobianFunction assemble_integrated_jacobian(const ConeProblem& problem,
                                                     const KernelSpec& kernel,
                                                     const CenterSet& centers) {
    auto tab = detail::make_integrated_tableau(problem, kernel, centers);
    return [tab](const std::vector<double>& u) -> Matrix {
        const std::size_t m = tab->m;
        if (u.size() != m + 3) {
            throw std::invalid_argument("integrated system: unknown vector size mismatch");
        }
        const double c1 = tab->problem.advection_coefficient();
        const double c2 = tab->problem.shear_coefficient();
        Matrix jac(m + 3, m + 3);
        for (std::size_t i = 0; i < m; ++i) {
            const double y0 = detail::dot_row(tab->level[0], i, u);
            const double y1 = detail::dot_row(tab->level[1], i, u);
            const double y2 = detail::dot_row(tab->level[2], i, u);
            for (std::size_t j = 0; j < m + 3; ++j) {
                jac(i, j) = tab->level[3](i, j) +
                            c1 * (y2 * tab->level[0](i, j) + y0 * tab->level[2](i, j)) -
                            2.0 * c2 * y1 * tab->level[1](i, j);
            }
        }
        for (std::size_t j = 0; j < m + 3; ++j) {
            jac(m, j) = tab->bc_value_at_0[j];
            jac(m + 1, j) = tab->bc_curvature_at_0[j];
            jac(m + 2, j) = tab->bc_slope_at_far[j];
        }
        return jac;
    };
}

// Solve the integrated collocation system for resolution parameter n. The
// center family divides [0, eta_infinity] into n equal cells and keeps all
// n + 1 cell boundaries, including both endpoints.
inline SolveReport<IntegratedExpansion> irbf_solve(const ConeProblem& problem,
                                                   const KernelSpec& kernel, int n,
                                                   const NewtonConfig& config = {}) {
    if (n < 2) throw std::invalid_argument("irbf_solve: need n >= 2");
    const CenterSet centers =
        uniform_centers(0.0, problem.eta_infinity(), static_cast<std::size_t>(n) + 1);
    const VectorFunction system = assemble_integrated_system(problem, kernel, centers);
    const JacobianFunction jacobian = assemble_integrated_jacobian(problem, kernel, centers);

    const std::vector<double> x0(centers.size() + 3, 0.0);
    NewtonReport newton = solve_newton(system, jacobian, x0, config);

    std::vector<double> w(newton.x.begin(),
                          newton.x.begin() + static_cast<std::ptrdiff_t>(centers.size()));
    const double d1 = newton.x[centers.size()];
    const double d2 = newton.x[centers.size() + 1];
    const double d3 = newton.x[centers.size() + 2];

    SolveReport<IntegratedExpansion> report{
        Method::IRBF,
        IntegratedExpansion(problem, kernel, centers, std::move(w), d1, d2, d3),
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
