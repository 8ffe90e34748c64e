#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "rbfode/cone.hpp"
#include "rbfode/interpolation.hpp"
#include "rbfode/kernels.hpp"

namespace rbfode {

enum class Method { DRBF, IRBF };

inline const char* method_name(Method m) {
    return m == Method::DRBF ? "drbf" : "irbf";
}

// Outcome of one collocation solve. `Expansion` is the method's fitted
// expansion object; it must expose problem(), eval(eta) and
// eval_derivative(eta, order) for orders 1..3 on [0, eta_infinity].
template <class Expansion>
struct SolveReport {
    Method method = Method::DRBF;
    Expansion expansion;
    int n = 0;  // resolution parameter handed to the solver
    double f_prime_at_0 = 0.0;
    int newton_iterations = 0;
    double collocation_residual_inf_norm = 0.0;  // ||F||_inf at the final iterate
    double res_norm_sq = 0.0;                    // integral of the squared ODE residual
    double interp_matrix_condition = 0.0;        // cond_1 of the plain kernel matrix
    bool converged = false;
    bool ill_conditioned = false;  // Jacobian cond_1 exceeded the flag threshold
};

// Jacobians beyond this 1-norm condition are flagged, not rejected.
inline constexpr double ill_conditioning_threshold = 1e14;

struct ProfileSample {
    double eta = 0.0;
    double f = 0.0;
    double f1 = 0.0;
    double f2 = 0.0;
};

// Integral of the squared similarity-equation residual over [0, eta_infinity],
// composite trapezoid rule on `grid_points` equispaced samples.
template <class Expansion>
double residual_norm_squared(const Expansion& expansion, const ConeProblem& problem,
                             std::size_t grid_points = 1001) {
    if (grid_points < 2) {
        throw std::invalid_argument("residual_norm_squared: need at least 2 grid points");
    }
    const double b = problem.eta_infinity();
    const double h = b / static_cast<double>(grid_points - 1);
    double sum = 0.0;
    for (std::size_t i = 0; i < grid_points; ++i) {
        const double eta = (i + 1 == grid_points) ? b : static_cast<double>(i) * h;
        const double r = problem.ode_residual(expansion.eval(eta),
                                              expansion.eval_derivative(eta, 1),
                                              expansion.eval_derivative(eta, 2),
                                              expansion.eval_derivative(eta, 3));
        const double w = (i == 0 || i + 1 == grid_points) ? 0.5 : 1.0;
        sum += w * r * r;
    }
    return sum * h;
}

template <class Expansion>
double residual_norm_squared(const Expansion& expansion, std::size_t grid_points = 1001) {
    return residual_norm_squared(expansion, expansion.problem(), grid_points);
}

// Evaluate (f, f', f'') at the requested stations; stations must lie inside
// the truncated domain.
template <class Expansion>
std::vector<ProfileSample> sample_profile(const Expansion& expansion,
                                          const std::vector<double>& etas) {
    const double b = expansion.problem().eta_infinity();
    std::vector<ProfileSample> out;
    out.reserve(etas.size());
    for (double eta : etas) {
        if (eta < 0.0 || eta > b + 1e-12) {
            throw std::domain_error("sample_profile: eta " + std::to_string(eta) +
                                    " outside [0, " + std::to_string(b) + "]");
        }
        out.push_back(ProfileSample{eta, expansion.eval(eta), expansion.eval_derivative(eta, 1),
                                    expansion.eval_derivative(eta, 2)});
    }
    return out;
}

}  // namespace rbfode
