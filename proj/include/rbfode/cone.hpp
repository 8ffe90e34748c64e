#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace rbfode {

// Similarity problem for natural convection about a vertical cone embedded in
// a saturated porous medium with a power-law surface heat flux q_w ~ x^lambda.
// The reduced stream function f(eta) satisfies
//
//     f''' + ((lambda + 5) / 2) f f'' - ((2 lambda + 1) / 3) (f')^2 = 0
//     f(0) = 0,  f''(0) = -1,  f'(eta -> infinity) = 0
//
// and the wall-temperature similarity value is f'(0).
// Exact rational exponent, so the ODE coefficients carry no decimal-parsing
// error for values like 1/3.
struct Rational {
    long long num = 0;
    long long den = 1;
    double value() const {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        return static_cast<double>(num) / static_cast<double>(den);
    }
};

class ConeProblem {
public:
    ConeProblem(Rational lambda, double eta_infinity = 4.5)
        : num_(lambda.num), den_(lambda.den), eta_infinity_(eta_infinity) {
        init(lambda.value());
    }

    explicit ConeProblem(double lambda, double eta_infinity = 4.5)
        : num_(0), den_(0), eta_infinity_(eta_infinity) {
        init(lambda);
    }

    double lambda() const noexcept { return lambda_; }
    double eta_infinity() const noexcept { return eta_infinity_; }
    double advection_coefficient() const noexcept { return advection_coefficient_; }
    double shear_coefficient() const noexcept { return shear_coefficient_; }
    bool has_exact_lambda() const noexcept { return den_ != 0; }
    long long lambda_numerator() const noexcept { return num_; }
    long long lambda_denominator() const noexcept { return den_; }

    // Residual of the similarity equation at one point, given f and its first
    // three derivatives. Scales quadratically under (f, f', f'', f''') ->
    // (a f, a f', a f'', a^2 f''').
    double ode_residual(double f, double f1, double f2, double f3) const noexcept {
        return f3 + advection_coefficient_ * f * f2 - shear_coefficient_ * f1 * f1;
    }

private:
    void init(double lambda) {
        if (lambda < 0.0) throw std::invalid_argument("ConeProblem: lambda must be >= 0");
        if (!(eta_infinity_ > 0.0)) {
            throw std::invalid_argument("ConeProblem: eta_infinity must be positive");
        }
        lambda_ = lambda;
        advection_coefficient_ = (lambda + 5.0) / 2.0;
        shear_coefficient_ = (2.0 * lambda + 1.0) / 3.0;
    }

    long long num_ = 0;
    long long den_ = 1;
    double lambda_ = 0.0;
    double eta_infinity_ = 4.5;
    double advection_coefficient_ = 2.5;
    double shear_coefficient_ = 1.0 / 3.0;
};

// Dimensional inputs for the modified Rayleigh number.
struct FluidProperties {
    double density = 1.0;               // rho_infinity
    double expansion = 1.0;             // beta
    double gravity = 9.81;              // g
    double permeability = 1.0;          // K
    double cone_half_angle = 0.0;       // gamma, radians
    double dynamic_viscosity = 1.0;     // mu
    double thermal_diffusivity = 1.0;   // alpha
    double thermal_conductivity = 1.0;  // k
};

inline double rayleigh_number(const FluidProperties& p, double heat_flux, double x) {
    if (p.dynamic_viscosity <= 0.0 || p.thermal_diffusivity <= 0.0 ||
        p.thermal_conductivity <= 0.0) {
        throw std::invalid_argument("rayleigh_number: transport properties must be positive");
    }
    return p.density * p.expansion * p.gravity * p.permeability * std::cos(p.cone_half_angle) *
           heat_flux * x * x /
           (p.dynamic_viscosity * p.thermal_diffusivity * p.thermal_conductivity);
}

// Local Nusselt number scaled by Ra^(1/3) is proportional to 1 / f'(0).
inline double nusselt_ratio(double f_prime_at_0) {
    if (!(f_prime_at_0 > 0.0)) {
        throw std::domain_error("nusselt_ratio: requires f'(0) > 0, got " +
                                std::to_string(f_prime_at_0));
    }
    return 1.0 / f_prime_at_0;
}

}  // namespace rbfode
