#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "rbfode/cone.hpp"
#include "rbfode/errors.hpp"

namespace rbfode {

// Reference integrator: embedded Dormand-Prince 4(5) pair with PI step-size
// control and 4th-order dense output, specialized to the 3-component cone
// similarity system y = (f, f', f'').

using State = std::array<double, 3>;

inline State cone_rhs(const ConeProblem& problem, const State& y) {
    return State{y[1], y[2], -problem.advection_coefficient() * y[0] * y[2] +
                                 problem.shear_coefficient() * y[1] * y[1]};
}

struct ShootingConfig {
    double eta_max = 15.0;               // where the far-field condition is imposed
    double integration_tolerance = 1e-10;  // absolute and relative
    double root_tolerance = 1e-10;       // on the far-field slope g(s) = f'(eta_max)
    double bracket_lo = 0.5;             // initial bracket for s = f'(0)
    double bracket_hi = 1.5;
    double initial_step = 1e-3;
    std::size_t max_steps = 200000;
};

// One accepted integrator step with its dense-output polynomial.
struct DenseStep {
    double t0 = 0.0;
    double h = 0.0;
    std::array<State, 5> rcont{};
};

class Trajectory {
public:
    Trajectory() = default;
    Trajectory(std::vector<DenseStep> steps, double t_end)
        : steps_(std::move(steps)), t_end_(t_end) {}

    double t_begin() const { return steps_.empty() ? 0.0 : steps_.front().t0; }
    double t_end() const { return t_end_; }
    std::size_t step_count() const { return steps_.size(); }

    // Dense-output evaluation of (f, f', f'') at eta within [t_begin, t_end].
    State eval(double eta) const {
        if (steps_.empty()) throw numeric_error("Trajectory::eval: empty trajectory");
        const double slack = 1e-12 * std::max(1.0, std::abs(t_end_));
        if (eta < t_begin() - slack || eta > t_end_ + slack) {
            throw std::domain_error("Trajectory::eval: eta " + std::to_string(eta) +
                                    " outside integrated range");
        }
        eta = std::clamp(eta, t_begin(), t_end_);
        // Find the step whose interval contains eta.
        std::size_t lo = 0;
        std::size_t hi = steps_.size();
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            if (steps_[mid].t0 <= eta) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        const DenseStep& st = steps_[lo];
        const double theta = std::clamp((eta - st.t0) / st.h, 0.0, 1.0);
        State y;
        for (int i = 0; i < 3; ++i) {
            const auto& r = st.rcont;
            y[i] = r[0][i] +
                   theta * (r[1][i] + (1.0 - theta) *
                                          (r[2][i] + theta * (r[3][i] + (1.0 - theta) * r[4][i])));
        }
        return y;
    }

private:
    std::vector<DenseStep> steps_;
    double t_end_ = 0.0;
};

namespace detail {

// Dormand-Prince coefficients.
inline constexpr double dp_c[7] = {0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0};
inline constexpr double dp_a21 = 1.0 / 5.0;
inline constexpr double dp_a31 = 3.0 / 40.0, dp_a32 = 9.0 / 40.0;
inline constexpr double dp_a41 = 44.0 / 45.0, dp_a42 = -56.0 / 15.0, dp_a43 = 32.0 / 9.0;
inline constexpr double dp_a51 = 19372.0 / 6561.0, dp_a52 = -25360.0 / 2187.0,
                        dp_a53 = 64448.0 / 6561.0, dp_a54 = -212.0 / 729.0;
inline constexpr double dp_a61 = 9017.0 / 3168.0, dp_a62 = -355.0 / 33.0,
                        dp_a63 = 46732.0 / 5247.0, dp_a64 = 49.0 / 176.0,
                        dp_a65 = -5103.0 / 18656.0;
inline constexpr double dp_b1 = 35.0 / 384.0, dp_b3 = 500.0 / 1113.0, dp_b4 = 125.0 / 192.0,
                        dp_b5 = -2187.0 / 6784.0, dp_b6 = 11.0 / 84.0;
// Error weights: 5th-order minus embedded 4th-order coefficients.
inline constexpr double dp_e1 = 71.0 / 57600.0, dp_e3 = -71.0 / 16695.0, dp_e4 = 71.0 / 1920.0,
                        dp_e5 = -17253.0 / 339200.0, dp_e6 = 22.0 / 525.0, dp_e7 = -1.0 / 40.0;
// Dense-output weights.
inline constexpr double dp_d1 = -12715105075.0 / 11282082432.0,
                        dp_d3 = 87487479700.0 / 32700410799.0,
                        dp_d4 = -10690763975.0 / 1880347072.0,
                        dp_d5 = 701980252875.0 / 199316789632.0,
                        dp_d6 = -1453857185.0 / 822651844.0, dp_d7 = 69997945.0 / 29380423.0;

inline bool finite(const State& y) {
    return std::isfinite(y[0]) && std::isfinite(y[1]) && std::isfinite(y[2]);
}

}  // namespace detail

// Integrate the similarity system from eta = 0 with initial state
// (0, slope, -1) up to config.eta_max. Escaping solutions raise
// divergence_error whose direction() reports the sign of the runaway slope.
inline Trajectory integrate_ivp(const ConeProblem& problem, double slope,
                                const ShootingConfig& config = {}) {
    using namespace detail;
    constexpr double blow_up = 1e8;

    const double atol = config.integration_tolerance;
    const double rtol = config.integration_tolerance;

    double t = 0.0;
    State y{0.0, slope, -1.0};
    State k1 = cone_rhs(problem, y);
    double h = std::min(config.initial_step, config.eta_max);
    double errold = 1e-4;

    std::vector<DenseStep> steps;
    std::size_t n_steps = 0;

    while (t < config.eta_max) {
        if (++n_steps > config.max_steps) {
            throw numeric_error("integrate_ivp: exceeded " + std::to_string(config.max_steps) +
                                " steps");
        }
        if (h < 1e-14 * std::max(1.0, std::abs(t))) {
            const int dir = (y[1] >= 0.0) ? 1 : -1;
            throw divergence_error("integrate_ivp: step size underflow at eta = " +
                                       std::to_string(t) + " (solution escaping)",
                                   dir);
        }
        if (t + h > config.eta_max) h = config.eta_max - t;

        State k2, k3, k4, k5, k6, k7, ynew, yt;
        for (int i = 0; i < 3; ++i) yt[i] = y[i] + h * dp_a21 * k1[i];
        k2 = cone_rhs(problem, yt);
        for (int i = 0; i < 3; ++i) yt[i] = y[i] + h * (dp_a31 * k1[i] + dp_a32 * k2[i]);
        k3 = cone_rhs(problem, yt);
        for (int i = 0; i < 3; ++i) {
            yt[i] = y[i] + h * (dp_a41 * k1[i] + dp_a42 * k2[i] + dp_a43 * k3[i]);
        }
        k4 = cone_rhs(problem, yt);
        for (int i = 0; i < 3; ++i) {
            yt[i] = y[i] +
                    h * (dp_a51 * k1[i] + dp_a52 * k2[i] + dp_a53 * k3[i] + dp_a54 * k4[i]);
        }
        k5 = cone_rhs(problem, yt);
        for (int i = 0; i < 3; ++i) {
            yt[i] = y[i] + h * (dp_a61 * k1[i] + dp_a62 * k2[i] + dp_a63 * k3[i] +
                                dp_a64 * k4[i] + dp_a65 * k5[i]);
        }
        k6 = cone_rhs(problem, yt);
        for (int i = 0; i < 3; ++i) {
            ynew[i] = y[i] + h * (dp_b1 * k1[i] + dp_b3 * k3[i] + dp_b4 * k4[i] +
                                  dp_b5 * k5[i] + dp_b6 * k6[i]);
        }
        k7 = cone_rhs(problem, ynew);

        if (!finite(ynew) || std::abs(ynew[1]) > blow_up || std::abs(ynew[0]) > blow_up) {
            const double probe = finite(ynew) ? ynew[1] : y[1];
            throw divergence_error("integrate_ivp: solution escaped near eta = " +
                                       std::to_string(t),
                                   probe >= 0.0 ? 1 : -1);
        }

        // Scaled RMS error estimate.
        double err = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double e = h * (dp_e1 * k1[i] + dp_e3 * k3[i] + dp_e4 * k4[i] +
                                  dp_e5 * k5[i] + dp_e6 * k6[i] + dp_e7 * k7[i]);
            const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            err += (e / sc) * (e / sc);
        }
        err = std::sqrt(err / 3.0);

        if (err <= 1.0) {
            DenseStep st;
            st.t0 = t;
            st.h = h;
            for (int i = 0; i < 3; ++i) {
                const double dy = ynew[i] - y[i];
                st.rcont[0][i] = y[i];
                st.rcont[1][i] = dy;
                st.rcont[2][i] = h * k1[i] - dy;
                st.rcont[3][i] = dy - h * k7[i] - st.rcont[2][i];
                st.rcont[4][i] = h * (dp_d1 * k1[i] + dp_d3 * k3[i] + dp_d4 * k4[i] +
                                      dp_d5 * k5[i] + dp_d6 * k6[i] + dp_d7 * k7[i]);
            }
            steps.push_back(st);
            t += h;
            y = ynew;
            k1 = k7;  // first-same-as-last
            double fac = 0.9 * std::pow(std::max(err, 1e-16), -0.2) * std::pow(errold, 0.08);
            fac = std::clamp(fac, 0.2, 5.0);
            h *= fac;
            errold = std::max(err, 1e-4);
        } else {
            double fac = 0.9 * std::pow(err, -0.2);
            fac = std::clamp(fac, 0.2, 1.0);
            h *= fac;
        }
    }
    return Trajectory(std::move(steps), config.eta_max);
}

struct ShootResult {
    double f_prime_at_0 = 0.0;       // converged initial slope s
    double far_field_slope = 0.0;    // g(s) = f'(eta_max) at the root
    int bisection_iterations = 0;
    int secant_iterations = 0;
    Trajectory trajectory;           // integration at the converged slope
};

namespace detail {

// One probe of the shooting map. `sign` is the side of the root the slope
// lies on; `g` is f'(eta_max) and is only meaningful when `g_valid`.
//
// The raw map s -> f'(eta_max; s) is treacherous below the root: an
// undershooting profile crosses f' = 0, and the quadratic slope term can then
// swing f' back to large positive values before eta_max, producing false
// positive lobes. Such rebounds are detected by scanning the trajectory for a
// negative f' excursion; a rebound probe counts as "below the root" and its
// end value is discarded.
struct ShootProbe {
    int sign = 0;
    double g = 0.0;
    bool g_valid = false;
};

inline ShootProbe probe_slope(const ConeProblem& problem, double s,
                              const ShootingConfig& config) {
    constexpr double crossing_eps = 1e-8;
    constexpr int scan_samples = 2000;
    try {
        const Trajectory traj = integrate_ivp(problem, s, config);
        bool crossed = false;
        for (int i = 1; i <= scan_samples; ++i) {
            const double eta = config.eta_max * static_cast<double>(i) / scan_samples;
            if (traj.eval(eta)[1] < -crossing_eps) {
                crossed = true;
                break;
            }
        }
        const double g = traj.eval(config.eta_max)[1];
        if (crossed && g > 0.0) return ShootProbe{-1, g, false};  // rebound
        return ShootProbe{g >= 0.0 ? 1 : -1, g, true};
    } catch (const divergence_error& e) {
        return ShootProbe{e.direction() >= 0 ? 1 : -1, 0.0, false};
    }
}

}  // namespace detail

// Solve the far-field condition f'(eta_max) = 0 for the initial slope:
// bisection on the undershoot/overshoot classification down to a bracket of
// width 1e-4 (continued while an endpoint is still rebound-contaminated),
// then secant refinement of f'(eta_max) inside the bracket.
inline ShootResult shoot(const ConeProblem& problem, const ShootingConfig& config = {}) {
    if (!(config.eta_max > problem.eta_infinity())) {
        throw std::invalid_argument("shoot: eta_max must exceed the truncated domain");
    }
    if (!(config.bracket_lo < config.bracket_hi)) {
        throw std::invalid_argument("shoot: bracket must be ordered");
    }
    double lo = config.bracket_lo;
    double hi = config.bracket_hi;
    detail::ShootProbe p_lo = detail::probe_slope(problem, lo, config);
    detail::ShootProbe p_hi = detail::probe_slope(problem, hi, config);
    if (p_lo.sign == p_hi.sign) {
        throw bracketing_error("shoot: far-field slope does not change sign on [" +
                                   std::to_string(lo) + ", " + std::to_string(hi) +
                                   "]; endpoint values " + std::to_string(p_lo.g) + " and " +
                                   std::to_string(p_hi.g),
                               p_lo.g, p_hi.g);
    }
    if (p_lo.sign > 0) {
        std::swap(lo, hi);
        std::swap(p_lo, p_hi);
    }

    ShootResult result;
    while ((std::abs(hi - lo) > 1e-4 || !p_lo.g_valid || !p_hi.g_valid) &&
           std::abs(hi - lo) > 4e-16 * std::max(1.0, std::abs(lo))) {
        const double mid = 0.5 * (lo + hi);
        const detail::ShootProbe p_mid = detail::probe_slope(problem, mid, config);
        ++result.bisection_iterations;
        if (p_mid.sign < 0) {
            lo = mid;
            p_lo = p_mid;
        } else {
            hi = mid;
            p_hi = p_mid;
        }
    }

    // Secant refinement inside the bracket, falling back to bisection whenever
    // the secant step leaves it.
    double s0 = lo, g0 = p_lo.g;
    double s1 = hi, g1 = p_hi.g;
    double s_best = std::abs(g0) < std::abs(g1) ? s0 : s1;
    double g_best = std::abs(g0) < std::abs(g1) ? g0 : g1;
    const double inner_lo = std::min(lo, hi);
    const double inner_hi = std::max(lo, hi);
    double b_lo = inner_lo, b_hi = inner_hi;
    double gb_lo = (lo < hi) ? g0 : g1;
    for (int i = 0; i < 80 && std::abs(g_best) > config.root_tolerance; ++i) {
        double s2;
        if (g1 != g0) {
            s2 = s1 - g1 * (s1 - s0) / (g1 - g0);
        } else {
            s2 = 0.5 * (b_lo + b_hi);
        }
        if (!(s2 > b_lo) || !(s2 < b_hi)) s2 = 0.5 * (b_lo + b_hi);
        const detail::ShootProbe p2 = detail::probe_slope(problem, s2, config);
        ++result.secant_iterations;
        if (p2.g_valid && std::abs(p2.g) < std::abs(g_best)) {
            s_best = s2;
            g_best = p2.g;
        }
        if (p2.sign < 0) {
            b_lo = s2;
            gb_lo = p2.g;
        } else {
            b_hi = s2;
        }
        s0 = s1;
        g0 = g1;
        s1 = s2;
        g1 = p2.g_valid ? p2.g : gb_lo;
        if (b_hi - b_lo < 1e-15 * std::max(1.0, std::abs(s2))) break;
    }
    if (std::abs(g_best) > config.root_tolerance) {
        throw numeric_error("shoot: far-field slope " + std::to_string(g_best) +
                            " did not reach tolerance " +
                            std::to_string(config.root_tolerance));
    }

    result.f_prime_at_0 = s_best;
    result.far_field_slope = g_best;
    result.trajectory = integrate_ivp(problem, s_best, config);
    return result;
}

}  // namespace rbfode
