#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "rbfode/errors.hpp"

namespace rbfode {

// Radial kernel families. All are evaluated on a signed offset t between a
// point and a center; radial families depend on t only through |t|.
enum class KernelFamily {
    MQ,         // sqrt(t^2 + c^2)
    IMQ,        // 1 / sqrt(t^2 + c^2)
    GA,         // exp(-c t^2)
    TPS,        // (-1)^(k+1) t^(2k) log|t|
    Conical,    // |t|^(2k+1)
    ExpSpline,  // exp(-c |t|)
};

inline const char* kernel_family_name(KernelFamily f) {
    switch (f) {
        case KernelFamily::MQ: return "mq";
        case KernelFamily::IMQ: return "imq";
        case KernelFamily::GA: return "ga";
        case KernelFamily::TPS: return "tps";
        case KernelFamily::Conical: return "conical";
        case KernelFamily::ExpSpline: return "exp_spline";
    }
    return "unknown";
}

struct KernelSpec {
    KernelFamily family = KernelFamily::MQ;
    double c = 1.0;  // shape parameter (MQ, IMQ, GA, ExpSpline)
    int k = 1;       // order parameter (TPS, Conical)
};

inline void validate(const KernelSpec& spec) {
    switch (spec.family) {
        case KernelFamily::MQ:
        case KernelFamily::IMQ:
        case KernelFamily::GA:
        case KernelFamily::ExpSpline:
            if (!(spec.c > 0.0)) {
                throw std::invalid_argument("kernel: shape parameter c must be positive");
            }
            break;
        case KernelFamily::TPS:
        case KernelFamily::Conical:
            if (spec.k < 1) {
                throw std::invalid_argument("kernel: order parameter k must be >= 1");
            }
            break;
    }
}

inline KernelSpec mq(double c) { return KernelSpec{KernelFamily::MQ, c, 1}; }
inline KernelSpec imq(double c) { return KernelSpec{KernelFamily::IMQ, c, 1}; }
inline KernelSpec ga(double c) { return KernelSpec{KernelFamily::GA, c, 1}; }
inline KernelSpec tps(int k) { return KernelSpec{KernelFamily::TPS, 1.0, k}; }
inline KernelSpec conical(int k) { return KernelSpec{KernelFamily::Conical, 1.0, k}; }
inline KernelSpec exp_spline(double c) { return KernelSpec{KernelFamily::ExpSpline, c, 1}; }

// True when the kernel decays to zero as |t| grows; such bases need no extra
// far-field anchoring when used for decaying profiles.
inline bool is_decaying(KernelFamily f) {
    return f == KernelFamily::IMQ || f == KernelFamily::GA || f == KernelFamily::ExpSpline;
}

inline double eval(const KernelSpec& spec, double t) {
    validate(spec);
    switch (spec.family) {
        case KernelFamily::MQ:
            return std::sqrt(t * t + spec.c * spec.c);
        case KernelFamily::IMQ:
            return 1.0 / std::sqrt(t * t + spec.c * spec.c);
        case KernelFamily::GA:
            return std::exp(-spec.c * t * t);
        case KernelFamily::TPS: {
            if (t == 0.0) return 0.0;  // limit of t^(2k) log|t|
            const double sign = (spec.k % 2 == 0) ? -1.0 : 1.0;  // (-1)^(k+1)
            return sign * std::pow(t * t, spec.k) * std::log(std::abs(t));
        }
        case KernelFamily::Conical:
            return std::pow(std::abs(t), 2 * spec.k + 1);
        case KernelFamily::ExpSpline:
            return std::exp(-spec.c * std::abs(t));
    }
    throw std::logic_error("eval: unreachable");
}

// Derivative of order 1..3 with respect to the signed offset t.
// MQ/IMQ/GA support all three orders everywhere; TPS and Conical support
// orders 1 and 2 (k <= 2), with the TPS second derivative unbounded at t = 0
// for k = 1; ExpSpline has a kink at t = 0 and supports none.
inline double eval_derivative(const KernelSpec& spec, double t, int order) {
    validate(spec);
    if (order < 1 || order > 3) {
        throw std::invalid_argument("eval_derivative: order must be 1, 2, or 3");
    }
    const double c = spec.c;
    switch (spec.family) {
        case KernelFamily::MQ: {
            const double s = std::sqrt(t * t + c * c);
            if (order == 1) return t / s;
            if (order == 2) return c * c / (s * s * s);
            return -3.0 * c * c * t / std::pow(s, 5);
        }
        case KernelFamily::IMQ: {
            const double s = std::sqrt(t * t + c * c);
            if (order == 1) return -t / std::pow(s, 3);
            if (order == 2) return (2.0 * t * t - c * c) / std::pow(s, 5);
            return t * (9.0 * c * c - 6.0 * t * t) / std::pow(s, 7);
        }
        case KernelFamily::GA: {
            const double g = std::exp(-c * t * t);
            if (order == 1) return -2.0 * c * t * g;
            if (order == 2) return (4.0 * c * c * t * t - 2.0 * c) * g;
            return (12.0 * c * c * t - 8.0 * c * c * c * t * t * t) * g;
        }
        case KernelFamily::TPS: {
            if (spec.k > 2 || order == 3) {
                throw capability_error(
                    "eval_derivative: TPS derivatives limited to orders 1-2 with k <= 2");
            }
            const int k = spec.k;
            const double sign = (k % 2 == 0) ? -1.0 : 1.0;
            if (t == 0.0) {
                if (order == 1) return 0.0;  // limit of t^(2k-1)(2k log|t| + 1)
                if (k >= 2) return 0.0;      // limit of t^(2k-2)(...) for k >= 2
                throw std::domain_error(
                    "eval_derivative: TPS second derivative is unbounded at t = 0 for k = 1");
            }
            const double lt = std::log(std::abs(t));
            if (order == 1) {
                return sign * std::pow(t, 2 * k - 1) * (2.0 * k * lt + 1.0);
            }
            return sign * std::pow(t, 2 * k - 2) *
                   (2.0 * k * (2.0 * k - 1.0) * lt + 4.0 * k - 1.0);
        }
        case KernelFamily::Conical: {
            if (spec.k > 2 || order == 3) {
                throw capability_error(
                    "eval_derivative: Conical derivatives limited to orders 1-2 with k <= 2");
            }
            const int k = spec.k;
            const double r = std::abs(t);
            if (order == 1) return (2.0 * k + 1.0) * std::pow(r, 2 * k - 1) * t;
            return (2.0 * k + 1.0) * (2.0 * k) * std::pow(r, 2 * k - 1);
        }
        case KernelFamily::ExpSpline:
            throw capability_error(
                "eval_derivative: ExpSpline has a kink at t = 0 and is evaluation-only");
    }
    throw std::logic_error("eval_derivative: unreachable");
}

namespace detail {

// Adaptive Simpson quadrature with absolute tolerance; used for antiderivative
// stages that have no closed form.
inline double simpson_segment(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double fa, double fm, double fb, double whole, double tol,
                                   int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson_segment(a, m, fa, flm, fm);
    const double right = simpson_segment(m, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    if (depth <= 0) {
        throw numeric_error("adaptive quadrature: tolerance not met, achieved " +
                            std::to_string(std::abs(delta) / 15.0));
    }
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol) {
    if (a == b) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = simpson_segment(a, b, fa, fm, fb);
    return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 40);
}

constexpr double quadrature_tol = 1e-12;

}  // namespace detail

// Repeated antiderivatives of the kernel with respect to t.
//   stage 2: one integration of the kernel
//   stage 1: two integrations
//   stage 0: three integrations
// The integration constants are fixed per family (MQ uses the classic
// log-form primitives; the other closed forms vanish at t = 0, as do the
// quadrature-based fallbacks); any constant offset is absorbed downstream by
// the polynomial tail that accompanies an integrated expansion.
inline double eval_antiderivative(const KernelSpec& spec, double t, int stage) {
    validate(spec);
    if (stage < 0 || stage > 2) {
        throw std::invalid_argument("eval_antiderivative: stage must be 0, 1, or 2");
    }
    const double c = spec.c;
    switch (spec.family) {
        case KernelFamily::MQ: {
            const double c2 = c * c;
            const double s = std::sqrt(t * t + c2);
            const double l = std::log(t + s);
            if (stage == 2) return 0.5 * t * s + 0.5 * c2 * l;
            if (stage == 1) return s * s * s / 6.0 + 0.5 * c2 * (t * l - s);
            return t * s * s * s / 24.0 - (5.0 / 16.0) * c2 * t * s +
                   (0.25 * c2 * t * t - c2 * c2 / 16.0) * l;
        }
        case KernelFamily::IMQ: {
            const double s = std::sqrt(t * t + c * c);
            const double a = std::asinh(t / c);
            if (stage == 2) return a;
            if (stage == 1) return t * a - s + c;
            return (0.5 * t * t - 0.25 * c * c) * a - 0.75 * t * s + c * t;
        }
        case KernelFamily::GA: {
            const double sqrt_c = std::sqrt(c);
            const double half_sqrt_pi_over_a = 0.5 * std::sqrt(M_PI) / sqrt_c;
            const double e = std::erf(sqrt_c * t);
            const double g = std::exp(-c * t * t);
            if (stage == 2) return half_sqrt_pi_over_a * e;
            if (stage == 1) return half_sqrt_pi_over_a * t * e + (g - 1.0) / (2.0 * c);
            return half_sqrt_pi_over_a * (0.5 * t * t + 0.25 / c) * e + t * g / (4.0 * c) -
                   t / (2.0 * c);
        }
        case KernelFamily::TPS:
        case KernelFamily::Conical:
        case KernelFamily::ExpSpline: {
            // No closed form kept for these; integrate the next stage up from 0.
            std::function<double(double)> integrand;
            if (stage == 2) {
                integrand = [&spec](double u) { return eval(spec, u); };
            } else {
                const int upper = stage + 1;
                integrand = [&spec, upper](double u) {
                    return eval_antiderivative(spec, u, upper);
                };
            }
            return detail::adaptive_simpson(integrand, 0.0, t, detail::quadrature_tol);
        }
    }
    throw std::logic_error("eval_antiderivative: unreachable");
}

}  // namespace rbfode
