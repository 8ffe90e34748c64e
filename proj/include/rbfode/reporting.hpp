#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "rbfode/drbf.hpp"
#include "rbfode/errors.hpp"
#include "rbfode/irbf.hpp"
#include "rbfode/report.hpp"

namespace rbfode {

// Default kernel family per method: the direct method pairs with a decaying
// basis, the integrated method with the multiquadric.
inline KernelFamily default_family(Method m) {
    return m == Method::DRBF ? KernelFamily::IMQ : KernelFamily::MQ;
}

template <class Expansion>
struct ScanEntry {
    double c = 0.0;
    std::optional<SolveReport<Expansion>> report;  // empty when the solve threw
    std::string error;                             // populated when the solve threw
};

template <class Expansion>
struct ScanResult {
    std::vector<ScanEntry<Expansion>> entries;
    std::optional<std::size_t> best;  // converged entry with the smallest res_norm_sq
};

namespace detail {

template <class Expansion, class Solver>
ScanResult<Expansion> scan_shape_parameter_impl(double c_min, double c_max, std::size_t steps,
                                                Solver&& solve_at) {
    if (steps < 2) throw std::invalid_argument("scan: need at least 2 steps");
    if (!(c_min > 0.0) || !(c_min < c_max)) {
        throw std::invalid_argument("scan: need 0 < c_min < c_max");
    }
    ScanResult<Expansion> result;
    result.entries.reserve(steps);
    double best_norm = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < steps; ++i) {
        const double c = c_min + (c_max - c_min) * static_cast<double>(i) /
                                     static_cast<double>(steps - 1);
        ScanEntry<Expansion> entry;
        entry.c = c;
        try {
            entry.report = solve_at(c);
            if (entry.report->converged && entry.report->res_norm_sq < best_norm) {
                best_norm = entry.report->res_norm_sq;
                result.best = i;
            }
        } catch (const singular_matrix_error& e) {
            entry.error = e.what();
        } catch (const numeric_error& e) {
            entry.error = e.what();
        }
        result.entries.push_back(std::move(entry));
    }
    return result;
}

}  // namespace detail

// Sweep the shape parameter over `steps` equispaced values in [c_min, c_max]
// (endpoints included) and solve at each one; per-value solver failures are
// recorded in the entry rather than aborting the sweep.
inline ScanResult<DirectExpansion> scan_shape_parameter_direct(
    const ConeProblem& problem, KernelFamily family, int n, double c_min, double c_max,
    std::size_t steps, const NewtonConfig& config = {}) {
    return detail::scan_shape_parameter_impl<DirectExpansion>(
        c_min, c_max, steps, [&](double c) {
            return drbf_solve(problem, KernelSpec{family, c, 1}, n, config);
        });
}

inline ScanResult<IntegratedExpansion> scan_shape_parameter_integrated(
    const ConeProblem& problem, KernelFamily family, int n, double c_min, double c_max,
    std::size_t steps, const NewtonConfig& config = {}) {
    return detail::scan_shape_parameter_impl<IntegratedExpansion>(
        c_min, c_max, steps, [&](double c) {
            return irbf_solve(problem, KernelSpec{family, c, 1}, n, config);
        });
}

}  // namespace rbfode
