// Damped Newton iteration with finite-difference or analytic Jacobians.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "rbfode/newton.hpp"

using namespace rbfode;

TEST_CASE("linear problems converge in one step", "[newton]") {
    const VectorFunction f = [](const std::vector<double>& x) {
        return std::vector<double>{x[0] - 3.0};
    };
    const auto report = solve_newton(f, {0.0});
    CHECK(report.converged);
    CHECK(report.iterations == 1);
    CHECK(report.x[0] == Catch::Approx(3.0).margin(1e-9));
}

TEST_CASE("scalar quadratic", "[newton]") {
    const VectorFunction f = [](const std::vector<double>& x) {
        return std::vector<double>{x[0] * x[0] - 4.0};
    };
    const auto report = solve_newton(f, {3.0});
    CHECK(report.converged);
    CHECK(report.x[0] == Catch::Approx(2.0).margin(1e-10));
}

TEST_CASE("coupled system", "[newton]") {
    // x + y = 3, x y = 2 has solutions {1, 2} and {2, 1}.
    const VectorFunction f = [](const std::vector<double>& v) {
        return std::vector<double>{v[0] + v[1] - 3.0, v[0] * v[1] - 2.0};
    };
    const auto report = solve_newton(f, {3.0, 0.0});
    REQUIRE(report.converged);
    const double lo = std::min(report.x[0], report.x[1]);
    const double hi = std::max(report.x[0], report.x[1]);
    CHECK(lo == Catch::Approx(1.0).margin(1e-9));
    CHECK(hi == Catch::Approx(2.0).margin(1e-9));
}

TEST_CASE("accepted steps decrease the residual monotonically", "[newton]") {
    const VectorFunction f = [](const std::vector<double>& v) {
        return std::vector<double>{v[0] * v[0] + v[1] * v[1] - 4.0,
                                   std::exp(v[0]) + v[1] - 1.0};
    };
    const auto report = solve_newton(f, {1.0, 1.0});
    REQUIRE(report.converged);
    REQUIRE(report.residual_history.size() >= 2);
    for (std::size_t i = 1; i < report.residual_history.size(); ++i) {
        CHECK(report.residual_history[i] < report.residual_history[i - 1]);
    }
}

TEST_CASE("convergence tail is superlinear", "[newton]") {
    const VectorFunction f = [](const std::vector<double>& x) {
        return std::vector<double>{x[0] * x[0] - 4.0};
    };
    const auto report = solve_newton(f, {3.0});
    REQUIRE(report.converged);
    const auto& h = report.residual_history;
    REQUIRE(h.size() >= 3);
    // The final contraction should far exceed a fixed linear rate.
    const double last = h[h.size() - 1];
    const double prev = h[h.size() - 2];
    CHECK(last < 0.1 * prev);
}

TEST_CASE("rootless problems report failure without throwing", "[newton]") {
    const VectorFunction f = [](const std::vector<double>& x) {
        return std::vector<double>{x[0] * x[0] + 1.0};
    };
    NewtonConfig cfg;
    cfg.max_iterations = 50;
    const auto report = solve_newton(f, {1.0}, cfg);
    CHECK_FALSE(report.converged);
    CHECK(report.residual_norm >= 1.0);
}

TEST_CASE("finite-difference jacobian approximates the analytic one", "[newton]") {
    const VectorFunction f = [](const std::vector<double>& v) {
        return std::vector<double>{v[0] * v[0] + v[1], std::sin(v[0]) + 3.0 * v[1]};
    };
    const std::vector<double> x = {0.7, -1.2};
    const auto j = fd_jacobian(f, x, f(x), std::sqrt(1e-16));
    CHECK(j(0, 0) == Catch::Approx(2 * x[0]).margin(1e-6));
    CHECK(j(0, 1) == Catch::Approx(1.0).margin(1e-6));
    CHECK(j(1, 0) == Catch::Approx(std::cos(x[0])).margin(1e-6));
    CHECK(j(1, 1) == Catch::Approx(3.0).margin(1e-6));
}

TEST_CASE("analytic jacobian path matches the finite-difference path", "[newton]") {
    const VectorFunction f = [](const std::vector<double>& v) {
        return std::vector<double>{v[0] * v[0] - v[1], v[0] + v[1] - 3.0};
    };
    const JacobianFunction jac = [](const std::vector<double>& v) {
        Matrix j(2, 2);
        j(0, 0) = 2 * v[0]; j(0, 1) = -1.0;
        j(1, 0) = 1.0;      j(1, 1) = 1.0;
        return j;
    };
    const auto with_fd = solve_newton(f, {2.0, 2.0});
    const auto with_analytic = solve_newton(f, jac, {2.0, 2.0}, NewtonConfig{});
    REQUIRE(with_fd.converged);
    REQUIRE(with_analytic.converged);
    CHECK(with_fd.x[0] == Catch::Approx(with_analytic.x[0]).margin(1e-9));
    CHECK(with_fd.x[1] == Catch::Approx(with_analytic.x[1]).margin(1e-9));
}
