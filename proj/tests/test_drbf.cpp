// Direct collocation: the profile itself is expanded in the kernel and the
// basis is differentiated analytically.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "rbfode/drbf.hpp"

using namespace rbfode;

namespace {

NewtonConfig solver_config() {
    NewtonConfig cfg;
    cfg.residual_tolerance = 1e-10;
    return cfg;
}

}  // namespace

TEST_CASE("direct residual structure at zero weights", "[drbf]") {
    const ConeProblem p(Rational{0, 1});
    const CenterSet centers = uniform_centers(0.0, 4.5, 9);
    const auto system = assemble_direct_system(p, imq(3.0), centers);
    const std::vector<double> zero(9, 0.0);
    const std::vector<double> res = system(zero);
    REQUIRE(res.size() == 9);
    // Zero expansion leaves every collocation and value row at zero; only the
    // curvature condition s''(0) + 1 = 0 is violated.
    for (std::size_t i = 0; i + 1 < res.size(); ++i) CHECK(res[i] == 0.0);
    CHECK(res.back() == Catch::Approx(1.0).margin(1e-15));
}

TEST_CASE("non-decaying kernels get a far-field anchor row", "[drbf]") {
    const ConeProblem p(Rational{0, 1});
    const CenterSet centers = uniform_centers(0.0, 4.5, 9);
    const auto anchored = detail::make_direct_tableau(p, mq(2.0), centers);
    const auto free = detail::make_direct_tableau(p, imq(2.0), centers);
    CHECK(anchored->anchor_far_field);
    CHECK_FALSE(free->anchor_far_field);

    // The anchored system depends on a weight only through the far-slope,
    // value, and curvature rows once the ODE rows are zeroed: perturbing a
    // single weight from zero must change the replaced row linearly.
    const auto system = assemble_direct_system(p, mq(2.0), centers);
    std::vector<double> w(9, 0.0);
    w[4] = 1e-3;
    const auto res = system(w);
    CHECK(res[9 - 3] ==
          Catch::Approx(1e-3 * eval_derivative(mq(2.0), 4.5 - centers[4], 1)).epsilon(1e-10));
}

TEST_CASE("jacobian matches finite differences of the system", "[drbf]") {
    const ConeProblem p(Rational{1, 2});
    const CenterSet centers = uniform_centers(0.0, 4.5, 7);
    const auto system = assemble_direct_system(p, imq(2.5), centers);
    const auto jacobian = assemble_direct_jacobian(p, imq(2.5), centers);
    std::vector<double> w(7);
    for (std::size_t j = 0; j < w.size(); ++j) w[j] = 0.05 * static_cast<double>(j) - 0.1;
    const Matrix analytic = jacobian(w);
    const Matrix fd = fd_jacobian(system, w, system(w), 1e-7);
    for (std::size_t i = 0; i < 7; ++i) {
        for (std::size_t j = 0; j < 7; ++j) {
            CHECK(analytic(i, j) == Catch::Approx(fd(i, j)).margin(1e-5));
        }
    }
}

TEST_CASE("small center sets are rejected", "[drbf]") {
    const ConeProblem p(Rational{0, 1});
    CHECK_THROWS_AS(assemble_direct_system(p, imq(2.0), uniform_centers(0.0, 4.5, 3)),
                    std::invalid_argument);
    CHECK_THROWS_AS(drbf_solve(p, imq(2.0), 2, solver_config()), std::invalid_argument);
}

TEST_CASE("converged solves satisfy the boundary rows", "[drbf]") {
    const ConeProblem p(Rational{0, 1});
    const auto report = drbf_solve(p, imq(3.46543), 10, solver_config());
    REQUIRE(report.converged);
    CHECK(std::abs(report.expansion.eval(0.0)) <= 1e-10);
    CHECK(report.expansion.eval_derivative(0.0, 2) == Catch::Approx(-1.0).margin(1e-10));
    CHECK(report.collocation_residual_inf_norm <= 1e-10);
    CHECK(report.f_prime_at_0 == Catch::Approx(report.expansion.eval_derivative(0.0, 1)));
    CHECK(std::isfinite(report.interp_matrix_condition));
    CHECK(report.n == 10);
    CHECK(report.method == Method::DRBF);
}

TEST_CASE("anchored multiquadric solve enforces the far-field slope", "[drbf]") {
    const ConeProblem p(Rational{1, 2});
    const auto report = drbf_solve(p, mq(1.2), 10, solver_config());
    if (report.converged) {
        CHECK(std::abs(report.expansion.eval_derivative(4.5, 1)) <= 1e-9);
    }
}
