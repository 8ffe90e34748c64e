// Center grids, interpolation matrices, and interpolant fitting.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "rbfode/interpolation.hpp"

using namespace rbfode;

TEST_CASE("uniform centers hit both endpoints exactly", "[interpolation]") {
    const CenterSet centers = uniform_centers(0.0, 4.5, 11);
    REQUIRE(centers.size() == 11);
    CHECK(centers[0] == 0.0);
    CHECK(centers[10] == 4.5);
    for (std::size_t i = 1; i < centers.size(); ++i) CHECK(centers[i] > centers[i - 1]);
    CHECK(centers[5] == Catch::Approx(2.25).margin(1e-15));
}

TEST_CASE("center set validation", "[interpolation]") {
    CHECK_THROWS_AS(uniform_centers(0.0, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(uniform_centers(1.0, 1.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(CenterSet(std::vector<double>{0.0, 0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(CenterSet(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("two-point multiquadric matrix", "[interpolation]") {
    const auto a = interpolation_matrix(mq(1.0), CenterSet(std::vector<double>{0.0, 1.0}));
    REQUIRE(a.rows() == 2);
    REQUIRE(a.cols() == 2);
    CHECK(a(0, 0) == Catch::Approx(1.0).margin(1e-15));
    CHECK(a(1, 1) == Catch::Approx(1.0).margin(1e-15));
    CHECK(a(0, 1) == Catch::Approx(std::sqrt(2.0)).margin(1e-15));
    CHECK(a(1, 0) == Catch::Approx(std::sqrt(2.0)).margin(1e-15));
}

TEST_CASE("gaussian matrix is symmetric positive definite", "[interpolation]") {
    const CenterSet centers = uniform_centers(0.0, 2.0, 5);
    const auto a = interpolation_matrix(ga(1.5), centers);
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j < 5; ++j) {
            CHECK(a(i, j) == Catch::Approx(a(j, i)).margin(1e-15));
        }
    }
    // Positive definiteness: quadratic form positive for a few directions.
    const std::vector<std::vector<double>> dirs = {
        {1, 0, 0, 0, 0}, {1, 1, 1, 1, 1}, {1, -1, 1, -1, 1}, {0.3, -0.7, 0.2, 0.9, -0.4}};
    for (const auto& x : dirs) {
        double q = 0.0;
        for (std::size_t i = 0; i < 5; ++i) {
            for (std::size_t j = 0; j < 5; ++j) q += x[i] * a(i, j) * x[j];
        }
        CHECK(q > 0.0);
    }
}

TEST_CASE("interpolant reproduces its data", "[interpolation]") {
    const CenterSet centers = uniform_centers(0.0, 3.0, 9);
    std::vector<double> values;
    for (double x : centers.points()) values.push_back(std::sin(x));
    const auto interp = fit_interpolant(mq(0.9), centers, values);
    for (std::size_t i = 0; i < centers.size(); ++i) {
        CHECK(interp.eval(centers[i]) == Catch::Approx(values[i]).margin(1e-10));
    }
    // Between nodes the interpolant should track sin closely.
    CHECK(interp.eval(1.37) == Catch::Approx(std::sin(1.37)).margin(1e-3));
}

TEST_CASE("condition number grows with resolution", "[interpolation]") {
    double previous = 0.0;
    for (std::size_t count : {6, 11, 16, 21}) {
        const auto a = interpolation_matrix(mq(1.86), uniform_centers(0.0, 4.5, count));
        const double cond = cond_1(a);
        CHECK(std::isfinite(cond));
        CHECK(cond > previous);
        previous = cond;
    }
}

TEST_CASE("condition number grows with shape parameter", "[interpolation]") {
    const auto narrow = interpolation_matrix(mq(1.86), uniform_centers(0.0, 4.5, 11));
    const auto wide = interpolation_matrix(mq(3.72), uniform_centers(0.0, 4.5, 11));
    CHECK(cond_1(wide) > cond_1(narrow));
}
