#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/hypergeometric_pFq.hpp>

#include "dupdel/errors.hpp"
#include "dupdel/special_functions.hpp"

using namespace dupdel;

TEST_CASE("log_gamma at known points") {
    CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(log_gamma(2.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(std::numbers::pi)).epsilon(1e-14));
    CHECK(log_gamma(11.0) == doctest::Approx(std::log(3628800.0)).epsilon(1e-14));
    for (const double x : {0.01, 0.3, 1.7, 4.25, 37.5, 1234.5, 1e6}) {
        CAPTURE(x);
        CHECK(log_gamma(x) == doctest::Approx(boost::math::lgamma(x)).epsilon(1e-13));
    }
}

TEST_CASE("log_gamma rejects non-positive arguments") {
    CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(log_gamma(-2.5), std::domain_error);
}

TEST_CASE("2F1 closed forms") {
    CHECK(hypergeometric_2f1(1.0, 1.0, 2.0, 0.5) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-14));
    CHECK(hypergeometric_2f1(0.3, 2.0, 5.0, 0.0) == 1.0);
    for (const double beta : {1.5, 3.0, 7.25}) {
        for (const double g : {0.1, 0.5, 0.9}) {
            CAPTURE(beta);
            CAPTURE(g);
            // 2F1(a, 1; a; z) = 1 / (1 - z)
            CHECK(hypergeometric_2f1(beta + 1.0, 1.0, beta + 1.0, g) ==
                  doctest::Approx(1.0 / (1.0 - g)).epsilon(1e-13));
        }
    }
    // 2F1(1/2, 1/2; 3/2; z^2) = asin(z) / z
    const double z = 0.8;
    CHECK(hypergeometric_2f1(0.5, 0.5, 1.5, z * z) == doctest::Approx(std::asin(z) / z).epsilon(1e-13));
}

TEST_CASE("2F1 agrees with an independent series implementation") {
    for (const double z : {0.2, 0.6, 0.95}) {
        CAPTURE(z);
        const double a = 2.5, b = 11.0, c = 13.5;
        const double ref = boost::math::hypergeometric_pFq({a, b}, {c}, z);
        CHECK(hypergeometric_2f1(a, b, c, z) == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("2F1 domain and convergence errors are distinct") {
    CHECK_THROWS_AS(hypergeometric_2f1(1.0, 1.0, 2.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(hypergeometric_2f1(1.0, 1.0, 2.0, -0.1), std::domain_error);
    CHECK_THROWS_AS(hypergeometric_2f1(1.0, 1.0, -3.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(hypergeometric_2f1(1.0, 1.0, 2.0, 0.999, 10), NonConvergence);
}
