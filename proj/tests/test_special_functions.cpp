#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <vector>

#include "cltbounds/special_functions.hpp"

using namespace cltbounds;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const double kInfUpper = std::numeric_limits<double>::infinity();
}

TEST_CASE("incomplete gamma halves add up to the complete gamma") {
    // Gamma(r) for r in {0.5, 1, 1.5, 2, 2.5}
    const double g[] = {std::sqrt(pi), 1.0, 0.5 * std::sqrt(pi), 1.0, 0.75 * std::sqrt(pi)};
    const double rs[] = {0.5, 1.0, 1.5, 2.0, 2.5};
    for (int i = 0; i < 5; ++i) {
        for (double x : {0.0, 1e-8, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 25.0, 50.0}) {
            const double sum = gamma_lower(rs[i], x) + gamma_upper(rs[i], x);
            REQUIRE_THAT(sum, WithinRel(g[i], 1e-12));
        }
    }
}

TEST_CASE("incomplete gamma closed-form spot values") {
    REQUIRE_THAT(gamma_upper(2.0, 1.0), WithinRel(2.0 / std::exp(1.0), 1e-13));
    REQUIRE_THAT(gamma_lower(1.0, 1.0), WithinRel(0.6321205588285577, 1e-13));
    REQUIRE_THAT(gamma_upper(0.5, 0.0), WithinRel(std::sqrt(pi), 1e-13));
    REQUIRE(gamma_lower(1.5, 0.0) == 0.0);
    // Large-argument upper tail stays finite and positive.
    REQUIRE(gamma_upper(1.5, 700.0) >= 0.0);
    REQUIRE(std::isfinite(gamma_upper(1.5, 700.0)));
}

TEST_CASE("gaussian power tails") {
    REQUIRE_THAT(gaussian_power_tail(0.0, 0.5, 0.0), WithinRel(std::sqrt(pi / 2.0), 1e-13));
    REQUIRE_THAT(gaussian_power_tail(3.0, 0.5, 0.0), WithinRel(2.0, 1e-13));
    // tail(s,k,x) + head(s,k,x) = tail(s,k,0)
    for (double s : {0.0, 1.0, 2.0, 3.0}) {
        for (double k : {0.5, 1.0, 2.0}) {
            for (double x : {0.3, 1.0, 2.5}) {
                const double whole = gaussian_power_tail(s, k, 0.0);
                const double split = gaussian_power_tail(s, k, x) + gaussian_power_head(s, k, x);
                REQUIRE_THAT(split, WithinRel(whole, 1e-12));
            }
        }
    }
    // Against direct quadrature: int_x^inf t^s e^{-k t^2} dt.
    const double q = integrate([](double t) { return t * t * std::exp(-0.7 * t * t); }, 0.8,
                               kInfUpper);
    REQUIRE_THAT(gaussian_power_tail(2.0, 0.7, 0.8), WithinRel(q, 1e-9));
}

TEST_CASE("standard normal cdf") {
    REQUIRE_THAT(std_normal_cdf(0.0), WithinAbs(0.5, 1e-15));
    REQUIRE_THAT(std_normal_cdf(1.959963985), WithinAbs(0.975, 1e-9));
    REQUIRE_THAT(std_normal_cdf(-1.959963985), WithinAbs(0.025, 1e-9));
    REQUIRE_THAT(std_normal_cdf(1.0) - std_normal_cdf(-1.0), WithinAbs(0.682689492137086, 1e-12));
}

TEST_CASE("exponential integral and the log-kernel tail") {
    REQUIRE_THAT(exp_integral_e1(0.5), WithinRel(0.5597735947761607, 1e-12));
    REQUIRE_THAT(exp_integral_e1(1.0), WithinRel(0.21938393439552028, 1e-12));
    REQUIRE_THAT(log_tail_integral(1.0), WithinRel(0.2798867973880803, 1e-12));
    // log_tail_integral(T) = int_T^inf e^{-t^2/2}/t dt, checked by quadrature.
    for (double T : {0.5, 1.0, 2.0}) {
        const double q = integrate([](double t) { return std::exp(-0.5 * t * t) / t; }, T,
                                   kInfUpper);
        REQUIRE_THAT(log_tail_integral(T), WithinRel(q, 1e-9));
    }
}

TEST_CASE("adaptive quadrature on known integrals") {
    REQUIRE_THAT(integrate([](double t) { return t; }, 0.0, 1.0), WithinRel(0.5, 1e-13));
    REQUIRE_THAT(integrate([](double t) { return std::exp(-0.5 * t * t); }, 0.0,
                           kInfUpper),
                 WithinRel(std::sqrt(pi / 2.0), 1e-10));
    REQUIRE_THAT(integrate([](double t) { return std::abs(std::cos(t)); }, 0.0, two_pi),
                 WithinRel(4.0, 1e-10));
    REQUIRE(integrate([](double) { return 1.0; }, 2.0, 2.0) == 0.0);
}

TEST_CASE("quadrature is deterministic") {
    auto f = [](double t) { return std::exp(-0.3 * t * t) * std::cos(3.0 * t); };
    const double a = integrate(f, 0.0, 10.0);
    const double b = integrate(f, 0.0, 10.0);
    REQUIRE(a == b); // bit-identical
}
