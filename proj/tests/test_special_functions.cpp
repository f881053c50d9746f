#include <doctest.h>

#include <cmath>
#include <functional>

#include "advisory/errors.hpp"
#include "advisory/rng.hpp"
#include "advisory/special_functions.hpp"

using namespace advisory;

namespace {

// adaptive Simpson quadrature, independent oracle for the incomplete beta
double simpson(const std::function<double(double)>& f, double a, double b) {
    const double m = 0.5 * (a + b);
    return (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b));
}

double adaptive(const std::function<double(double)>& f, double a, double b,
                double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double left = simpson(f, a, m);
    const double right = simpson(f, m, b);
    if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive(f, a, m, left, tol / 2.0, depth - 1) +
           adaptive(f, m, b, right, tol / 2.0, depth - 1);
}

double quad(const std::function<double(double)>& f, double a, double b) {
    return adaptive(f, a, b, simpson(f, a, b), 1e-13, 40);
}

} // namespace

TEST_CASE("ln_gamma known values") {
    CHECK(sf::ln_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(sf::ln_gamma(2.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(sf::ln_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-12));
    // Gamma(1/2) = sqrt(pi)
    CHECK(sf::ln_gamma(0.5) == doctest::Approx(0.5 * std::log(M_PI)).epsilon(1e-12));
    CHECK_THROWS_AS(sf::ln_gamma(0.0), DomainError);
    CHECK_THROWS_AS(sf::ln_gamma(-3.0), DomainError);
}

TEST_CASE("ln_gamma matches factorials across the working range") {
    double lf = 0.0;
    for (int n = 2; n <= 170; ++n) {
        lf += std::log(static_cast<double>(n - 1));
        CHECK(sf::ln_gamma(n) == doctest::Approx(lf).epsilon(1e-12));
    }
}

TEST_CASE("reg_inc_beta boundaries and uniform case") {
    CHECK(sf::reg_inc_beta(2.0, 3.0, 0.0) == 0.0);
    CHECK(sf::reg_inc_beta(2.0, 3.0, 1.0) == 1.0);
    CHECK(sf::reg_inc_beta(1.0, 1.0, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(sf::reg_inc_beta(0.0, 1.0, 0.5), DomainError);
    CHECK_THROWS_AS(sf::reg_inc_beta(1.0, 1.0, 1.5), DomainError);
}

TEST_CASE("reg_inc_beta agrees with a quadrature oracle") {
    // I_x(a,b) = B(x;a,b)/B(a,b) with the density integrated numerically
    auto oracle = [](double a, double b, double x) {
        auto f = [a, b](double t) { return std::pow(t, a - 1.0) * std::pow(1.0 - t, b - 1.0); };
        return quad(f, 0.0, x) / std::exp(sf::ln_gamma(a) + sf::ln_gamma(b) - sf::ln_gamma(a + b));
    };
    CHECK(sf::reg_inc_beta(2.0, 3.0, 0.4) == doctest::Approx(oracle(2, 3, 0.4)).epsilon(1e-10));
    CHECK(sf::reg_inc_beta(5.5, 2.25, 0.7) == doctest::Approx(oracle(5.5, 2.25, 0.7)).epsilon(1e-10));
    CHECK(sf::reg_inc_beta(16.0, 0.5, 0.95) == doctest::Approx(oracle(16.0, 0.5, 0.95)).epsilon(1e-9));
}

TEST_CASE("t distribution") {
    CHECK(sf::t_cdf(0.0, 32.0) == doctest::Approx(0.5).epsilon(1e-14));
    // reference values carry ~1e-8 error of their own, so compare at 1e-6
    CHECK(sf::t_inv(0.95, 32.0) == doctest::Approx(1.693888703).epsilon(1e-6));
    CHECK(sf::t_inv(0.975, 32.0) == doctest::Approx(2.036933334).epsilon(1e-6));
    CHECK_THROWS_AS(sf::t_cdf(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(sf::t_inv(0.0, 5.0), DomainError);
    CHECK_THROWS_AS(sf::t_inv(1.0, 5.0), DomainError);
}

TEST_CASE("t symmetry property") {
    Lcg64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const double x = 10.0 * (rng.next_double() - 0.5);
        const double df = 0.5 + 50.0 * rng.next_double();
        CHECK(sf::t_cdf(-x, df) + sf::t_cdf(x, df) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("F distribution") {
    CHECK(sf::f_cdf(0.0, 3.0, 5.0) == 0.0);
    CHECK(sf::f_inv(0.95, 1.0, 37.0) == doctest::Approx(4.105456).epsilon(1e-6));
    CHECK(1.0 - sf::f_cdf(3.513325, 1.0, 37.0) == doctest::Approx(0.068789).epsilon(1e-4));
    CHECK_THROWS_AS(sf::f_cdf(-1.0, 1.0, 1.0), DomainError);
}

TEST_CASE("F/t duality: 1 - F(x^2; 1, df) = 2 (1 - T(x; df))") {
    Lcg64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const double x = 0.05 + 4.0 * rng.next_double();
        const double df = 1.0 + 80.0 * rng.next_double();
        const double lhs = 1.0 - sf::f_cdf(x * x, 1.0, df);
        const double rhs = 2.0 * (1.0 - sf::t_cdf(x, df));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("inverse round trips") {
    for (double df : {1.0, 2.0, 5.0, 32.0, 100.0}) {
        for (double x : {0.3, 1.0, 2.5}) {
            CHECK(sf::t_inv(sf::t_cdf(x, df), df) == doctest::Approx(x).epsilon(1e-8));
        }
        for (double f : {0.5, 1.0, 3.0}) {
            CHECK(sf::f_inv(sf::f_cdf(f, df, df + 3.0), df, df + 3.0) ==
                  doctest::Approx(f).epsilon(1e-8));
        }
    }
}

TEST_CASE("CDF monotonicity property") {
    Lcg64 rng(23);
    for (int i = 0; i < 2000; ++i) {
        const double df = 0.5 + 60.0 * rng.next_double();
        const double a = 12.0 * (rng.next_double() - 0.5);
        const double b = a + 5.0 * rng.next_double() + 1e-6;
        CHECK(sf::t_cdf(a, df) <= sf::t_cdf(b, df) + 1e-15);
        const double fa = 8.0 * rng.next_double();
        const double fb = fa + 4.0 * rng.next_double() + 1e-6;
        CHECK(sf::f_cdf(fa, df, df + 1.0) <= sf::f_cdf(fb, df, df + 1.0) + 1e-15);
    }
}
