#include "wigner/errors.hpp"
#include "wigner/specfun.hpp"

#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/special_functions/hermite.hpp>
#include <boost/math/special_functions/jacobi_elliptic.hpp>
#include <boost/math/special_functions/laguerre.hpp>
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace wigner;
using namespace wigner::specfun;

TEST_CASE("hermite functions match boost polynomials (long double)") {
    for (int n : {0, 1, 2, 5, 10, 20}) {
        for (double x : {-3.0, -0.7, 0.0, 0.4, 2.5}) {
            const long double H = boost::math::hermite(unsigned(n), (long double)x);
            const long double norm = std::sqrt(std::pow(2.0L, n) * boost::math::factorial<long double>(unsigned(n)) *
                                               std::sqrt(std::numbers::pi_v<long double>));
            const double ref = double(H * std::exp(-(long double)x * x / 2) / norm);
            CHECK(hermite_fn(n, x) == doctest::Approx(ref).epsilon(1e-12).scale(1.0));
        }
    }
}

TEST_CASE("hermite functions are orthonormal under Gauss-Hermite quadrature") {
    const auto rule = make_rule(RuleKind::gauss_hermite, 60);
    for (int n = 0; n < 12; ++n)
        for (int m = 0; m < 12; ++m) {
            // psi_n psi_m = e^{-x^2} (...), the rule integrates against e^{-x^2}
            const double v = rule.integrate([&](double x) { return hermite_fn(n, x) * hermite_fn(m, x) * std::exp(x * x); });
            CHECK(v == doctest::Approx(n == m ? 1.0 : 0.0).epsilon(1e-12).scale(1.0));
        }
}

TEST_CASE("hermite index above n_max is a capability error") {
    CHECK_THROWS_AS(hermite_fn(300, 0.1), CapabilityError);
}

TEST_CASE("laguerre polynomials match boost") {
    for (int n : {0, 1, 3, 7}) {
        for (unsigned a : {0u, 1u, 4u})
            for (double x : {0.0, 0.3, 2.0, 7.5}) {
                const double ref = boost::math::laguerre(unsigned(n), a, x);
                CHECK(laguerre_fn(n, double(a), x) == doctest::Approx(ref).epsilon(1e-12).scale(1.0));
            }
    }
}

TEST_CASE("jacobi elliptic functions match boost over random arguments") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> U(-20.0, 20.0), M(0.0, 0.99);
    for (int i = 0; i < 400; ++i) {
        const double u = U(rng), m = M(rng);
        double cn, dn;
        const double sn = boost::math::jacobi_elliptic(std::sqrt(m), u, &cn, &dn);
        const auto j = jacobi_sncndn(u, m);
        CHECK(j.sn == doctest::Approx(sn).epsilon(1e-12).scale(1.0));
        CHECK(j.cn == doctest::Approx(cn).epsilon(1e-12).scale(1.0));
        CHECK(j.dn == doctest::Approx(dn).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("jacobi limits") {
    const auto z = jacobi_sncndn(0.7, 0.0);
    CHECK(z.sn == doctest::Approx(std::sin(0.7)).epsilon(1e-15));
    CHECK(z.dn == doctest::Approx(1.0));
    const auto one = jacobi_sncndn(0.7, 1.0);
    CHECK(one.sn == doctest::Approx(std::tanh(0.7)).epsilon(1e-14));
    CHECK(one.cn == doctest::Approx(1.0 / std::cosh(0.7)).epsilon(1e-14));
}

TEST_CASE("complete elliptic integral matches boost") {
    for (double m : {0.0, 0.1, 0.5, 0.9, 0.999}) CHECK(elliptic_K(m) == doctest::Approx(boost::math::ellint_1(std::sqrt(m))).epsilon(1e-14));
}

TEST_CASE("sd inverse round trips on the principal branch") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> M(0.0, 0.45), F(-0.999, 0.999);
    for (int i = 0; i < 200; ++i) {
        const double m = M(rng), K = elliptic_K(m), u = F(rng) * K;
        CHECK(jacobi_sd_inverse(jacobi_sd(u, m), m) == doctest::Approx(u).epsilon(1e-11).scale(1.0));
    }
    CHECK_THROWS_AS(jacobi_sd_inverse(2.0, 0.3), DomainError);
}

TEST_CASE("quadrature rules") {
    const auto gl = gauss_legendre(8, 0.0, 2.0);
    CHECK(gl.integrate([](double x) { return std::pow(x, 15); }) == doctest::Approx(std::pow(2.0, 16) / 16).epsilon(1e-13));
    const auto tr = make_rule(RuleKind::trapezoid_periodic, 32, 2 * std::numbers::pi);
    CHECK(tr.integrate([](double x) { return std::exp(std::cos(x)); }) ==
          doctest::Approx(2 * std::numbers::pi * 1.2660658777520082).epsilon(1e-13));
    const auto gh = make_rule(RuleKind::gauss_hermite, 20, 2.0);
    CHECK(gh.integrate([](double x) { return x * x; }) == doctest::Approx(std::sqrt(std::numbers::pi) * 4.0).epsilon(1e-12));
    CHECK(parse_rule_kind("gauss-hermite") == RuleKind::gauss_hermite);
    CHECK_THROWS_AS(parse_rule_kind("simpson"), CapabilityError);
}
