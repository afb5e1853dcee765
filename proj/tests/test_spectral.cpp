#include "wigner/errors.hpp"
#include "wigner/operators.hpp"
#include "wigner/phase_space.hpp"
#include "wigner/spectral.hpp"

#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/special_functions/hermite.hpp>
#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

using namespace wigner;

namespace {

// independent oracle: quartic Hamiltonian in the Hermite basis of length scale sqrt(eps)
Eigen::VectorXd quartic_levels(double eps, double mu, int basis) {
    Eigen::MatrixXd X = Eigen::MatrixXd::Zero(basis, basis);
    for (int n = 0; n + 1 < basis; ++n) X(n, n + 1) = X(n + 1, n) = std::sqrt((n + 1) / 2.0);
    const Eigen::MatrixXd X2 = X * X;
    Eigen::MatrixXd H = (0.25 * mu * eps * eps) * (X2 * X2);
    for (int n = 0; n < basis; ++n) H(n, n) += eps * (n + 0.5);
    // the truncated X^4 is wrong in its last rows; the low levels do not see it
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    return es.eigenvalues();
}

double hermite_ref(int n, double x) {
    const double norm = std::sqrt(std::pow(2.0, n) * boost::math::factorial<double>(unsigned(n)) *
                                  std::sqrt(std::numbers::pi));
    return boost::math::hermite(unsigned(n), x) * std::exp(-x * x / 2) / norm;
}

}  // namespace

TEST_CASE("harmonic spectrum is eps (n + 1/2)") {
    const double eps = 0.1;
    const Axis ax{-4.0, 4.0, 256};
    const auto eig = solve_spectrum(Potential::harmonic(), eps, 10, ax);
    for (int n = 0; n <= 10; ++n) {
        CHECK(eig[n].energy == doctest::Approx(eps * (n + 0.5)).epsilon(1e-11));
        CHECK(eig[n].residual < 1e-6 * eig[n].energy);
        CHECK(eig[n].u.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("quartic spectrum agrees with a Hermite-basis diagonalization") {
    const double eps = 0.1, mu = 0.1;
    const auto ref = quartic_levels(eps, mu, 160);
    const auto eig = solve_spectrum(Potential::quartic(mu), eps, 8, Axis{-4.0, 4.0, 256});
    for (int n = 0; n <= 8; ++n) CHECK(eig[n].energy == doctest::Approx(ref[n]).epsilon(1e-10));
}

TEST_CASE("eigenfunction sign convention: rightmost lobe positive") {
    const Axis ax{-4.0, 4.0, 128};
    const auto eig = solve_spectrum(Potential::harmonic(), 0.2, 4, ax);
    for (int n = 0; n <= 4; ++n) {
        // compare with the Hermite function in the scaled variable, which has the same convention
        const Index i = ax.n * 3 / 5;
        const double xi = ax.node(i) / std::sqrt(0.2);
        const double ref = std::pow(0.2, -0.25) * hermite_ref(n, xi);
        CHECK(eig[n].u.values[i].real() == doctest::Approx(ref).epsilon(1e-8));
    }
}

TEST_CASE("Rayleigh-Schrodinger corrections for the quartic") {
    const double mu = 0.2;
    for (int n : {0, 1, 3}) {
        const auto c = harmonic_corrections(Potential::quartic(mu), n, 4);
        CHECK(c.a[0] == doctest::Approx(2 * n + 1));
        CHECK(c.a[1] == doctest::Approx(0.0).scale(1.0));
        CHECK(c.a[2] == doctest::Approx(3 * mu / 8 * (2 * n * n + 2 * n + 1)).epsilon(1e-12));
        CHECK(c.a[3] == doctest::Approx(0.0).scale(1.0));
    }
    // truncated energy approaches the exact level at the next even order
    for (double eps : {0.02, 0.01}) {
        const auto ref = quartic_levels(eps, mu, 80);
        const auto c = harmonic_corrections(Potential::quartic(mu), 2, 4);
        const double e_exact = 2.0 / eps * ref[2];
        CHECK(std::abs(c.energy(eps) - e_exact) < 40 * mu * mu * mu * eps * eps * eps);
    }
    CHECK_THROWS_AS(harmonic_corrections(Potential::quartic(mu), 2, -1), DomainError);
}

TEST_CASE("Hermite power matrices are exact") {
    const auto X = hermite_position_matrix(12);
    const auto X3 = hermite_power_matrix(3, 8);
    CHECK((X3 - (X * X * X).topLeftCorner(8, 8)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("closed-form harmonic Moyal functions equal cross-Wigner transforms of Hermite functions") {
    const PhaseGrid g = PhaseGrid::square(8.0, 128, 1.0);
    for (auto [n, m] : {std::pair{0, 0}, {2, 1}, {1, 3}, {4, 4}}) {
        const auto f = sample_wavefunction(g.x, 1.0, [n = n](double x) { return cdouble(hermite_ref(n, x)); });
        const auto h = sample_wavefunction(g.x, 1.0, [m = m](double x) { return cdouble(hermite_ref(m, x)); });
        const auto W = cross_wigner(f, h, g, Frame::scaled);
        const auto P = harmonic_moyal(n, m, g, Frame::scaled);
        CHECK((W.values - P.values).cwiseAbs().maxCoeff() < 1e-11);
    }
}

TEST_CASE("harmonic Moyal functions are joint eigenfunctions of L_h and M_h") {
    const PhaseGrid g = PhaseGrid::square(8.0, 128, 1.0);
    const cdouble I(0.0, 1.0);
    for (auto [n, m] : {std::pair{0, 1}, {3, 1}, {2, 2}}) {
        const auto P = harmonic_moyal(n, m, g);
        const auto L = apply_L_h(P), M = apply_M_h(P);
        const double en = 2 * n + 1, em = 2 * m + 1;
        CHECK((L.values - 0.5 * I * (en - em) * P.values).norm() < 1e-9 * P.values.norm());
        CHECK((M.values - 0.25 * (en + em) * P.values).norm() < 1e-9 * P.values.norm());
    }
}

TEST_CASE("Moyal eigen-relations for the quartic on a physical grid") {
    const double eps = 0.1, mu = 0.1;
    const Potential V = Potential::quartic(mu);
    const PhaseGrid g = PhaseGrid::square(3.0, 128, eps);
    const auto eig = solve_spectrum(V, eps, 3, g.x);
    const auto Phi = moyal_eigenfunction(2, 1, eig, g);
    const auto L = apply_liouville(Phi.field, V, eps);
    const auto M = apply_cosine_bracket(Phi.field, V, eps);
    const double nrm = Phi.field.values.norm();
    CHECK((L.values - Phi.lambda() * Phi.field.values).norm() / (std::abs(Phi.lambda()) * nrm) < 1e-6);
    CHECK((M.values - Phi.mu() * Phi.field.values).norm() / (Phi.mu() * nrm) < 1e-6);
}

TEST_CASE("hierarchy residuals of the Moyal correctors vanish") {
    const Potential V = Potential::quartic(0.2);
    const PhaseGrid g = PhaseGrid::square(10.0, 256, 1.0);
    const auto c1 = harmonic_corrections(V, 1, 4), c2 = harmonic_corrections(V, 2, 4);
    for (int l = 0; l <= 4; ++l) CHECK(moyal_hierarchy_residual(l, c1, c2, V, g) < 1e-8);
}

TEST_CASE("cosine bracket of a non-polynomial potential needs a truncation order") {
    const auto V = Potential::custom([](int d, double x) { return d == 0 ? std::cosh(x) : (d % 2 ? std::sinh(x) : std::cosh(x)); },
                                     8, "cosh");
    const PhaseGrid g = PhaseGrid::square(3.0, 32, 0.5);
    ComplexPhaseField W(g, Frame::physical);
    CHECK_THROWS_AS(apply_cosine_bracket(W, V, 0.5), CapabilityError);
    CHECK_NOTHROW(apply_cosine_bracket(W, V, 0.5, 2));
}
