#include <doctest.h>

#include "wigner/errors.hpp"
#include "wigner/harmonic_expansion.hpp"
#include "wigner/initial_data.hpp"
#include "wigner/oracle.hpp"
#include "wigner/phase_space.hpp"
#include "wigner/spectral.hpp"

#include <cmath>
#include <complex>
#include <numbers>

using namespace wigner;
using std::numbers::pi;

namespace {

EvolutionConfig fine(double eps) {
    EvolutionConfig c;
    c.dt = eps / 200.0;
    c.composition_order = 4;
    return c;
}

double max_diff(const ComplexField& a, const ComplexField& b) { return (a.values - b.values).cwiseAbs().maxCoeff(); }

double l2_diff(const ComplexField& a, const ComplexField& b) {
    return std::sqrt(a.axis.spacing() * (a.values - b.values).squaredNorm());
}

}  // namespace

TEST_CASE("harmonic coherent state stays coherent on the classical orbit") {
    const double eps = 0.1, xi0 = 1.0, eta0 = 0.5;
    const Axis ax{-6.0, 6.0, 256};
    const auto psi0 = InitialData::coherent(xi0, eta0).sample(ax, eps);
    for (double t : {0.7, 2.0, 4.5}) {
        const auto psi = split_step_evolve(psi0, Potential::harmonic(), eps, t, fine(eps));
        const double q = std::sqrt(eps) * (xi0 * std::cos(t) + eta0 * std::sin(t));
        double err = 0.0, mean = 0.0;
        for (Index i = 0; i < ax.n; ++i) {
            const double x = ax.node(i);
            const double rho = std::exp(-(x - q) * (x - q) / eps) / std::sqrt(pi * eps);
            err = std::max(err, std::abs(std::norm(psi.values[i]) - rho));
            mean += x * std::norm(psi.values[i]) * ax.spacing();
        }
        CHECK(err < 1e-8);
        CHECK(mean == doctest::Approx(q).epsilon(1e-8));
    }
}

TEST_CASE("free Gaussian spreads as in closed form") {
    // psi_0 = e^{-x^2/2}: psi(x,t) = (1 + i eps t)^{-1/2} exp(-x^2 / (2 (1 + i eps t)))
    const double eps = 0.1, t = 3.0;
    const Axis ax{-10.0, 10.0, 256};
    const auto psi0 = InitialData::linear_phase(0.0).sample(ax, eps);
    const auto psi = split_step_evolve(psi0, Potential::zero(), eps, t);
    const std::complex<double> s(1.0, eps * t);
    const auto exact = sample_wavefunction(ax, eps, [&](double x) { return std::exp(-x * x / (2.0 * s)) / std::sqrt(s); });
    CHECK(max_diff(psi, exact) < 1e-12);
}

TEST_CASE("split-step and eigenseries agree for the quartic oscillator") {
    const double eps = 0.1, mu = 0.1;
    const Axis ax{-6.0, 6.0, 512};
    const Potential V = Potential::quartic(mu);
    for (const auto& init : {InitialData::coherent(1.0, 0.5), InitialData::coherent(-1.5, 1.0)}) {
        const auto psi0 = init.sample(ax, eps);
        // an L2 distance of 1e-6 needs the discarded mass below 1e-12
        const EigenData eig = eigendata_for(psi0, V, eps, 16, 1e-13);
        for (double t : {1.0, 2.5}) {
            const auto a = split_step_evolve(psi0, V, eps, t, fine(eps));
            const auto b = eigenseries_evolve(psi0, eig, eps, t);
            CHECK(l2_diff(a, b) < 1e-6);
        }
    }
}

TEST_CASE("stationary states only rotate their phase") {
    const double eps = 0.1;
    const Axis ax{-6.0, 6.0, 512};
    const Potential V = Potential::quartic(0.2);
    const EigenData eig = solve_spectrum(V, eps, 8, ax);
    const ComplexField u3 = eig[3].u;
    const double t = 1.7;
    const auto psi = split_step_evolve(u3, V, eps, t, fine(eps));
    ComplexField expect = u3;
    expect.values *= std::polar(1.0, -eig[3].energy * t / eps);
    CHECK(l2_diff(psi, expect) < 1e-8);
}

TEST_CASE("projection, Parseval and Wigner coefficients") {
    const double eps = 0.1;
    const Axis ax{-6.0, 6.0, 512};
    const Potential V = Potential::quartic(0.1);
    const auto psi0 = InitialData::coherent(1.0, 0.5).sample(ax, eps);
    const EigenData eig = eigendata_for(psi0, V, eps);
    const auto P = project(psi0, eig);
    CHECK(P.norm_squared == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(P.coefficients.squaredNorm() == doctest::Approx(P.norm_squared * (1.0 - P.tail_mass)).epsilon(1e-12));
    CHECK(P.tail_mass < 1e-8);

    // A_nm(t) against projections of the evolved state
    const double t = 0.9;
    const auto psi = eigenseries_evolve(P, eig, t);
    const Eigen::MatrixXcd A = wigner_coefficients(P, eig, t);
    auto proj = [&](std::size_t n) { return cdouble(ax.spacing()) * eig[n].u.values.dot(psi.values); };
    for (std::size_t n : {0u, 2u, 5u})
        for (std::size_t m : {1u, 2u, 4u}) CHECK(std::abs(A(n, m) - proj(n) * std::conj(proj(m))) < 1e-10);

    const EigenData small = solve_spectrum(V, eps, 2, ax);
    CHECK_THROWS_AS(project(psi0, small), TruncationError);
    const EigenData other = solve_spectrum(V, eps, 4, Axis{-5.0, 5.0, 512});
    CHECK_THROWS_AS(project(psi0, other), ComparabilityError);
    CHECK_THROWS_AS(eigenseries_evolve(psi0, eig, 0.05, 1.0), ComparabilityError);
}

TEST_CASE("split-step conserves mass over 1e4 steps") {
    const double eps = 0.05;
    const Axis ax{-6.0, 6.0, 512};
    const auto psi0 = InitialData::coherent(1.0, 0.5).sample(ax, eps);
    EvolutionConfig c;
    c.dt = 1e-4;
    const auto psi = split_step_evolve(psi0, Potential::quartic(0.1), eps, 1.0, c);
    CHECK(std::abs(psi.norm_squared() - psi0.norm_squared()) < 1e-10);
}

TEST_CASE("split-step guards") {
    const double eps = 0.1;
    const Axis ax{-8.0, 8.0, 256};
    const auto psi0 = InitialData::coherent(0.0, 0.0).sample(ax, eps);
    EvolutionConfig c;
    c.composition_order = 3;
    CHECK_THROWS_AS(split_step_evolve(psi0, Potential::harmonic(), eps, 1.0, c), ConfigurationError);
    // max V on the box is ~ 0.1 * 8^4 / 4 = 102, so eps / 20 steps alias the potential phase
    CHECK_THROWS_AS(split_step_evolve(psi0, Potential::quartic(0.1), eps, 1.0), ConfigurationError);
    const auto wide = InitialData::linear_phase(0.0).sample(Axis{-3.0, 3.0, 128}, eps);
    CHECK_THROWS_AS(split_step_evolve(wide, Potential::harmonic(), eps, 1.0), CoverageError);
    CHECK_THROWS_AS(split_step_evolve(psi0, Potential::harmonic(), eps, -1.0), DomainError);
}

TEST_CASE("reference Wigner function") {
    const double eps = 0.1;
    const PhaseGrid g = PhaseGrid::square(6.0, 512, eps);
    const auto psi0 = InitialData::coherent(1.0, 0.5).sample(g.x, eps);
    const Potential V = Potential::quartic(0.1);
    const RealField W0 = reference_wigner(psi0, V, eps, 0.0, g, fine(eps));
    const auto G = InitialData::coherent(1.0, 0.5).wigner(eps);
    double err = 0.0;
    for (Index i = 0; i < g.x.n; i += 7)
        for (Index j = 0; j < g.k.n; j += 5) err = std::max(err, std::abs(W0.values(i, j) - G(g.x.node(i), g.k.node(j))));
    CHECK(err < 1e-10 * G.amp);

    const double cell = g.x.spacing() * g.k.spacing();
    for (double t : {0.0, 1.0, 3.0}) {
        const RealField W = reference_wigner(psi0, V, eps, t, g, fine(eps));
        CHECK(W.values.sum() * cell == doctest::Approx(psi0.norm_squared()).epsilon(1e-8));
    }
    EvolutionConfig e;
    e.method = EvolutionMethod::eigenseries;
    const RealField We = reference_wigner(psi0, V, eps, 1.0, g, e);
    const RealField Ws = reference_wigner(psi0, V, eps, 1.0, g, fine(eps));
    CHECK((We.values - Ws.values).cwiseAbs().maxCoeff() < 1e-6 * Ws.max_abs());
}

TEST_CASE("harmonic oracle is the rotated initial Wigner function") {
    const double eps = 0.1;
    const PhaseGrid g = PhaseGrid::square(6.0, 256, eps);
    const PhaseGrid gs = PhaseGrid::square(8.0, 128, eps);
    const auto init = InitialData::coherent(1.0, 0.5);
    const auto psi0 = init.sample(g.x, eps);
    const RealField W0s = sample_field(init.wigner_scaled(eps), gs, Frame::scaled);
    for (double t : {1.0, 2.0 * pi}) {
        const RealField W = reference_wigner(psi0, Potential::harmonic(), eps, t, g, fine(eps));
        const RealField Ws = dilate(W, DilationDirection::to_scaled, gs);
        const RealField R = harmonic_term(W0s, t);
        CHECK((Ws.values - R.values).norm() * gs.x.spacing() < 1e-6);
    }
}

TEST_CASE("coefficient expansion") {
    const PhaseGrid gs = PhaseGrid::square(8.0, 128, 0.05);
    const auto init = InitialData::coherent(1.0, 0.5);
    const RealField W0 = sample_field(init.wigner_scaled(0.05), gs, Frame::scaled);
    const double t = 1.0;

    SUBCASE("harmonic potential has no corrections") {
        const auto cn = harmonic_corrections(Potential::harmonic(), 1, 2);
        const auto cm = harmonic_corrections(Potential::harmonic(), 3, 2);
        const auto ce = coefficient_expansion(W0, cn, cm, t, 2);
        for (const auto& d : ce.deltas) CHECK(std::abs(d) < 1e-12);
        // A_h,nm = (phi, phi_n) conj((phi, phi_m)) e^{-i (n - m) t}
        const Axis ax{-8.0, 8.0, 512};
        const double eps = 0.05;
        const auto psi0 = init.sample(ax, eps);
        const EigenData eig = solve_spectrum(Potential::harmonic(), eps, 6, ax);
        const auto P = project(psi0, eig, 1.0);
        const Eigen::MatrixXcd A = wigner_coefficients(P, eig, t);
        CHECK(std::abs(ce.harmonic - A(1, 3)) < 1e-8);
    }

    SUBCASE("quartic corrections improve the coefficient") {
        const double mu = 0.1;
        const Potential V = Potential::quartic(mu);
        const Axis ax{-8.0, 8.0, 512};
        double e0[2], e2[2];
        int idx = 0;
        for (double eps : {0.1, 0.05}) {
            const PhaseGrid g = PhaseGrid::square(8.0, 128, eps);
            const RealField w0 = sample_field(init.wigner_scaled(eps), g, Frame::scaled);
            const auto psi0 = init.sample(ax, eps);
            const EigenData eig = solve_spectrum(V, eps, 6, ax);
            const auto P = project(psi0, eig, 1.0);
            const Eigen::MatrixXcd A = wigner_coefficients(P, eig, t);
            const auto ce = coefficient_expansion(w0, harmonic_corrections(V, 0, 2), harmonic_corrections(V, 2, 2), t, 2);
            CHECK(std::abs(ce.deltas[0]) < 1e-12);
            e0[idx] = std::abs(ce.total(eps, 0) - A(0, 2));
            e2[idx] = std::abs(ce.total(eps, 2) - A(0, 2));
            CHECK(e2[idx] < 0.2 * e0[idx]);
            ++idx;
        }
        CHECK(std::log(e0[0] / e0[1]) / std::log(2.0) == doctest::Approx(1.0).epsilon(0.15));
        CHECK(std::log(e2[0] / e2[1]) / std::log(2.0) > 1.7);
    }

    SUBCASE("secular phase grows linearly in t") {
        const Potential V = Potential::quartic(0.1);
        const auto cn = harmonic_corrections(V, 0, 2), cm = harmonic_corrections(V, 3, 2);
        const cdouble d1 = coefficient_expansion(W0, cn, cm, 1.0, 2).deltas[1];
        const cdouble d2 = coefficient_expansion(W0, cn, cm, 2.0, 2).deltas[1];
        const cdouble h1 = coefficient_expansion(W0, cn, cm, 1.0, 2).harmonic;
        const cdouble h2 = coefficient_expansion(W0, cn, cm, 2.0, 2).harmonic;
        // Delta_2 / A_h = P_2/P_0 - (i t / 2)(a_n^{(2)} - a_m^{(2)})
        const cdouble slope = (d2 / h2 - d1 / h1);
        CHECK(slope.imag() == doctest::Approx(-0.5 * (cn.a[2] - cm.a[2])).epsilon(1e-10));
        CHECK(std::abs(slope.real()) < 1e-10);
    }

    const auto c0 = harmonic_corrections(Potential::quartic(0.1), 0, 1);
    CHECK_THROWS_AS(coefficient_expansion(W0, c0, c0, t, 2), DependencyError);
    CHECK_THROWS_AS(coefficient_expansion(W0, c0, c0, t, 1).total(0.1, 2), DependencyError);
}
