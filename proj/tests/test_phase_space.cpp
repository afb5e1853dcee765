#include "wigner/errors.hpp"
#include "wigner/initial_data.hpp"
#include "wigner/io.hpp"
#include "wigner/operators.hpp"
#include "wigner/phase_space.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace wigner;
using std::numbers::pi;

namespace {

ComplexField coherent_psi(const Axis& ax, double eps, double x0, double k0) {
    return sample_wavefunction(ax, eps, [&](double x) {
        return std::pow(pi * eps, -0.25) * std::exp(cdouble(-(x - x0) * (x - x0) / (2 * eps), k0 * x / eps));
    });
}

}  // namespace

TEST_CASE("coherent state Wigner function matches the textbook Gaussian") {
    const double eps = 0.1, x0 = 0.4, k0 = -0.3;
    const PhaseGrid g = PhaseGrid::square(3.0, 128, eps);
    const auto W = wigner_transform(coherent_psi(g.x, eps, x0, k0), g);
    double err = 0.0, peak = 0.0;
    for (Index i = 0; i < g.x.n; ++i)
        for (Index j = 0; j < g.k.n; ++j) {
            const double x = g.x.node(i), k = g.k.node(j);
            const double ref = std::exp(-((x - x0) * (x - x0) + (k - k0) * (k - k0)) / eps) / (pi * eps);
            err = std::max(err, std::abs(W.values(i, j) - ref));
            peak = std::max(peak, ref);
        }
    CHECK(err / peak < 1e-10);
    CHECK(W.imag_residue < 1e-12);
}

TEST_CASE("Gauss-Fresnel Wigner function matches its closed form") {
    const double eps = 0.2;
    const PhaseGrid g = PhaseGrid::square(8.0, 256, eps);
    const auto W = wigner_transform(InitialData::gauss_fresnel().sample(g.x, eps), g);
    double err = 0.0;
    for (Index i = 0; i < g.x.n; i += 3)
        for (Index j = 0; j < g.k.n; j += 3) {
            const double x = g.x.node(i), k = g.k.node(j);
            const double ref = std::exp(-x * x - (k - x) * (k - x) / (eps * eps)) / (std::sqrt(pi) * eps);
            err = std::max(err, std::abs(W.values(i, j) - ref));
        }
    CHECK(err < 1e-9);
}

TEST_CASE("mass identities: k-marginal is |psi|^2 and total mass is the norm") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        const double eps = 0.15, a = U(rng), b = U(rng), c = U(rng);
        const PhaseGrid g = PhaseGrid::square(4.0, 128, eps);
        // superposition of two coherent states with random centres
        ComplexField psi = coherent_psi(g.x, eps, a, b);
        psi.values += 0.5 * coherent_psi(g.x, eps, -a, c).values;
        const auto W = wigner_transform(psi, g);
        const Eigen::VectorXd rho = moments(W, 0);
        CHECK((rho - psi.values.cwiseAbs2()).cwiseAbs().maxCoeff() < 1e-8);
        CHECK(W.integral() == doctest::Approx(psi.norm_squared()).epsilon(1e-10));
    }
}

TEST_CASE("pointwise evaluation agrees with the grid transform") {
    const double eps = 0.1;
    const PhaseGrid g = PhaseGrid::square(3.0, 128, eps);
    const auto psi = coherent_psi(g.x, eps, 0.3, 0.2);
    const auto phi = coherent_psi(g.x, eps, -0.2, 0.1);
    const auto W = cross_wigner(psi, phi, g);
    Eigen::VectorXd xs(3), ks(3);
    xs << g.x.node(40), g.x.node(64), g.x.node(70);
    ks << g.k.node(50), g.k.node(66), g.k.node(71);
    const auto P = cross_wigner_at(psi, phi, eps, xs, ks);
    const Index ix[3] = {40, 64, 70}, ik[3] = {50, 66, 71};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) CHECK(std::abs(P(a, b) - W.values(ix[a], ik[b])) < 1e-10);
}

TEST_CASE("cross Wigner is Hermitian in its arguments") {
    const double eps = 0.2;
    const PhaseGrid g = PhaseGrid::square(4.0, 64, eps);
    const auto f = coherent_psi(g.x, eps, 0.5, 0.0), h = coherent_psi(g.x, eps, -0.3, 0.4);
    const auto A = cross_wigner(f, h, g), B = cross_wigner(h, f, g);
    CHECK((A.values - B.values.conjugate()).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("dilation round trip and coverage guard") {
    const double eps = 0.1;
    const PhaseGrid gp = PhaseGrid::square(2.5, 64, eps);
    const PhaseGrid gs = PhaseGrid::square(2.5 / std::sqrt(eps), 64, eps);
    const auto W = wigner_transform(coherent_psi(gp.x, eps, 0.2, -0.1), gp);
    const auto Ws = dilate(W, DilationDirection::to_scaled, gs);
    CHECK(Ws.scaled());
    // scaled coherent state: e^{-(xi - xi0)^2 - (eta - eta0)^2} / pi
    const double xi0 = 0.2 / std::sqrt(eps), eta0 = -0.1 / std::sqrt(eps);
    const Index i = 40, j = 25;
    const double xi = gs.x.node(i), eta = gs.k.node(j);
    CHECK(Ws.values(i, j) == doctest::Approx(std::exp(-(xi - xi0) * (xi - xi0) - (eta - eta0) * (eta - eta0)) / pi).epsilon(1e-9));
    const auto back = dilate(Ws, DilationDirection::to_unscaled, gp);
    CHECK((back.values - W.values).cwiseAbs().maxCoeff() < 1e-9 * W.max_abs());
    const PhaseGrid small = PhaseGrid::square(1.0, 64, eps);
    CHECK_THROWS_AS(dilate(W, DilationDirection::to_scaled, small), CoverageError);
}

TEST_CASE("weighted norm refuses an under-resolved weight") {
    const PhaseGrid g = PhaseGrid::square(2.0, 32, 0.05);
    RealField W(g, Frame::scaled);
    W.values.setOnes();
    CHECK_THROWS_AS(weighted_norm(W, NormKind::gaussian_r_eps), ResolutionError);
    CHECK(weighted_norm(W, NormKind::plain_l2) == doctest::Approx(4.0));
}

TEST_CASE("gaussian weighted norm of a constant is the weight's area") {
    const double eps = 0.1;
    const double v = gaussian_weighted_norm([](double, double) { return 1.0; }, eps);
    CHECK(v == doctest::Approx(std::sqrt(pi * eps * eps)).epsilon(1e-8));
}

TEST_CASE("binary field layout round trips and CSV has a header") {
    const PhaseGrid g = PhaseGrid::square(1.0, 8, 0.3);
    auto W = RealField::sample(g, Frame::scaled, [](double x, double k) { return x - 2 * k; });
    std::stringstream ss;
    io::write_binary(ss, W);
    const auto r = io::read_binary(ss);
    REQUIRE(std::holds_alternative<RealField>(r));
    const auto& R = std::get<RealField>(r);
    CHECK(R.grid == W.grid);
    CHECK(R.scaled());
    CHECK(R.values == W.values);

    const ComplexPhaseField C = to_complex(W);
    std::stringstream sc;
    io::write_binary(sc, C);
    CHECK(std::holds_alternative<ComplexPhaseField>(io::read_binary(sc)));

    std::stringstream csv;
    io::write_csv(csv, W);
    std::string header;
    std::getline(csv, header);
    CHECK(header == "x,k,value");

    std::stringstream snap;
    const auto psi = InitialData::coherent(0.0, 0.0).sample(g.x, 0.3);
    io::write_snapshot(snap, psi, 1.25);
    double t = 0.0;
    const auto back = io::read_snapshot(snap, &t);
    CHECK(t == 1.25);
    CHECK(back.values == psi.values);
}

TEST_CASE("grid invariants") {
    CHECK_THROWS_AS(PhaseGrid::square(1.0, 12, 0.1).validate(), ConfigurationError);
    CHECK_THROWS_AS(PhaseGrid::square(1.0, 16, -0.1).validate(), ConfigurationError);
    CHECK(PhaseGrid::square(1.0, 16, 0.1).square_and_centred());
}

TEST_CASE("spectral derivative of a periodic Gaussian") {
    const PhaseGrid g = PhaseGrid::square(6.0, 64, 1.0);
    const auto W = RealField::sample(g, Frame::scaled, [](double x, double k) { return std::exp(-x * x - k * k); });
    const auto D = spectral_derivative(W, 1, 3);
    double err = 0.0;
    for (Index i = 0; i < g.x.n; ++i)
        for (Index j = 0; j < g.k.n; ++j) {
            const double x = g.x.node(i), k = g.k.node(j);
            const double ref = (-8 * k * k * k + 12 * k) * std::exp(-x * x - k * k);
            err = std::max(err, std::abs(D(i, j) - ref));
        }
    CHECK(err < 1e-10);
}

TEST_CASE("B and Gamma operators for the quartic") {
    const double mu = 0.3;
    const auto B2 = operator_B(2, Potential::quartic(mu));
    // B_2 = mu (xi d_eta^3 / 4 - xi^3 d_eta)
    REQUIRE(B2.terms.size() == 2);
    for (const auto& t : B2.terms) {
        if (t.eta_order == 1) {
            CHECK(t.xi_power == 3);
            CHECK(t.coef == doctest::Approx(-mu));
        } else {
            CHECK(t.eta_order == 3);
            CHECK(t.xi_power == 1);
            CHECK(t.coef == doctest::Approx(mu / 4));
        }
    }
    CHECK(operator_B(1, Potential::quartic(mu)).vanishes());
    CHECK(operator_B(3, Potential::quartic(mu)).vanishes());
    CHECK(operator_B(2, Potential::harmonic()).vanishes());
}

TEST_CASE("bandwidth guard rejects an under-resolved field") {
    const PhaseGrid g = PhaseGrid::square(3.0, 16, 1.0);
    const auto W = RealField::sample(g, Frame::scaled, [](double x, double k) { return std::exp(-4 * (x * x + k * k)); });
    CHECK_THROWS_AS(apply_B(2, W, Potential::quartic(0.1)), ResolutionError);
}
