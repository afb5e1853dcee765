#include "wigner/classical_expansion.hpp"
#include "wigner/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace wigner;
using std::numbers::pi;

namespace {

double smooth_data(double x, double k) { return std::exp(-(x - 1.0) * (x - 1.0) - k * k) / pi; }

}  // namespace

TEST_CASE("symplectic flow: harmonic exactness and quartic energy conservation") {
    const FlowMap h(Potential::harmonic());
    const auto [x, k] = h.forward(0.3, -0.8, 2.7);
    CHECK(x == doctest::Approx(0.3 * std::cos(2.7) - 0.8 * std::sin(2.7)).epsilon(1e-11));
    CHECK(k == doctest::Approx(-0.8 * std::cos(2.7) - 0.3 * std::sin(2.7)).epsilon(1e-11));

    const FlowMap f(Potential::quartic(0.3));
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    for (int i = 0; i < 20; ++i) {
        const double q = U(rng), p = U(rng);
        const auto [a, b] = f.forward(q, p, 10.0);
        CHECK(f.energy(a, b) == doctest::Approx(f.energy(q, p)).epsilon(1e-11));
        const auto [c, d] = f.inverse(a, b, 10.0);
        CHECK(c == doctest::Approx(q).epsilon(1e-9).scale(1.0));
        CHECK(d == doctest::Approx(p).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("dense trajectory output matches single integrations") {
    const FlowMap f(Potential::quartic(0.2));
    const std::vector<double> times{2.0, -1.0, 0.5, 0.0};
    const auto tr = f.trajectory(0.4, 0.9, times);
    for (std::size_t i = 0; i < times.size(); ++i) {
        const auto [q, p] = f.forward(0.4, 0.9, times[i]);
        CHECK(tr[i].t == times[i]);
        CHECK(tr[i].q == doctest::Approx(q).epsilon(1e-12).scale(1.0));
        CHECK(tr[i].p == doctest::Approx(p).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("integrate_flow reports energy drift with a smaller step") {
    CHECK_NOTHROW(integrate_flow(Potential::quartic(0.1), 1.0, 0.0, 5.0));
    CHECK_THROWS_AS(integrate_flow(Potential::quartic(1.0), 3.0, 2.0, 5.0, 0.2), NumericError);
}

TEST_CASE("classical transport with the harmonic potential is the rotation") {
    const PhaseGrid g = PhaseGrid::square(8.0, 64, 0.1);
    const FlowMap flow(Potential::harmonic());
    const auto W = liouville_term(smooth_data, g, flow, 1.1);
    const auto R = rotate(RealField::sample(g, Frame::physical, smooth_data), 1.1);
    CHECK((W.values - R.values).cwiseAbs().maxCoeff() < 1e-9);
    // sampled source goes through the spectral interpolator
    const auto S = liouville_term(RealField::sample(g, Frame::physical, smooth_data), flow, 1.1);
    CHECK((S.values - W.values).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("Theta_1 for the quartic is -(mu x / 4) d_k^3") {
    const double mu = 0.3;
    const PhaseGrid g = PhaseGrid::square(6.0, 64, 0.1);
    const auto W = RealField::sample(g, Frame::physical, [](double x, double k) { return std::exp(-x * x - k * k); });
    const auto T = apply_theta(1, W, Potential::quartic(mu));
    double err = 0.0;
    for (Index i = 0; i < g.x.n; ++i)
        for (Index j = 0; j < g.k.n; ++j) {
            const double x = g.x.node(i), k = g.k.node(j);
            const double ref = -(mu * x / 4) * (-8 * k * k * k + 12 * k) * std::exp(-x * x - k * k);
            err = std::max(err, std::abs(T.values(i, j) - ref));
        }
    CHECK(err < 1e-10);
    CHECK(theta_operator(1).vanishes(Potential::harmonic()));
    CHECK(theta_operator(2).vanishes(Potential::quartic(mu)));
}

TEST_CASE("classical corrector solves its transport equation") {
    const double eps = 0.1, mu = 0.1, t = 1.0, d = 1e-3;
    // the flow maps the boundary |k| = L onto the turning point of an orbit with energy L^2/2
    const PhaseGrid g = PhaseGrid::square(10.0, 128, eps);
    const Potential V = Potential::quartic(mu);
    ClassicalSeries s(smooth_data, g, FlowMap(V), 1, {t - 2 * d, t - d, t, t + d, t + 2 * d});
    auto T = [&](int l, double tt) { return s.term(l, tt).values; };
    const Eigen::MatrixXd dZ = (8.0 * (T(1, t + d) - T(1, t - d)) - (T(1, t + 2 * d) - T(1, t - 2 * d))) / (12 * d);
    const Eigen::MatrixXd lhs = dZ + apply_classical_liouville(s.term(1, t), V).values;
    const Eigen::MatrixXd rhs = apply_theta(1, s.term(0, t), V).values;
    CHECK((lhs - rhs).norm() / rhs.norm() < 1e-4);

    // the leading term is transported exactly
    const Eigen::MatrixXd dW = (8.0 * (T(0, t + d) - T(0, t - d)) - (T(0, t + 2 * d) - T(0, t - 2 * d))) / (12 * d);
    const Eigen::MatrixXd L0 = apply_classical_liouville(s.term(0, t), V).values;
    CHECK((dW + L0).norm() / L0.norm() < 1e-6);

    // full Wigner operator on W_c + eps^2 Z^(1): what is left is -eps^4 Theta_1 Z^(1)
    const Eigen::MatrixXd W = s.sum(1, t).values;
    const Eigen::MatrixXd dWs = dW + eps * eps * dZ;
    RealField Wf(g, Frame::physical);
    Wf.values = W;
    const Eigen::MatrixXd res = dWs + apply_classical_liouville(Wf, V).values - eps * eps * apply_theta(1, Wf, V).values;
    CHECK(res.norm() / L0.norm() < 1e-4);
}

TEST_CASE("multiple-scales flow") {
    const auto [x, k] = multiscale_flow(0.0, 0.3, 0.4, 1.7);
    CHECK(x == doctest::Approx(0.3 * std::cos(1.7) + 0.4 * std::sin(1.7)));
    CHECK(k == doctest::Approx(0.4 * std::cos(1.7) - 0.3 * std::sin(1.7)));
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> U(-2.0, 2.0), M(0.0, 0.5);
    for (int i = 0; i < 50; ++i) {
        const double mu = M(rng), q = U(rng), p = U(rng), t = 3 * U(rng);
        const auto [a, b] = multiscale_flow(mu, q, p, t);
        const auto [c, d] = multiscale_flow(mu, a, b, t, FlowDirection::inverse);
        CHECK(c == doctest::Approx(q).epsilon(1e-12).scale(1.0));
        CHECK(d == doctest::Approx(p).epsilon(1e-12).scale(1.0));
    }
    CHECK_THROWS_AS(multiscale_flow(0.6, 1.0, 0.0, 1.0), DomainError);
    // first-order accuracy in mu against the exact dynamics
    const FlowMap f(Potential::quartic(0.01));
    const auto [xe, ke] = f.forward(1.0, 0.5, 2.0);
    const auto [xa, ka] = multiscale_flow(0.01, 1.0, 0.5, 2.0);
    CHECK(std::hypot(xe - xa, ke - ka) < 5e-3);
}
