#include "wigner/initial_data.hpp"

#include <cmath>
#include <numbers>

namespace wigner {

double GaussianPhaseFunction::operator()(double x, double k) const {
    const Eigen::Vector2d z(x - center[0], k - center[1]);
    return amp * std::exp(-z.dot(Q * z));
}

double GaussianPhaseFunction::directional_derivative(double x, double k, const Eigen::Vector2d& d,
                                                     int order) const {
    // f^{(n)} = P_n(g) f with g = -2 d.Q(z - c), b = -2 d.Q d, P_{n+1} = g P_n + b P_n'
    const Eigen::Vector2d z(x - center[0], k - center[1]);
    const double g = -2.0 * d.dot(Q * z);
    const double b = -2.0 * d.dot(Q * d);
    Eigen::VectorXd P = Eigen::VectorXd::Zero(order + 1);
    P[0] = 1.0;
    for (int n = 0; n < order; ++n) {
        Eigen::VectorXd next = Eigen::VectorXd::Zero(order + 1);
        for (int i = 0; i <= n; ++i) {
            next[i + 1] += P[i];
            if (i > 0) next[i - 1] += b * i * P[i];
        }
        P = next;
    }
    double poly = 0.0;
    for (int i = order; i >= 0; --i) poly = poly * g + P[i];
    return poly * (*this)(x, k);
}

double GaussianPhaseFunction::integral() const { return amp * std::numbers::pi / std::sqrt(Q.determinant()); }

InitialData InitialData::coherent(double xi0, double eta0) {
    InitialData d;
    d.kind = InitialKind::coherent;
    d.xi0 = xi0;
    d.eta0 = eta0;
    return d;
}

InitialData InitialData::gauss_fresnel() {
    InitialData d;
    d.kind = InitialKind::wkb_gauss_fresnel;
    return d;
}

InitialData InitialData::linear_phase(double k0) {
    InitialData d;
    d.kind = InitialKind::wkb_linear_phase;
    d.k0 = k0;
    return d;
}

cdouble InitialData::psi(double x, double eps) const {
    switch (kind) {
        case InitialKind::coherent: {
            const double x0 = std::sqrt(eps) * xi0, p0 = std::sqrt(eps) * eta0;
            return std::pow(std::numbers::pi * eps, -0.25) * std::exp(-(x - x0) * (x - x0) / (2.0 * eps)) *
                   std::polar(1.0, p0 * x / eps);
        }
        case InitialKind::wkb_gauss_fresnel:
            return std::exp(-0.5 * x * x) * std::polar(1.0, 0.5 * x * x / eps);
        case InitialKind::wkb_linear_phase:
            return std::exp(-0.5 * x * x) * std::polar(1.0, k0 * x / eps);
    }
    return 0.0;
}

cdouble InitialData::phi(double xi, double eps) const {
    return std::pow(eps, 0.25) * psi(std::sqrt(eps) * xi, eps);
}

GaussianPhaseFunction InitialData::wigner(double eps) const {
    GaussianPhaseFunction g;
    switch (kind) {
        case InitialKind::coherent:
            g.amp = 1.0 / (std::numbers::pi * eps);
            g.Q = Eigen::Matrix2d::Identity() / eps;
            g.center = Eigen::Vector2d(std::sqrt(eps) * xi0, std::sqrt(eps) * eta0);
            break;
        case InitialKind::wkb_gauss_fresnel: {
            // e^{-x^2} e^{-(k - x)^2/eps^2}
            const double a = 1.0 / (eps * eps);
            g.amp = 1.0 / (std::sqrt(std::numbers::pi) * eps);
            g.Q << 1.0 + a, -a, -a, a;
            break;
        }
        case InitialKind::wkb_linear_phase:
            g.amp = 1.0 / (std::sqrt(std::numbers::pi) * eps);
            g.Q << 1.0, 0.0, 0.0, 1.0 / (eps * eps);
            g.center = Eigen::Vector2d(0.0, k0);
            break;
    }
    return g;
}

GaussianPhaseFunction InitialData::wigner_scaled(double eps) const {
    GaussianPhaseFunction g = wigner(eps);
    g.amp *= eps;
    g.Q *= eps;
    g.center /= std::sqrt(eps);
    return g;
}

ComplexField InitialData::sample(const Axis& axis, double eps) const {
    return sample_wavefunction(axis, eps, [&](double x) { return psi(x, eps); });
}

ComplexField InitialData::sample_scaled(const Axis& axis, double eps) const {
    ComplexField f = sample_wavefunction(axis, 1.0, [&](double xi) { return phi(xi, eps); });
    return f;
}

std::string InitialData::name() const {
    switch (kind) {
        case InitialKind::coherent: return "coherent";
        case InitialKind::wkb_gauss_fresnel: return "wkb-gauss-fresnel";
        case InitialKind::wkb_linear_phase: return "wkb-linear-phase";
    }
    return "?";
}

RealField sample_field(const GaussianPhaseFunction& g, const PhaseGrid& grid, Frame frame) {
    return RealField::sample(grid, frame, [&](double x, double k) { return g(x, k); });
}

}  // namespace wigner
