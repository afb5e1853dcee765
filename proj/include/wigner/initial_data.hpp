#pragma once

#include "wigner/grid.hpp"
#include "wigner/phase_field.hpp"

#include <Eigen/Dense>

#include <string>

namespace wigner {

// amp * exp(-(z - c)^T Q (z - c)), Q symmetric positive definite.
struct GaussianPhaseFunction {
    double amp = 1.0;
    Eigen::Matrix2d Q = Eigen::Matrix2d::Identity();
    Eigen::Vector2d center = Eigen::Vector2d::Zero();

    double operator()(double x, double k) const;
    // order-th derivative along the unit direction d at (x, k)
    double directional_derivative(double x, double k, const Eigen::Vector2d& d, int order) const;
    double integral() const;
};

enum class InitialKind { coherent, wkb_gauss_fresnel, wkb_linear_phase };

// Gaussian initial states with closed-form Wigner functions.
//   coherent:          psi = (pi eps)^{-1/4} e^{i k0 x/eps} e^{-(x - x0)^2/(2 eps)}
//   wkb-gauss-fresnel: psi = e^{-x^2/2} e^{i x^2/(2 eps)}
//   wkb-linear-phase:  psi = e^{-x^2/2} e^{i k0 x/eps}
// Coherent centres are given in scaled variables (xi0, eta0) so that x0 = sqrt(eps) xi0.
struct InitialData {
    InitialKind kind = InitialKind::coherent;
    double xi0 = 0.0;
    double eta0 = 0.0;
    double k0 = 0.0;

    static InitialData coherent(double xi0, double eta0);
    static InitialData gauss_fresnel();
    static InitialData linear_phase(double k0);

    cdouble psi(double x, double eps) const;
    // scaled wavefunction eps^{1/4} psi(sqrt(eps) xi)
    cdouble phi(double xi, double eps) const;

    GaussianPhaseFunction wigner(double eps) const;         // physical frame
    GaussianPhaseFunction wigner_scaled(double eps) const;  // W~ = eps W(sqrt(eps) .)

    ComplexField sample(const Axis& axis, double eps) const;
    ComplexField sample_scaled(const Axis& axis, double eps) const;

    std::string name() const;
};

RealField sample_field(const GaussianPhaseFunction& g, const PhaseGrid& grid, Frame frame);

}  // namespace wigner
