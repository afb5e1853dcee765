#pragma once

#include "wigner/grid.hpp"
#include "wigner/phase_field.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace wigner {

// W[f,g](x,k) = (1/2 pi e) int e^{-i k xi / e} f(x + xi/2) conj(g(x - xi/2)) dxi with e = grid.eps
// in the physical frame and e = 1 in the scaled frame. Inputs must live on grid.x.
ComplexPhaseField cross_wigner(const ComplexField& f, const ComplexField& g, const PhaseGrid& grid,
                               Frame frame = Frame::physical);

// Real part of cross_wigner(psi, psi); imag_residue holds max|Im W| / max|W|.
RealField wigner_transform(const ComplexField& psi, const PhaseGrid& grid,
                           Frame frame = Frame::physical);

// Direct evaluation at arbitrary (x_a, k_b) pairs from a tensor product of coordinate lists.
Eigen::MatrixXcd cross_wigner_at(const ComplexField& f, const ComplexField& g, double eps,
                                 const Eigen::VectorXd& xs, const Eigen::VectorXd& ks);

// order 0: eta(x) = int W dk, order 1: F(x) = int k W dk.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> moments(const PhaseField<Scalar>& W, int order) {
    const double dk = W.grid.k.spacing();
    if (order == 0) return W.values.rowwise().sum() * dk;
    Eigen::VectorXd kn = W.grid.k.nodes();
    return (W.values * kn.cast<Scalar>()) * dk;
}

enum class DilationDirection { to_scaled, to_unscaled };

// to_scaled: W~(xi, eta) = eps W(sqrt(eps) xi, sqrt(eps) eta); to_unscaled is the inverse,
// W(x,k) = eps^{-1} W~(x/sqrt(eps), k/sqrt(eps)). eps is taken from the source grid.
template <typename Scalar>
PhaseField<Scalar> dilate(const PhaseField<Scalar>& W, DilationDirection dir, const PhaseGrid& target);

enum class NormKind { plain_l2, gaussian_r_eps };

// (int int |W|^2 r dxi deta)^{1/2}, r = 1 or r = e^{-(xi^2 + eta^2)/eps^2}.
template <typename Scalar>
double weighted_norm(const PhaseField<Scalar>& W, NormKind kind);

// r^eps-weighted norm of a pointwise function on a local tensor grid of spacing eps/8 over +-6 eps.
template <typename F>
double gaussian_weighted_norm(F&& f, double eps, int points_per_eps = 8) {
    const double h = eps / points_per_eps;
    const int m = 6 * points_per_eps;
    double acc = 0.0;
    for (int i = -m; i <= m; ++i)
        for (int j = -m; j <= m; ++j) {
            const double xi = i * h, eta = j * h;
            const double r = std::exp(-(xi * xi + eta * eta) / (eps * eps));
            acc += std::norm(f(xi, eta)) * r;
        }
    return std::sqrt(acc * h * h);
}

}  // namespace wigner
