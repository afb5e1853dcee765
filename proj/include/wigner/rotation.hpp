#pragma once

#include "wigner/phase_field.hpp"

#include <Eigen/Dense>

namespace wigner {

// g = f o R_theta with R_theta(xi, eta) = (xi cos - eta sin, xi sin + eta cos).
// Quarter turns are exact index permutations; the remainder (|angle| <= pi/4) uses three
// Fourier shears. Needs a square grid centred at the origin; throws CoverageError when f is not
// negligible (1e-10 of its peak) outside the radius the intermediate shears keep on the grid.
template <typename Scalar>
PhaseField<Scalar> rotate(const PhaseField<Scalar>& f, double theta);

// Evaluation of a sampled field at scattered points: 4x spectral upsampling followed by a
// 8-point tensor Lagrange stencil. Points outside the grid read as zero; the constructor
// throws CoverageError if that would hide a non-negligible boundary value.
template <typename Scalar>
class SpectralInterpolator {
public:
    explicit SpectralInterpolator(const PhaseField<Scalar>& f, int upsample = 4);
    Scalar operator()(double x, double k) const;
    bool inside(double x, double k) const;

private:
    double x0_, k0_, hx_, hk_;
    Index nx_, nk_;
    typename PhaseField<Scalar>::Matrix fine_;
};

}  // namespace wigner
