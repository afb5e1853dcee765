#pragma once

#include <Eigen/Dense>

#include <complex>

namespace wigner {

using cdouble = std::complex<double>;
using Eigen::Index;

// Uniform periodic axis: nodes min + i*h, i = 0..n-1, h = (max - min)/n; max itself is excluded.
struct Axis {
    double min = -1.0;
    double max = 1.0;
    Index n = 8;

    double length() const { return max - min; }
    double spacing() const { return (max - min) / double(n); }
    double node(Index i) const { return min + double(i) * spacing(); }
    Eigen::VectorXd nodes() const {
        return Eigen::VectorXd::LinSpaced(n, min, min + double(n - 1) * spacing());
    }
    // index of the node equal to 0 for symmetric axes with even n, else -1
    Index zero_index() const;
    bool symmetric() const;

    bool operator==(const Axis&) const = default;
};

bool is_power_of_two(Index n);

struct PhaseGrid {
    Axis x;
    Axis k;
    double eps = 1.0;

    // throws ConfigurationError on violated invariants
    void validate() const;
    double cell_area() const { return x.spacing() * k.spacing(); }
    bool square_and_centred() const;

    static PhaseGrid make(double x_min, double x_max, Index nx, double k_min, double k_max, Index nk,
                          double eps);
    // symmetric square grid [-L, L)^2
    static PhaseGrid square(double L, Index n, double eps);

    bool operator==(const PhaseGrid&) const = default;
};

struct ComplexField {
    Axis axis;
    Eigen::VectorXcd values;
    double eps = 1.0;

    double norm_squared() const { return axis.spacing() * values.squaredNorm(); }
    // max |psi| over the outer `width` nodes on either side, relative to max |psi|
    double boundary_level(Index width = 4) const;
};

template <typename F>
ComplexField sample_wavefunction(const Axis& axis, double eps, F&& f) {
    ComplexField psi{axis, Eigen::VectorXcd(axis.n), eps};
    for (Index i = 0; i < axis.n; ++i) psi.values[i] = f(axis.node(i));
    return psi;
}

}  // namespace wigner
