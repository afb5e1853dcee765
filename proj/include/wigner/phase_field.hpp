#pragma once

#include "wigner/grid.hpp"

#include <Eigen/Dense>

#include <string>
#include <type_traits>

namespace wigner {

enum class Frame { physical, scaled };

// Samples of a function on a PhaseGrid: values(i, j) at (x_i, k_j), or (xi_i, eta_j) when scaled.
template <typename Scalar>
struct PhaseField {
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    PhaseGrid grid;
    Frame frame = Frame::physical;
    Matrix values;

    // diagnostics attached by transforms
    double imag_residue = 0.0;
    std::string warning;

    PhaseField() = default;
    PhaseField(const PhaseGrid& g, Frame f) : grid(g), frame(f), values(Matrix::Zero(g.x.n, g.k.n)) {}
    PhaseField(const PhaseGrid& g, Frame f, Matrix v) : grid(g), frame(f), values(std::move(v)) {}

    bool scaled() const { return frame == Frame::scaled; }
    double cell_area() const { return grid.cell_area(); }

    Scalar integral() const { return values.sum() * cell_area(); }
    double l2_norm() const { return std::sqrt(values.squaredNorm() * cell_area()); }
    double max_abs() const { return values.cwiseAbs().maxCoeff(); }

    template <typename F>
    static PhaseField sample(const PhaseGrid& g, Frame f, F&& fn) {
        PhaseField out(g, f);
        for (Index j = 0; j < g.k.n; ++j) {
            const double kj = g.k.node(j);
            for (Index i = 0; i < g.x.n; ++i) out.values(i, j) = fn(g.x.node(i), kj);
        }
        return out;
    }
};

using RealField = PhaseField<double>;
using ComplexPhaseField = PhaseField<cdouble>;

template <typename Scalar>
bool same_support(const PhaseField<Scalar>& a, const PhaseField<Scalar>& b) {
    return a.grid == b.grid && a.frame == b.frame;
}

// L2 inner product (a, b) = integral of a * conj(b).
template <typename A, typename B>
auto inner(const PhaseField<A>& a, const PhaseField<B>& b) {
    return (a.values.array() * b.values.array().conjugate()).sum() * a.cell_area();
}

template <typename Scalar>
double l2_distance(const PhaseField<Scalar>& a, const PhaseField<Scalar>& b) {
    return std::sqrt((a.values - b.values).squaredNorm() * a.cell_area());
}

inline ComplexPhaseField to_complex(const RealField& f) {
    ComplexPhaseField out(f.grid, f.frame, f.values.cast<cdouble>());
    out.imag_residue = f.imag_residue;
    out.warning = f.warning;
    return out;
}

inline RealField real_part(const ComplexPhaseField& f) {
    RealField out(f.grid, f.frame, f.values.real());
    const double peak = f.max_abs();
    out.imag_residue = peak > 0 ? f.values.imag().cwiseAbs().maxCoeff() / peak : 0.0;
    out.warning = f.warning;
    return out;
}

template <typename Scalar>
PhaseField<Scalar> like(const PhaseField<Scalar>& f,
                        typename PhaseField<Scalar>::Matrix v) {
    return PhaseField<Scalar>(f.grid, f.frame, std::move(v));
}

}  // namespace wigner
