#pragma once

#include <Eigen/Dense>

#include <complex>

namespace wigner::fft {

using cdouble = std::complex<double>;

// Unnormalized forward transform X_j = sum_n x_n e^{-2 pi i j n / N}.
Eigen::VectorXcd forward(const Eigen::VectorXcd& x);
// Inverse, normalized by 1/N.
Eigen::VectorXcd inverse(const Eigen::VectorXcd& X);

// Angular wavenumbers of an N-point periodic grid of period `length`, FFT order.
Eigen::VectorXd wavenumbers(Eigen::Index n, double length);

// Multiplier (i kappa)^order for a spectral derivative; odd orders zero the Nyquist mode.
Eigen::VectorXcd derivative_symbol(Eigen::Index n, double length, int order);
// Multiplier for f(x) -> f(x + delta); the Nyquist mode keeps its real part.
Eigen::VectorXcd shift_symbol(Eigen::Index n, double length, double delta);

Eigen::VectorXcd apply_symbol(const Eigen::VectorXcd& f, const Eigen::VectorXcd& symbol);

Eigen::VectorXcd derivative(const Eigen::VectorXcd& f, double length, int order);
Eigen::VectorXcd shift(const Eigen::VectorXcd& f, double length, double delta);

// In-place along one matrix axis: axis 0 transforms every column, axis 1 every row.
void apply_symbol_along(Eigen::MatrixXcd& a, int axis, const Eigen::VectorXcd& symbol);
void forward_along(Eigen::MatrixXcd& a, int axis);
void inverse_along(Eigen::MatrixXcd& a, int axis);

// Band-limited resampling of periodic samples f (period `length`, first node x0)
// at arbitrary points: the trigonometric interpolant evaluated exactly.
Eigen::MatrixXd interpolation_matrix(Eigen::Index n, double x0, double length,
                                     const Eigen::VectorXd& points);

// Smallest |kappa| beyond which every spectral amplitude stays below `rel` of the peak.
double effective_bandwidth(const Eigen::VectorXcd& spectrum, double length, double rel);

}  // namespace wigner::fft
