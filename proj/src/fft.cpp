#include "wigner/fft.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <numbers>

namespace wigner::fft {

namespace {

Eigen::FFT<double>& engine() {
    thread_local Eigen::FFT<double> f;
    return f;
}

}  // namespace

Eigen::VectorXcd forward(const Eigen::VectorXcd& x) {
    Eigen::VectorXcd X(x.size());
    engine().fwd(X, x);
    return X;
}

Eigen::VectorXcd inverse(const Eigen::VectorXcd& X) {
    Eigen::VectorXcd x(X.size());
    engine().inv(x, X);
    return x;
}

Eigen::VectorXd wavenumbers(Eigen::Index n, double length) {
    Eigen::VectorXd k(n);
    const double dk = 2.0 * std::numbers::pi / length;
    for (Eigen::Index j = 0; j < n; ++j) k[j] = dk * double(j < (n + 1) / 2 ? j : j - n);
    // even n: j = n/2 is the Nyquist mode, listed with negative sign
    return k;
}

Eigen::VectorXcd derivative_symbol(Eigen::Index n, double length, int order) {
    const auto k = wavenumbers(n, length);
    Eigen::VectorXcd s(n);
    const cdouble I(0.0, 1.0);
    for (Eigen::Index j = 0; j < n; ++j) s[j] = std::pow(I * k[j], order);
    if (n % 2 == 0 && order % 2 == 1) s[n / 2] = 0.0;
    return s;
}

Eigen::VectorXcd shift_symbol(Eigen::Index n, double length, double delta) {
    const auto k = wavenumbers(n, length);
    Eigen::VectorXcd s(n);
    for (Eigen::Index j = 0; j < n; ++j) s[j] = std::polar(1.0, k[j] * delta);
    if (n % 2 == 0) s[n / 2] = std::cos(k[n / 2] * delta);
    return s;
}

Eigen::VectorXcd apply_symbol(const Eigen::VectorXcd& f, const Eigen::VectorXcd& symbol) {
    Eigen::VectorXcd F = forward(f);
    F.array() *= symbol.array();
    return inverse(F);
}

Eigen::VectorXcd derivative(const Eigen::VectorXcd& f, double length, int order) {
    return apply_symbol(f, derivative_symbol(f.size(), length, order));
}

Eigen::VectorXcd shift(const Eigen::VectorXcd& f, double length, double delta) {
    return apply_symbol(f, shift_symbol(f.size(), length, delta));
}

void apply_symbol_along(Eigen::MatrixXcd& a, int axis, const Eigen::VectorXcd& symbol) {
    auto& e = engine();
    if (axis == 0) {
        Eigen::VectorXcd in(a.rows()), out(a.rows());
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            in = a.col(j);
            e.fwd(out, in);
            out.array() *= symbol.array();
            e.inv(in, out);
            a.col(j) = in;
        }
    } else {
        Eigen::VectorXcd in(a.cols()), out(a.cols());
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            in = a.row(i).transpose();
            e.fwd(out, in);
            out.array() *= symbol.array();
            e.inv(in, out);
            a.row(i) = in.transpose();
        }
    }
}

void forward_along(Eigen::MatrixXcd& a, int axis) {
    auto& e = engine();
    if (axis == 0) {
        Eigen::VectorXcd in(a.rows()), out(a.rows());
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            in = a.col(j);
            e.fwd(out, in);
            a.col(j) = out;
        }
    } else {
        Eigen::VectorXcd in(a.cols()), out(a.cols());
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            in = a.row(i).transpose();
            e.fwd(out, in);
            a.row(i) = out.transpose();
        }
    }
}

void inverse_along(Eigen::MatrixXcd& a, int axis) {
    auto& e = engine();
    if (axis == 0) {
        Eigen::VectorXcd in(a.rows()), out(a.rows());
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            in = a.col(j);
            e.inv(out, in);
            a.col(j) = out;
        }
    } else {
        Eigen::VectorXcd in(a.cols()), out(a.cols());
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            in = a.row(i).transpose();
            e.inv(out, in);
            a.row(i) = out.transpose();
        }
    }
}

Eigen::MatrixXd interpolation_matrix(Eigen::Index n, double x0, double length,
                                     const Eigen::VectorXd& points) {
    // Periodic Dirichlet kernel for even n with the Nyquist term split symmetrically.
    const double h = length / double(n);
    Eigen::MatrixXd M(points.size(), n);
    for (Eigen::Index p = 0; p < points.size(); ++p) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const double u = std::numbers::pi * (points[p] - x0 - double(j) * h) / length;
            const double s = std::sin(u);
            double v;
            if (std::abs(s) < 1e-14) {
                v = 1.0;  // a periodic image of node j
            } else if (n % 2 == 0) {
                v = std::sin(double(n) * u) * std::cos(u) / (double(n) * s);
            } else {
                v = std::sin(double(n) * u) / (double(n) * s);
            }
            M(p, j) = v;
        }
    }
    return M;
}

double effective_bandwidth(const Eigen::VectorXcd& spectrum, double length, double rel) {
    const auto k = wavenumbers(spectrum.size(), length);
    const double peak = spectrum.cwiseAbs().maxCoeff();
    if (peak == 0.0) return 0.0;
    double kmax = 0.0;
    for (Eigen::Index j = 0; j < spectrum.size(); ++j)
        if (std::abs(spectrum[j]) > rel * peak) kmax = std::max(kmax, std::abs(k[j]));
    return kmax;
}

}  // namespace wigner::fft
