#include "wigner/rotation.hpp"

#include "wigner/errors.hpp"
#include "wigner/fft.hpp"
#include "wigner/io.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace wigner {

namespace {

template <typename Scalar>
typename PhaseField<Scalar>::Matrix narrow(const Eigen::MatrixXcd& m) {
    if constexpr (std::is_same_v<Scalar, double>) return m.real();
    else return m;
}

// f(xi + c * eta_j, eta_j) along axis 0 for every column j (axis == 0), or
// f(xi_i, eta + c * xi_i) along axis 1 for every row i.
void shear(Eigen::MatrixXcd& a, int axis, const Axis& ax, double c) {
    const Index n = ax.n;
    Eigen::VectorXcd in(n), out(n);
    const Eigen::VectorXd kap = fft::wavenumbers(n, ax.length());
    for (Index s = 0; s < n; ++s) {
        const double delta = c * ax.node(s);
        if (axis == 0) in = a.col(s); else in = a.row(s).transpose();
        out = fft::forward(in);
        for (Index j = 0; j < n; ++j)
            out[j] *= (j == n / 2) ? cdouble(std::cos(kap[j] * delta)) : std::polar(1.0, kap[j] * delta);
        in = fft::inverse(out);
        if (axis == 0) a.col(s) = in; else a.row(s) = in.transpose();
    }
}

}  // namespace

template <typename Scalar>
PhaseField<Scalar> rotate(const PhaseField<Scalar>& f, double theta) {
    const auto& g = f.grid;
    if (!g.square_and_centred())
        throw ConfigurationError("rotate: grid must be square and centred at the origin");
    const Index n = g.x.n;
    const double L = g.x.max;

    int quarter = int(std::lround(theta / (0.5 * std::numbers::pi)));
    const double rest = theta - quarter * 0.5 * std::numbers::pi;
    quarter = ((quarter % 4) + 4) % 4;

    const double a = -std::tan(0.5 * rest), b = std::sin(rest);
    if (rest != 0.0) {
        // a disc of radius r widens to r / cos(rest/2) along xi after the first shear and is back
        // inside radius r along eta after the second (1 + a b = cos(rest))
        const double r_max = L * std::cos(0.5 * rest) - g.x.spacing();
        const double peak = f.max_abs();
        double outside = 0.0;
        for (Index j = 0; j < n; ++j)
            for (Index i = 0; i < n; ++i) {
                const double x = g.x.node(i), k = g.k.node(j);
                if (x * x + k * k > r_max * r_max) outside = std::max(outside, std::abs(f.values(i, j)));
            }
        if (peak > 0 && outside > 1e-10 * peak)
            throw CoverageError("rotate: field level " + io::format_double(outside / peak) +
                                " beyond radius " + std::to_string(r_max) + " would wrap during the shears");
    }

    // exact quarter turns: f o R_{pi/2}(xi, eta) = f(-eta, xi)
    typename PhaseField<Scalar>::Matrix v = f.values;
    for (int q = 0; q < quarter; ++q) {
        typename PhaseField<Scalar>::Matrix w(n, n);
        for (Index j = 0; j < n; ++j)
            for (Index i = 0; i < n; ++i) w(i, j) = v((n - j) % n, i);
        v.swap(w);
    }

    PhaseField<Scalar> out(g, f.frame);
    if (rest == 0.0) {
        out.values = std::move(v);
        return out;
    }
    Eigen::MatrixXcd c = v.template cast<cdouble>();
    shear(c, 0, g.k, a);
    shear(c, 1, g.x, b);
    shear(c, 0, g.k, a);
    out.values = narrow<Scalar>(c);
    return out;
}

template RealField rotate(const RealField&, double);
template ComplexPhaseField rotate(const ComplexPhaseField&, double);

template <typename Scalar>
SpectralInterpolator<Scalar>::SpectralInterpolator(const PhaseField<Scalar>& f, int upsample) {
    const Index nx = f.grid.x.n, nk = f.grid.k.n;
    nx_ = nx * upsample;
    nk_ = nk * upsample;
    x0_ = f.grid.x.min;
    k0_ = f.grid.k.min;
    hx_ = f.grid.x.spacing() / upsample;
    hk_ = f.grid.k.spacing() / upsample;

    const double peak = f.max_abs();
    double edge = 0.0;
    edge = std::max({edge, f.values.row(0).cwiseAbs().maxCoeff(), f.values.row(nx - 1).cwiseAbs().maxCoeff(),
                     f.values.col(0).cwiseAbs().maxCoeff(), f.values.col(nk - 1).cwiseAbs().maxCoeff()});
    if (peak > 0 && edge > 1e-8 * peak)
        throw CoverageError("interpolation: field not negligible at the grid boundary (level " +
                            io::format_double(edge / peak) + ")");

    Eigen::MatrixXcd F = f.values.template cast<cdouble>();
    fft::forward_along(F, 0);
    fft::forward_along(F, 1);
    Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(nx_, nk_);
    auto map = [](Index j, Index n, Index N) -> Index { return j < n / 2 ? j : j + (N - n); };
    for (Index j = 0; j < nk; ++j)
        for (Index i = 0; i < nx; ++i) {
            cdouble v = F(i, j);
            // split Nyquist rows/columns symmetrically
            const bool ny_i = i == nx / 2, ny_j = j == nk / 2;
            const double w = (ny_i ? 0.5 : 1.0) * (ny_j ? 0.5 : 1.0);
            const Index ii = map(i, nx, nx_), jj = map(j, nk, nk_);
            G(ii, jj) += w * v;
            const Index di = nx_ - nx, dj = nk_ - nk;  // +n/2 image of the -n/2 mode
            if (ny_i) G(ii - di, jj) += w * v;
            if (ny_j) G(ii, jj - dj) += w * v;
            if (ny_i && ny_j) G(ii - di, jj - dj) += w * v;
        }
    fft::inverse_along(G, 0);
    fft::inverse_along(G, 1);
    G *= double(upsample * upsample);
    fine_ = narrow<Scalar>(G);
}

template <typename Scalar>
bool SpectralInterpolator<Scalar>::inside(double x, double k) const {
    return x >= x0_ && x < x0_ + double(nx_) * hx_ && k >= k0_ && k < k0_ + double(nk_) * hk_;
}

template <typename Scalar>
Scalar SpectralInterpolator<Scalar>::operator()(double x, double k) const {
    if (!inside(x, k)) return Scalar(0);
    const double u = (x - x0_) / hx_, v = (k - k0_) / hk_;
    const Index iu = Index(std::floor(u)), iv = Index(std::floor(v));
    const double fu = u - double(iu), fv = v - double(iv);
    constexpr int P = 8, off = P / 2 - 1;
    double wu[P], wv[P];
    for (int a = 0; a < P; ++a) {
        double pu = 1.0, pv = 1.0;
        for (int b = 0; b < P; ++b) {
            if (a == b) continue;
            pu *= (fu - (b - off)) / double(a - b);
            pv *= (fv - (b - off)) / double(a - b);
        }
        wu[a] = pu;
        wv[a] = pv;
    }
    Scalar acc(0);
    for (int b = 0; b < P; ++b) {
        const Index jj = ((iv + b - off) % nk_ + nk_) % nk_;
        Scalar row(0);
        for (int a = 0; a < P; ++a) {
            const Index ii = ((iu + a - off) % nx_ + nx_) % nx_;
            row += wu[a] * fine_(ii, jj);
        }
        acc += wv[b] * row;
    }
    return acc;
}

template class SpectralInterpolator<double>;
template class SpectralInterpolator<cdouble>;

}  // namespace wigner
