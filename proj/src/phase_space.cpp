#include "wigner/phase_space.hpp"

#include "wigner/errors.hpp"
#include "wigner/fft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace wigner {

namespace {

constexpr double kDecayTolerance = 1e-8;

void require_on_axis(const ComplexField& f, const Axis& axis, const char* name) {
    if (!(f.axis == axis) || f.values.size() != axis.n)
        throw ConfigurationError(std::string("cross_wigner: ") + name +
                                 " is not sampled on the grid's x-axis");
}

}  // namespace

ComplexPhaseField cross_wigner(const ComplexField& f, const ComplexField& g, const PhaseGrid& grid,
                               Frame frame) {
    grid.validate();
    require_on_axis(f, grid.x, "f");
    require_on_axis(g, grid.x, "g");
    const double e = frame == Frame::scaled ? 1.0 : grid.eps;

    const Index nx = grid.x.n, nk = grid.k.n;
    const Index M = 2 * nk;
    const Index P = 2 * nx;
    const double D = grid.x.length();
    const double dk = grid.k.spacing();
    const double delta = std::numbers::pi * e / (double(M) * dk);  // lag step in sigma = xi/2
    const Index J = std::min<Index>(nk - 1, Index(std::floor(D / delta)));

    Eigen::VectorXcd fp = Eigen::VectorXcd::Zero(P), gp = Eigen::VectorXcd::Zero(P);
    fp.head(nx) = f.values;
    gp.head(nx) = g.values;
    const Eigen::VectorXcd F = fft::forward(fp);
    const Eigen::VectorXcd G = fft::forward(gp);
    const double Lp = 2.0 * D;

    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(nx, M);
    double edge = 0.0, peak = 0.0;
    for (Index j = -J; j <= J; ++j) {
        const double s = double(j) * delta;
        Eigen::VectorXcd fs = fft::inverse((F.array() * fft::shift_symbol(P, Lp, s).array()).matrix());
        Eigen::VectorXcd gs = fft::inverse((G.array() * fft::shift_symbol(P, Lp, -s).array()).matrix());
        auto col = C.col((j + M) % M);
        col = (fs.head(nx).array() * gs.head(nx).array().conjugate()).matrix();
        const double a = col.cwiseAbs().maxCoeff();
        peak = std::max(peak, a);
        if (std::abs(j) == J) edge = std::max(edge, a);
    }

    ComplexPhaseField W(grid, frame);
    const double kmin = grid.k.min;
    Eigen::VectorXcd mod(M);
    for (Index j = 0; j < M; ++j) {
        const Index js = j < nk ? j : j - M;
        mod[j] = std::polar(delta / (std::numbers::pi * e), -2.0 * kmin * double(js) * delta / e);
    }
    for (Index i = 0; i < nx; ++i) {
        Eigen::VectorXcd row = C.row(i).transpose().cwiseProduct(mod);
        const Eigen::VectorXcd X = fft::forward(row);
        W.values.row(i) = X.head(nk).transpose();
    }

    std::ostringstream warn;
    const double fb = f.boundary_level(), gb = g.boundary_level();
    if (fb > kDecayTolerance || gb > kDecayTolerance)
        warn << "aliasing: input not decayed at the x-boundaries (level " << std::max(fb, gb) << ")";
    if (peak > 0 && edge > kDecayTolerance * peak && J < Index(std::floor(D / delta))) {
        if (warn.tellp() > 0) warn << "; ";
        warn << "aliasing: lag window truncated, k-spacing too coarse (edge level " << edge / peak << ")";
    }
    W.warning = warn.str();
    return W;
}

RealField wigner_transform(const ComplexField& psi, const PhaseGrid& grid, Frame frame) {
    return real_part(cross_wigner(psi, psi, grid, frame));
}

Eigen::MatrixXcd cross_wigner_at(const ComplexField& f, const ComplexField& g, double eps,
                                 const Eigen::VectorXd& xs, const Eigen::VectorXd& ks) {
    if (!(f.axis == g.axis)) throw ConfigurationError("cross_wigner_at: f and g on different axes");
    const Axis& ax = f.axis;
    const Index n = ax.n;
    const double h = ax.spacing(), L = ax.length();
    const Eigen::VectorXcd F = fft::forward(f.values), G = fft::forward(g.values);
    const bool same = &f == &g;

    Eigen::MatrixXcd out(xs.size(), ks.size());
    Eigen::VectorXcd prod(4 * n + 1);
    Eigen::VectorXd sig(4 * n + 1);
    for (Index a = 0; a < xs.size(); ++a) {
        const Index i0 = std::clamp<Index>(Index(std::lround((xs[a] - ax.min) / h)), 0, n - 1);
        const double d = xs[a] - ax.node(i0);
        const Eigen::VectorXcd fa = fft::inverse((F.array() * fft::shift_symbol(n, L, d).array()).matrix());
        const Eigen::VectorXcd fb =
            fft::inverse((F.array() * fft::shift_symbol(n, L, d + 0.5 * h).array()).matrix());
        const Eigen::VectorXcd ga = same ? fa
            : Eigen::VectorXcd(fft::inverse((G.array() * fft::shift_symbol(n, L, d).array()).matrix()));
        const Eigen::VectorXcd gb = same ? fb
            : Eigen::VectorXcd(fft::inverse((G.array() * fft::shift_symbol(n, L, d + 0.5 * h).array()).matrix()));
        Index cnt = 0;
        for (Index j = -2 * n; j <= 2 * n; ++j) {
            Index ip, im;
            const Eigen::VectorXcd *P, *Q;
            if (j % 2 == 0) {
                const Index m = j / 2;
                ip = i0 + m; im = i0 - m; P = &fa; Q = &ga;
            } else {
                const Index m = (j - 1) / 2;  // j = 2m + 1
                ip = i0 + m; im = i0 - m - 1; P = &fb; Q = &gb;
            }
            if (ip < 0 || ip >= n || im < 0 || im >= n) continue;
            prod[cnt] = (*P)[ip] * std::conj((*Q)[im]);
            sig[cnt] = 0.5 * h * double(j);
            ++cnt;
        }
        for (Index b = 0; b < ks.size(); ++b) {
            cdouble acc = 0.0;
            for (Index c = 0; c < cnt; ++c) acc += prod[c] * std::polar(1.0, -2.0 * ks[b] * sig[c] / eps);
            out(a, b) = acc * (0.5 * h / (std::numbers::pi * eps));
        }
    }
    return out;
}

template <typename Scalar>
PhaseField<Scalar> dilate(const PhaseField<Scalar>& W, DilationDirection dir, const PhaseGrid& target) {
    const double eps = W.grid.eps;
    const bool to_scaled = dir == DilationDirection::to_scaled;
    if (to_scaled && W.scaled()) throw ConfigurationError("dilate: field is already scaled");
    if (!to_scaled && !W.scaled()) throw ConfigurationError("dilate: field is not scaled");
    const double c = to_scaled ? std::sqrt(eps) : 1.0 / std::sqrt(eps);
    const double amp = to_scaled ? eps : 1.0 / eps;

    // source mass whose image falls outside the target box
    const auto xs = W.grid.x.nodes(), ks = W.grid.k.nodes();
    double total = 0.0, lost = 0.0;
    for (Index j = 0; j < W.grid.k.n; ++j) {
        const double kt = ks[j] / c;
        const bool kin = kt >= target.k.min && kt <= target.k.max;
        for (Index i = 0; i < W.grid.x.n; ++i) {
            const double m = std::norm(W.values(i, j));
            total += m;
            const double xt = xs[i] / c;
            if (!(kin && xt >= target.x.min && xt <= target.x.max)) lost += m;
        }
    }
    if (total > 0 && lost > 1e-16 * total)
        throw CoverageError("dilate: target grid clips the source support (lost L2 fraction " +
                            std::to_string(std::sqrt(lost / total)) + ")");

    // target points mapped into the source frame
    Eigen::VectorXd px = target.x.nodes() * c, pk = target.k.nodes() * c;
    Eigen::MatrixXd Mx = fft::interpolation_matrix(W.grid.x.n, W.grid.x.min, W.grid.x.length(), px);
    Eigen::MatrixXd Mk = fft::interpolation_matrix(W.grid.k.n, W.grid.k.min, W.grid.k.length(), pk);
    for (Index p = 0; p < px.size(); ++p)
        if (px[p] < W.grid.x.min || px[p] >= W.grid.x.max) Mx.row(p).setZero();
    for (Index p = 0; p < pk.size(); ++p)
        if (pk[p] < W.grid.k.min || pk[p] >= W.grid.k.max) Mk.row(p).setZero();

    PhaseGrid g = target;
    g.eps = eps;
    PhaseField<Scalar> out(g, to_scaled ? Frame::scaled : Frame::physical);
    out.values = (Mx.cast<Scalar>() * W.values * Mk.transpose().cast<Scalar>()) * Scalar(amp);
    return out;
}

template RealField dilate(const RealField&, DilationDirection, const PhaseGrid&);
template ComplexPhaseField dilate(const ComplexPhaseField&, DilationDirection, const PhaseGrid&);

template <typename Scalar>
double weighted_norm(const PhaseField<Scalar>& W, NormKind kind) {
    if (kind == NormKind::plain_l2) return W.l2_norm();
    if (!W.scaled()) throw ConfigurationError("weighted_norm: gaussian-r-eps needs a scaled field");
    const double eps = W.grid.eps;
    const double h = std::max(W.grid.x.spacing(), W.grid.k.spacing());
    if (h > eps / 3.0)
        throw ResolutionError("weighted_norm: grid spacing " + std::to_string(h) +
                              " does not resolve the weight width eps = " + std::to_string(eps));
    const auto xs = W.grid.x.nodes(), ks = W.grid.k.nodes();
    double acc = 0.0;
    for (Index j = 0; j < W.grid.k.n; ++j)
        for (Index i = 0; i < W.grid.x.n; ++i)
            acc += std::norm(W.values(i, j)) * std::exp(-(xs[i] * xs[i] + ks[j] * ks[j]) / (eps * eps));
    return std::sqrt(acc * W.cell_area());
}

template double weighted_norm(const RealField&, NormKind);
template double weighted_norm(const ComplexPhaseField&, NormKind);

}  // namespace wigner
