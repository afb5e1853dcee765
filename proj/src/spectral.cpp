#include "wigner/spectral.hpp"

#include "wigner/errors.hpp"
#include "wigner/fft.hpp"
#include "wigner/operators.hpp"
#include "wigner/phase_space.hpp"
#include "wigner/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace wigner {

namespace {

constexpr double kGapTolerance = 1e-8;

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

template <typename Scalar>
typename PhaseField<Scalar>::Matrix narrow(const Eigen::MatrixXcd& m) {
    if constexpr (std::is_same_v<Scalar, double>) return m.real();
    else return m;
}

}  // namespace

EigenData solve_spectrum(const Potential& V, double eps, int n_max, const Axis& axis) {
    if (n_max < 0) throw DomainError("solve_spectrum: n_max must be >= 0");
    if (n_max >= axis.n) throw ResolutionError("solve_spectrum: n_max exceeds the number of grid points");
    const Index N = axis.n;
    const double h = axis.spacing();
    const double c = 0.5 * eps * eps;
    const Eigen::VectorXd x = axis.nodes();

    Eigen::MatrixXd H(N, N);
    for (Index i = 0; i < N; ++i) {
        H(i, i) = c * std::numbers::pi * std::numbers::pi / (3.0 * h * h) + V(x[i]);
        for (Index j = 0; j < i; ++j) {
            const double d = double(i - j);
            H(i, j) = H(j, i) = c * 2.0 * ((i - j) % 2 ? -1.0 : 1.0) / (h * h * d * d);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    if (es.info() != Eigen::Success) throw NumericError("solve_spectrum: eigensolver did not converge");

    const Eigen::VectorXd& E = es.eigenvalues();
    double vmin = V(x[0]);
    for (Index i = 1; i < N; ++i) vmin = std::min(vmin, V(x[i]));
    const double pmax = std::sqrt(2.0 * std::max(E[n_max] - vmin, 0.0));
    if (pmax > 0 && h > 2.0 * std::numbers::pi * eps / pmax / 10.0)
        throw ResolutionError("solve_spectrum: fewer than 10 points per de Broglie wavelength at n = " +
                              std::to_string(n_max));

    const Eigen::VectorXcd dsym = fft::derivative_symbol(N, axis.length(), 2);
    const Eigen::VectorXd Vx = V.evaluate(x.array()).matrix();

    EigenData out;
    out.eps = eps;
    for (int n = 0; n <= n_max; ++n) {
        if (n > 0 && E[n] - E[n - 1] < kGapTolerance)
            throw NumericError("solve_spectrum: near-degenerate levels at n = " + std::to_string(n));
        Eigen::VectorXd u = es.eigenvectors().col(n) / std::sqrt(h);
        const double peak = u.cwiseAbs().maxCoeff();
        for (Index i = N - 1; i >= 0; --i)
            if (std::abs(u[i]) > 1e-3 * peak) {
                if (u[i] < 0) u = -u;
                break;
            }
        EigenPair p;
        p.n = n;
        p.energy = E[n];
        p.u = ComplexField{axis, u.cast<cdouble>(), eps};
        if (p.u.boundary_level() > 1e-8)
            throw CoverageError("solve_spectrum: eigenfunction " + std::to_string(n) +
                                " not decayed at the grid boundary");
        const Eigen::VectorXcd d2 = fft::apply_symbol(p.u.values, dsym);
        const Eigen::VectorXcd r = -c * d2 + (Vx.array() - E[n]).matrix().cast<cdouble>().cwiseProduct(p.u.values);
        p.residual = std::sqrt(h * r.squaredNorm());
        if (p.residual > 1e-6 * std::abs(E[n]))
            throw NumericError("solve_spectrum: residual " + std::to_string(p.residual) + " at n = " +
                               std::to_string(n) + " exceeds 1e-6 |E_n|");
        out.pairs.push_back(std::move(p));
    }
    return out;
}

Eigen::MatrixXd hermite_position_matrix(int size) {
    Eigen::MatrixXd X = Eigen::MatrixXd::Zero(size, size);
    for (int k = 1; k < size; ++k) X(k - 1, k) = X(k, k - 1) = std::sqrt(0.5 * k);
    return X;
}

Eigen::MatrixXd hermite_power_matrix(int p, int size) {
    const Eigen::MatrixXd X = hermite_position_matrix(size + p);
    Eigen::MatrixXd P = Eigen::MatrixXd::Identity(size + p, size + p);
    for (int i = 0; i < p; ++i) P = P * X;
    return P.topLeftCorner(size, size);
}

HarmonicCorrection harmonic_corrections(const Potential& V, int n, int order) {
    if (n < 0 || order < 0) throw DomainError("harmonic_corrections: negative index");
    V.check_single_well();
    if (std::abs(V.taylor_at_zero(2) - 1.0) > 1e-12)
        throw DomainError("harmonic_corrections: expects the normalization V''(0) = 1");
    std::vector<double> c(order + 1, 0.0);
    for (int l = 1; l <= order; ++l) c[l] = 2.0 * V.taylor_at_zero(l + 2) / factorial(l + 2);

    const int nb = n + 3 * order + 3;
    std::vector<Eigen::MatrixXd> P(order + 1);
    for (int l = 1; l <= order; ++l)
        P[l] = c[l] == 0.0 ? Eigen::MatrixXd::Zero(nb, nb) : Eigen::MatrixXd(c[l] * hermite_power_matrix(l + 2, nb));

    HarmonicCorrection hc;
    hc.n = n;
    hc.order = order;
    hc.a = Eigen::VectorXd::Zero(order + 1);
    hc.a[0] = 2.0 * n + 1.0;
    std::vector<Eigen::VectorXd> phi(order + 1, Eigen::VectorXd::Zero(nb));
    phi[0][n] = 1.0;
    for (int l = 1; l <= order; ++l) {
        double El = 0.0;
        for (int k = 1; k <= l; ++k) El += P[k].row(n).dot(phi[l - k]);
        hc.a[l] = El;
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nb);
        for (int k = 1; k <= l; ++k) rhs += hc.a[k] * phi[l - k] - P[k] * phi[l - k];
        for (int m = 0; m < nb; ++m) phi[l][m] = m == n ? 0.0 : rhs[m] / (2.0 * (m - n));
    }

    // renormalize: (1 + s(lambda))^{-1/2} as a power series
    Eigen::VectorXd s = Eigen::VectorXd::Zero(order + 1), g = Eigen::VectorXd::Zero(order + 1);
    for (int l = 1; l <= order; ++l)
        for (int j = 0; j <= l; ++j) s[l] += phi[j].dot(phi[l - j]);
    g[0] = 1.0;
    const double alpha = -0.5;
    for (int l = 1; l <= order; ++l) {
        double acc = 0.0;
        for (int k = 1; k <= l; ++k) acc += ((alpha + 1.0) * k - l) * s[k] * g[l - k];
        g[l] = acc / l;
    }
    hc.psi.assign(order + 1, Eigen::VectorXd::Zero(nb));
    for (int l = 0; l <= order; ++l)
        for (int j = 0; j <= l; ++j) hc.psi[l] += g[j] * phi[l - j];
    return hc;
}

double HarmonicCorrection::energy(double eps) const {
    double e = 0.0;
    for (int l = order; l >= 0; --l) e = e * std::sqrt(eps) + a[l];
    return e;
}

double HarmonicCorrection::wave_at(int l, double xi) const {
    const Eigen::VectorXd& c = psi.at(l);
    const Eigen::VectorXd h = specfun::hermite_fns(int(c.size()) - 1, xi, int(c.size()));
    return c.dot(h);
}

ComplexField HarmonicCorrection::sample(int l, const Axis& axis) const {
    return sample_wavefunction(axis, 1.0, [&](double xi) { return cdouble(wave_at(l, xi)); });
}

MoyalFunction moyal_eigenfunction(int n, int m, const EigenData& eig, const PhaseGrid& grid) {
    if (std::size_t(std::max(n, m)) >= eig.size())
        throw DependencyError("moyal_eigenfunction: eigenpair index beyond the computed spectrum");
    MoyalFunction mf;
    mf.n = n;
    mf.m = m;
    mf.E_n = eig[n].energy;
    mf.E_m = eig[m].energy;
    mf.eps = eig.eps;
    PhaseGrid g = grid;
    g.eps = eig.eps;
    mf.field = cross_wigner(eig[n].u, eig[m].u, g, Frame::physical);
    return mf;
}

cdouble harmonic_moyal_at(int n, int m, double xi, double eta) {
    if (n < m) return std::conj(harmonic_moyal_at(m, n, xi, eta));
    const double r2 = xi * xi + eta * eta;
    const double norm = std::exp(0.5 * (std::lgamma(m + 1.0) - std::lgamma(n + 1.0)));
    const cdouble z = std::numbers::sqrt2 * cdouble(xi, -eta);
    const double sign = m % 2 ? -1.0 : 1.0;
    return sign / std::numbers::pi * norm * std::pow(z, n - m) *
           specfun::laguerre_fn(m, double(n - m), 2.0 * r2) * std::exp(-r2);
}

ComplexPhaseField harmonic_moyal(int n, int m, const PhaseGrid& grid, Frame frame) {
    if (frame == Frame::scaled)
        return ComplexPhaseField::sample(grid, frame, [&](double xi, double eta) { return harmonic_moyal_at(n, m, xi, eta); });
    const double s = std::sqrt(grid.eps);
    return ComplexPhaseField::sample(grid, frame, [&](double x, double k) {
        return harmonic_moyal_at(n, m, x / s, k / s) / grid.eps;
    });
}

template <typename Scalar>
PhaseField<Scalar> apply_liouville(const PhaseField<Scalar>& W, const Potential& V, double eps) {
    const auto& g = W.grid;
    const Eigen::VectorXd x = g.x.nodes(), k = g.k.nodes();
    Eigen::MatrixXcd F = W.values.template cast<cdouble>();
    Eigen::MatrixXcd dx = F;
    fft::apply_symbol_along(dx, 0, fft::derivative_symbol(g.x.n, g.x.length(), 1));

    fft::forward_along(F, 1);
    const Eigen::VectorXd y = fft::wavenumbers(g.k.n, g.k.length());
    for (Index p = 0; p < g.k.n; ++p) {
        if (g.k.n % 2 == 0 && p == g.k.n / 2) {
            F.col(p).setZero();
            continue;
        }
        const double a = 0.5 * eps * y[p];
        for (Index i = 0; i < g.x.n; ++i)
            F(i, p) *= cdouble(0.0, (V(x[i] + a) - V(x[i] - a)) / eps);
    }
    fft::inverse_along(F, 1);

    PhaseField<Scalar> out(g, W.frame);
    const Eigen::VectorXcd kc = k.cast<cdouble>();
    out.values = narrow<Scalar>(dx * kc.asDiagonal() - F);
    return out;
}

template <typename Scalar>
PhaseField<Scalar> apply_cosine_bracket(const PhaseField<Scalar>& W, const Potential& V, double eps,
                                        std::optional<int> truncation) {
    int jmax;
    if (V.is_polynomial()) {
        jmax = V.degree() / 2;
        if (truncation) jmax = std::min(jmax, *truncation);
    } else {
        if (!truncation)
            throw CapabilityError("apply_cosine_bracket: non-polynomial potential needs a truncation order");
        jmax = *truncation;
    }
    const auto& g = W.grid;
    const Eigen::VectorXd x = g.x.nodes(), k = g.k.nodes();
    PhaseField<Scalar> out(g, W.frame);
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> k2 = (0.5 * k.array().square()).matrix().template cast<Scalar>();
    out.values = W.values * k2.asDiagonal() -
                 (eps * eps / 8.0) * spectral_derivative(W, 0, 2);
    for (int j = 0; j <= jmax; ++j) {
        const double coef = std::pow(-0.25 * eps * eps, j) / factorial(2 * j);
        Eigen::Matrix<Scalar, Eigen::Dynamic, 1> vj(g.x.n);
        for (Index i = 0; i < g.x.n; ++i) vj[i] = coef * V.derivative(2 * j, x[i]);
        if (j == 0) out.values += vj.asDiagonal() * W.values;
        else out.values += vj.asDiagonal() * spectral_derivative(W, 1, 2 * j);
    }
    return out;
}

template RealField apply_liouville(const RealField&, const Potential&, double);
template ComplexPhaseField apply_liouville(const ComplexPhaseField&, const Potential&, double);
template RealField apply_cosine_bracket(const RealField&, const Potential&, double, std::optional<int>);
template ComplexPhaseField apply_cosine_bracket(const ComplexPhaseField&, const Potential&, double,
                                                std::optional<int>);

ComplexPhaseField moyal_corrector(int l, const HarmonicCorrection& cn, const HarmonicCorrection& cm,
                                  const PhaseGrid& grid) {
    if (l < 0) throw DomainError("moyal_corrector: negative level");
    if (cn.order < l || cm.order < l)
        throw DependencyError("moyal_corrector: corrections to order " + std::to_string(l) + " are missing");
    ComplexPhaseField Z(grid, Frame::scaled);
    for (int mu = 0; mu <= l; ++mu) {
        const auto f = cn.sample(mu, grid.x);
        const auto g = cm.sample(l - mu, grid.x);
        Z.values += cross_wigner(f, g, grid, Frame::scaled).values;
    }
    return Z;
}

double moyal_hierarchy_residual(int l, const HarmonicCorrection& cn, const HarmonicCorrection& cm,
                                const Potential& V, const PhaseGrid& grid) {
    std::vector<ComplexPhaseField> Z;
    for (int j = 0; j <= l; ++j) Z.push_back(moyal_corrector(j, cn, cm, grid));
    const cdouble I(0.0, 1.0);
    ComplexPhaseField lhs = apply_L_h(Z[l]);
    lhs.values -= 0.5 * I * (cn.a[0] - cm.a[0]) * Z[l].values;
    ComplexPhaseField rhs(grid, Frame::scaled);
    for (int nu = 1; nu <= l; ++nu) {
        rhs.values -= apply_B(nu, Z[l - nu], V).values;
        rhs.values += 0.5 * I * (cn.a[nu] - cm.a[nu]) * Z[l - nu].values;
    }
    const double diff = l2_distance(lhs, rhs);
    const double scale = rhs.l2_norm();
    return scale > 0 ? diff / scale : diff;
}

}  // namespace wigner
