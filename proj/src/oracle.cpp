#include "wigner/oracle.hpp"

#include "wigner/errors.hpp"
#include "wigner/fft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wigner {

namespace {

struct SplitStepper {
    Eigen::VectorXd V;
    Eigen::VectorXd k2;
    double eps;

    // one Strang step V/2 - T - V/2 of length dt
    void strang(Eigen::VectorXcd& psi, double dt) const {
        const cdouble I(0.0, 1.0);
        psi.array() *= (-I * (0.5 * dt / eps) * V.array()).exp();
        Eigen::VectorXcd F = fft::forward(psi);
        F.array() *= (-I * (0.5 * eps * dt) * k2.array()).exp();
        psi = fft::inverse(F);
        psi.array() *= (-I * (0.5 * dt / eps) * V.array()).exp();
    }

    void step(Eigen::VectorXcd& psi, double dt, int order) const {
        if (order == 2) return strang(psi, dt);
        const double w1 = 1.0 / (2.0 - std::cbrt(2.0)), w0 = 1.0 - 2.0 * w1;
        strang(psi, w1 * dt);
        strang(psi, w0 * dt);
        strang(psi, w1 * dt);
    }
};

}  // namespace

std::vector<ComplexField> split_step_evolve(const ComplexField& psi0, const Potential& V, double eps,
                                            const std::vector<double>& times, EvolutionConfig cfg) {
    if (!(eps > 0.0)) throw DomainError("split_step_evolve: eps must be positive");
    if (cfg.composition_order != 2 && cfg.composition_order != 4)
        throw ConfigurationError("split_step_evolve: composition order must be 2 or 4");
    const double dt = cfg.dt > 0.0 ? cfg.dt : eps / 20.0;
    const Axis& ax = psi0.axis;
    SplitStepper S{V.evaluate(ax.nodes()), fft::wavenumbers(ax.n, ax.length()).array().square().matrix(), eps};
    const double vmax = S.V.cwiseAbs().maxCoeff();
    if (dt * vmax / eps > std::numbers::pi)
        throw ConfigurationError("split_step_evolve: dt max|V| / eps = " + std::to_string(dt * vmax / eps) +
                                 " exceeds pi; reduce dt below " + std::to_string(std::numbers::pi * eps / vmax));
    if (psi0.boundary_level() > 1e-8)
        throw CoverageError("split_step_evolve: initial state not decayed at the boundary");

    std::vector<std::size_t> order(times.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return times[a] < times[b]; });
    std::vector<ComplexField> out(times.size());
    Eigen::VectorXcd psi = psi0.values;
    double now = 0.0;
    for (std::size_t idx : order) {
        const double T = times[idx];
        if (T < 0.0) throw DomainError("split_step_evolve: negative time");
        const double span = T - now;
        if (span > 0.0) {
            const long n = std::max(1L, long(std::ceil(span / dt - 1e-9)));
            const double h = span / n;
            for (long s = 0; s < n; ++s) S.step(psi, h, cfg.composition_order);
            now = T;
        }
        out[idx] = ComplexField{ax, psi, eps};
    }
    return out;
}

ComplexField split_step_evolve(const ComplexField& psi0, const Potential& V, double eps, double t,
                               EvolutionConfig cfg) {
    return split_step_evolve(psi0, V, eps, std::vector<double>{t}, cfg).front();
}

EigenProjection project(const ComplexField& psi0, const EigenData& eig, double tail) {
    EigenProjection p;
    const double h = psi0.axis.spacing();
    p.norm_squared = psi0.norm_squared();
    p.coefficients.resize(Index(eig.size()));
    for (std::size_t n = 0; n < eig.size(); ++n) {
        if (!(eig[n].u.axis == psi0.axis)) throw ComparabilityError("project: eigendata lives on a different axis");
        p.coefficients[Index(n)] = h * eig[n].u.values.dot(psi0.values);  // conj(u) . psi
    }
    p.tail_mass = std::max(0.0, 1.0 - p.coefficients.squaredNorm() / p.norm_squared);
    if (p.tail_mass > tail)
        throw TruncationError("eigenseries: tail mass " + std::to_string(p.tail_mass) + " with " +
                              std::to_string(eig.size()) + " eigenfunctions exceeds " + std::to_string(tail));
    return p;
}

ComplexField eigenseries_evolve(const EigenProjection& proj, const EigenData& eig, double t) {
    const cdouble I(0.0, 1.0);
    ComplexField out{eig[0].u.axis, Eigen::VectorXcd::Zero(eig[0].u.axis.n), eig.eps};
    for (std::size_t n = 0; n < eig.size(); ++n)
        out.values += proj.coefficients[Index(n)] * std::exp(-I * eig[n].energy * t / eig.eps) * eig[n].u.values;
    return out;
}

ComplexField eigenseries_evolve(const ComplexField& psi0, const EigenData& eig, double eps, double t) {
    if (std::abs(eps - eig.eps) > 1e-14 * eps) throw ComparabilityError("eigenseries_evolve: eps mismatch");
    return eigenseries_evolve(project(psi0, eig), eig, t);
}

Eigen::MatrixXcd wigner_coefficients(const EigenProjection& proj, const EigenData& eig, double t) {
    const cdouble I(0.0, 1.0);
    const Index N = proj.coefficients.size();
    Eigen::MatrixXcd A(N, N);
    for (Index n = 0; n < N; ++n)
        for (Index m = 0; m < N; ++m)
            A(n, m) = proj.coefficients[n] * std::conj(proj.coefficients[m]) *
                      std::exp(-I * (eig[n].energy - eig[m].energy) * t / eig.eps);
    return A;
}

EigenData eigendata_for(const ComplexField& psi0, const Potential& V, double eps, int start, double tail) {
    int n = std::max(start, 4);
    for (;;) {
        EigenData eig = solve_spectrum(V, eps, n - 1, psi0.axis);
        try {
            project(psi0, eig, tail);
            return eig;
        } catch (const TruncationError&) {
            if (2 * n > psi0.axis.n / 2) throw;
            n *= 2;
        }
    }
}

RealField reference_wigner(const ComplexField& psi0, const Potential& V, double eps, double t, const PhaseGrid& grid,
                           EvolutionConfig cfg) {
    ComplexField psi;
    if (cfg.method == EvolutionMethod::split_step) {
        psi = split_step_evolve(psi0, V, eps, t, cfg);
    } else {
        const EigenData eig = cfg.eigen_count > 0 ? solve_spectrum(V, eps, cfg.eigen_count - 1, psi0.axis)
                                                  : eigendata_for(psi0, V, eps);
        psi = eigenseries_evolve(psi0, eig, eps, t);
    }
    return wigner_transform(psi, grid, Frame::physical);
}

cdouble CoefficientExpansion::total(double eps, int order) const {
    if (order > int(deltas.size())) throw DependencyError("CoefficientExpansion: order exceeds the computed terms");
    cdouble s = harmonic;
    for (int j = 1; j <= order; ++j) s += std::pow(eps, 0.5 * j) * deltas[j - 1];
    return s;
}

CoefficientExpansion coefficient_expansion(const RealField& W0, const HarmonicCorrection& cn,
                                           const HarmonicCorrection& cm, double t, int order) {
    if (!W0.scaled()) throw ConfigurationError("coefficient_expansion: initial field must be scaled");
    if (order < 0) throw DomainError("coefficient_expansion: negative order");
    if (cn.order < order || cm.order < order)
        throw DependencyError("coefficient_expansion: eigen-corrections available only to order " +
                              std::to_string(std::min(cn.order, cm.order)));
    const cdouble I(0.0, 1.0);
    const double two_pi = 2.0 * std::numbers::pi;
    const cdouble base = std::exp(-I * 0.5 * (cn.a[0] - cm.a[0]) * t);

    // P_l = 2 pi (W~_0, Z~^{(l)}_nm)
    std::vector<cdouble> P(order + 1);
    P[0] = two_pi * inner(to_complex(W0), harmonic_moyal(cn.n, cm.n, W0.grid, Frame::scaled));
    for (int l = 1; l <= order; ++l) P[l] = two_pi * inner(to_complex(W0), moyal_corrector(l, cn, cm, W0.grid));

    // s_r: lambda-series of exp(-(i t / 2) sum_l lambda^l (a_n^{(l)} - a_m^{(l)}))
    std::vector<cdouble> g(order + 1, 0.0), s(order + 1, 0.0);
    for (int l = 1; l <= order; ++l) g[l] = -I * 0.5 * t * (cn.a[l] - cm.a[l]);
    s[0] = 1.0;
    for (int r = 1; r <= order; ++r) {
        cdouble acc = 0.0;
        for (int k = 1; k <= r; ++k) acc += double(k) * g[k] * s[r - k];
        s[r] = acc / double(r);
    }

    CoefficientExpansion out;
    out.n = cn.n;
    out.m = cm.n;
    out.t = t;
    out.harmonic = base * P[0];
    for (int j = 1; j <= order; ++j) {
        cdouble d = 0.0;
        for (int r = 0; r <= j; ++r) d += s[r] * P[j - r];
        out.deltas.push_back(base * d);
    }
    return out;
}

}  // namespace wigner
