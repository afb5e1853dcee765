#include "wigner/classical_expansion.hpp"

#include "wigner/errors.hpp"
#include "wigner/operators.hpp"
#include "wigner/parallel.hpp"
#include "wigner/rotation.hpp"
#include "wigner/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace wigner {

namespace {

// Yoshida triple-jump weights
const double kW1 = 1.0 / (2.0 - std::cbrt(2.0));
const double kW0 = -std::cbrt(2.0) / (2.0 - std::cbrt(2.0));

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

FlowMap::FlowMap(Potential V, double h) : V_(std::move(V)), h_(h) {
    if (!(h_ > 0.0)) throw ConfigurationError("FlowMap: step must be positive");
}

void FlowMap::advance(double& q, double& p, double dt) const {
    for (double w : {kW1, kW0, kW1}) {
        const double d = w * dt;
        p -= 0.5 * d * V_.derivative(1, q);
        q += d * p;
        p -= 0.5 * d * V_.derivative(1, q);
    }
}

std::pair<double, double> FlowMap::forward(double q, double p, double t) const {
    if (t == 0.0) return {q, p};
    const double steps = std::ceil(std::abs(t) / h_ - 1e-9);
    if (steps > 1e8) throw DomainError("FlowMap: too many steps for t = " + std::to_string(t));
    const long n = std::max(1L, long(steps));
    const double dt = t / n;
    for (long i = 0; i < n; ++i) advance(q, p, dt);
    return {q, p};
}

std::vector<TrajectorySample> FlowMap::trajectory(double q, double p, const std::vector<double>& times) const {
    std::vector<std::size_t> order(times.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<TrajectorySample> out(times.size());
    // forward and backward branches both start from t = 0
    for (int sign : {1, -1}) {
        std::vector<std::size_t> idx;
        for (std::size_t i : order)
            if (sign > 0 ? times[i] >= 0.0 : times[i] < 0.0) idx.push_back(i);
        std::sort(idx.begin(), idx.end(),
                  [&](std::size_t a, std::size_t b) { return std::abs(times[a]) < std::abs(times[b]); });
        double qq = q, pp = p, tt = 0.0;
        for (std::size_t i : idx) {
            std::tie(qq, pp) = forward(qq, pp, times[i] - tt);
            tt = times[i];
            out[i] = {tt, qq, pp, energy(qq, pp)};
        }
    }
    return out;
}

std::pair<double, double> integrate_flow(const Potential& V, double q, double p, double t, double h) {
    const FlowMap flow(V, h);
    const double H0 = flow.energy(q, p);
    const auto end = flow.forward(q, p, t);
    const double drift = std::abs(flow.energy(end.first, end.second) - H0);
    const double tol = 1e-8 * (1.0 + std::abs(H0));
    if (drift > tol) {
        // fourth order: shrink h by (tol/drift)^{1/4} with some margin
        const double hs = 0.5 * h * std::pow(tol / drift, 0.25);
        throw NumericError("integrate_flow: energy drift " + std::to_string(drift) + " exceeds " +
                           std::to_string(tol) + "; try h <= " + std::to_string(hs));
    }
    return end;
}

RealField liouville_term(const RealField& W0, const FlowMap& flow, double t) {
    const SpectralInterpolator<double> I(W0);
    const PhaseGrid& g = W0.grid;
    RealField out(g, W0.frame);
    parallel_for(std::size_t(g.k.n), [&](std::size_t j) {
        const double k = g.k.node(Index(j));
        for (Index i = 0; i < g.x.n; ++i) {
            const auto [q, p] = flow.inverse(g.x.node(i), k, t);
            out.values(i, Index(j)) = I(q, p);
        }
    });
    return out;
}

RealField liouville_term(const std::function<double(double, double)>& W0, const PhaseGrid& grid,
                         const FlowMap& flow, double t) {
    RealField out(grid, Frame::physical);
    parallel_for(std::size_t(grid.k.n), [&](std::size_t j) {
        const double k = grid.k.node(Index(j));
        for (Index i = 0; i < grid.x.n; ++i) {
            const auto [q, p] = flow.inverse(grid.x.node(i), k, t);
            out.values(i, Index(j)) = W0(q, p);
        }
    });
    return out;
}

ThetaOperator theta_operator(int j) {
    if (j < 1) throw DomainError("theta_operator: j must be >= 1");
    return {j, std::pow(-0.25, j) / factorial(2 * j + 1)};
}

bool ThetaOperator::vanishes(const Potential& V) const {
    if (!V.is_polynomial()) return false;
    return V.degree() < 2 * j + 1;
}

template <typename Scalar>
PhaseField<Scalar> apply_theta(int j, const PhaseField<Scalar>& W, const Potential& V) {
    const ThetaOperator th = theta_operator(j);
    PhaseField<Scalar> out(W.grid, W.frame);
    if (th.vanishes(V)) return out;
    check_bandwidth(W, 1, "apply_theta");
    const Eigen::VectorXd x = W.grid.x.nodes();
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> w =
        (th.coefficient * x.unaryExpr([&](double s) { return V.derivative(2 * j + 1, s); })).template cast<Scalar>();
    out.values = w.asDiagonal() * spectral_derivative(W, 1, 2 * j + 1);
    return out;
}

template <typename Scalar>
PhaseField<Scalar> apply_classical_liouville(const PhaseField<Scalar>& W, const Potential& V) {
    const Eigen::VectorXd x = W.grid.x.nodes();
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> k = W.grid.k.nodes().template cast<Scalar>();
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> dv =
        x.unaryExpr([&](double s) { return V.derivative(1, s); }).template cast<Scalar>();
    PhaseField<Scalar> out(W.grid, W.frame);
    out.values = spectral_derivative(W, 0, 1) * k.asDiagonal() - dv.asDiagonal() * spectral_derivative(W, 1, 1);
    return out;
}

template PhaseField<double> apply_theta(int, const PhaseField<double>&, const Potential&);
template PhaseField<cdouble> apply_theta(int, const PhaseField<cdouble>&, const Potential&);
template PhaseField<double> apply_classical_liouville(const PhaseField<double>&, const Potential&);
template PhaseField<cdouble> apply_classical_liouville(const PhaseField<cdouble>&, const Potential&);

ClassicalSeries::ClassicalSeries(std::function<double(double, double)> W0, const PhaseGrid& grid, FlowMap flow,
                                 int order, std::vector<double> times, TimeRule rule)
    : W0_(std::move(W0)), grid_(grid), flow_(std::move(flow)), order_(order), times_(std::move(times)), rule_(rule) {
    grid_.validate();
    if (order_ < 0) throw DomainError("ClassicalSeries: negative order");
    if (rule_.points < 1 || rule_.panels_per_unit < 1) throw ConfigurationError("ClassicalSeries: bad time rule");
    std::sort(times_.begin(), times_.end());
    times_.erase(std::unique(times_.begin(), times_.end()), times_.end());
    if (!times_.empty() && times_.front() < 0.0) throw DomainError("ClassicalSeries: negative output time");

    const int P = rule_.points;
    const auto gl = specfun::gauss_legendre(P, 0.0, 1.0);
    gl_w_ = gl.weights;
    Eigen::MatrixXd Vd(P, P);
    for (int i = 0; i < P; ++i)
        for (int j = 0; j < P; ++j) Vd(i, j) = std::pow(gl.nodes[i], j);
    const Eigen::MatrixXd coef = Vd.inverse();
    colloc_.resize(P, P);
    for (int i = 0; i < P; ++i)
        for (int j = 0; j < P; ++j) {
            double acc = 0.0;
            for (int r = 0; r < P; ++r) acc += coef(r, j) * std::pow(gl.nodes[i], r + 1) / (r + 1);
            colloc_(i, j) = acc;
        }

    double prev = 0.0;
    for (double t : times_) {
        if (t > prev) {
            const int m = std::max(1, int(std::ceil((t - prev) * rule_.panels_per_unit - 1e-9)));
            const double w = (t - prev) / m;
            for (int i = 0; i < m; ++i) {
                panel_start_.push_back(prev + i * w);
                panel_width_.push_back(w);
            }
            prev = t;
        }
        panel_of_time_.push_back(panel_start_.size());
    }
    for (std::size_t p = 0; p < panel_start_.size(); ++p)
        for (int i = 0; i < P; ++i) nodes_.push_back(panel_start_[p] + panel_width_[p] * gl.nodes[i]);
    levels_.resize(order_ + 1);

    // images of every grid point under the flow, at all node and output times
    const std::size_t nn = nodes_.size(), nt = times_.size();
    const Index nx = grid_.x.n, nk = grid_.k.n;
    const std::size_t npts = std::size_t(nx * nk);
    fwd_nodes_.assign(nn, std::vector<Eigen::Vector2d>(npts));
    bwd_nodes_.assign(nn, std::vector<Eigen::Vector2d>(npts));
    bwd_times_.assign(nt, std::vector<Eigen::Vector2d>(npts));
    std::vector<double> when;
    for (double s : nodes_) when.push_back(s);
    for (double s : nodes_) when.push_back(-s);
    for (double t : times_) when.push_back(-t);
    parallel_for(npts, [&](std::size_t c) {
        const Index i = Index(c) % nx, j = Index(c) / nx;
        const auto tr = flow_.trajectory(grid_.x.node(i), grid_.k.node(j), when);
        for (std::size_t a = 0; a < nn; ++a) {
            fwd_nodes_[a][c] = {tr[a].q, tr[a].p};
            bwd_nodes_[a][c] = {tr[nn + a].q, tr[nn + a].p};
        }
        for (std::size_t a = 0; a < nt; ++a) bwd_times_[a][c] = {tr[2 * nn + a].q, tr[2 * nn + a].p};
    });
}

bool ClassicalSeries::vanishes(int l) const {
    if (l == 0) return false;
    for (int j = 1; j <= l; ++j)
        if (!theta_operator(j).vanishes(flow_.potential()) && !vanishes(l - j)) return false;
    return true;
}

std::size_t ClassicalSeries::time_index(double t) const {
    for (std::size_t k = 0; k < times_.size(); ++k)
        if (std::abs(times_[k] - t) <= 1e-12 * (1.0 + std::abs(t))) return k;
    throw DomainError("ClassicalSeries: t = " + std::to_string(t) + " is not an output time");
}

RealField ClassicalSeries::pull(const RealField& Y, const std::vector<Eigen::Vector2d>& pts) const {
    const SpectralInterpolator<double> I(Y);
    RealField out(grid_, Frame::physical);
    const Index nx = grid_.x.n;
    for (std::size_t c = 0; c < pts.size(); ++c) out.values(Index(c) % nx, Index(c) / nx) = I(pts[c][0], pts[c][1]);
    return out;
}

void ClassicalSeries::compute(int l) {
    if (l < 0 || l > order_) throw DependencyError("ClassicalSeries: level " + std::to_string(l) + " beyond order");
    Level& L = levels_[l];
    if (L.computed) return;
    const Index nx = grid_.x.n;
    const Potential& V = flow_.potential();

    auto sample_W0 = [&](const std::vector<Eigen::Vector2d>& pts) {
        RealField out(grid_, Frame::physical);
        for (std::size_t c = 0; c < pts.size(); ++c)
            out.values(Index(c) % nx, Index(c) / nx) = W0_(pts[c][0], pts[c][1]);
        return out;
    };

    if (l == 0) {
        L.at_times.resize(times_.size());
        for (std::size_t a = 0; a < times_.size(); ++a) L.at_times[a] = sample_W0(bwd_times_[a]);
        L.computed = true;
        return;
    }
    if (vanishes(l)) {
        L.zero = L.computed = true;
        return;
    }
    std::vector<int> js;
    for (int j = 1; j <= l; ++j) {
        if (theta_operator(j).vanishes(V) || vanishes(l - j)) continue;
        if (l - j > 0) compute(l - j);
        js.push_back(j);
    }
    bool keep = false;
    for (int m = l + 1; m <= order_; ++m)
        if (!theta_operator(m - l).vanishes(V)) keep = true;

    auto lower_at_node = [&](int lev, std::size_t a) -> RealField {
        if (lev == 0) return sample_W0(bwd_nodes_[a]);
        return levels_[lev].at_nodes[a];
    };

    const int P = rule_.points;
    RealField Y(grid_, Frame::physical);  // Lagrangian integral up to the current panel start
    if (keep) L.at_nodes.assign(nodes_.size(), RealField());
    L.at_times.assign(times_.size(), RealField(grid_, Frame::physical));
    std::size_t next = 0;
    while (next < times_.size() && panel_of_time_[next] == 0) ++next;

    std::vector<RealField> F(P);
    for (std::size_t p = 0; p < panel_start_.size(); ++p) {
        parallel_for(std::size_t(P), [&](std::size_t i) {
            const std::size_t a = p * P + i;
            RealField D(grid_, Frame::physical);
            for (int j : js) D.values += apply_theta(j, lower_at_node(l - j, a), V).values;
            F[i] = pull(D, fwd_nodes_[a]);
        });
        if (keep) {
            parallel_for(std::size_t(P), [&](std::size_t i) {
                RealField Yi = Y;
                for (int j = 0; j < P; ++j) Yi.values += panel_width_[p] * colloc_(i, j) * F[j].values;
                L.at_nodes[p * P + i] = pull(Yi, bwd_nodes_[p * P + i]);
            });
        }
        for (int j = 0; j < P; ++j) Y.values += panel_width_[p] * gl_w_[j] * F[j].values;
        while (next < times_.size() && panel_of_time_[next] == p + 1) {
            L.at_times[next] = pull(Y, bwd_times_[next]);
            ++next;
        }
    }
    L.computed = true;
}

RealField ClassicalSeries::term(int l, double t) {
    const std::size_t a = time_index(t);
    compute(l);
    if (levels_[l].zero) return RealField(grid_, Frame::physical);
    return levels_[l].at_times[a];
}

RealField ClassicalSeries::sum(int N, double t) {
    if (N > order_) throw DependencyError("ClassicalSeries::sum: N exceeds the series order");
    RealField out = term(0, t);
    for (int l = 1; l <= N; ++l) {
        if (vanishes(l)) continue;
        out.values += std::pow(grid_.eps, 2 * l) * term(l, t).values;
    }
    return out;
}

RealField classical_corrector(int l, ClassicalSeries& series, double t) { return series.term(l, t); }

double multiscale_frequency(double mu, double q, double p) { return 1.0 + 0.375 * mu * (q * q + p * p); }

std::pair<double, double> multiscale_flow(double mu, double q, double p, double t, FlowDirection dir) {
    if (mu < 0.0 || mu > 0.5) throw DomainError("multiscale_flow: requires 0 <= mu <= 0.5");
    if (dir == FlowDirection::forward) {
        const double w = multiscale_frequency(mu, q, p);
        const double c = std::cos(w * t), s = std::sin(w * t);
        return {q * c + p * s, w * (p * c - q * s)};
    }
    // (x, k) -> (q, p): rho^2 - x^2 - (k/omega(rho))^2 is increasing in rho^2, root in [x^2, x^2 + k^2]
    const double x = q, k = p;
    auto f = [&](double r2) {
        const double w = 1.0 + 0.375 * mu * r2;
        return r2 - x * x - (k / w) * (k / w);
    };
    double lo = x * x, hi = x * x + k * k, rho2 = hi;
    for (int it = 0; it < 200 && hi - lo > 1e-16 * (1.0 + hi); ++it) {
        rho2 = 0.5 * (lo + hi);
        (f(rho2) > 0.0 ? hi : lo) = rho2;
    }
    rho2 = 0.5 * (lo + hi);
    double w;
    w = 1.0 + 0.375 * mu * rho2;
    const double c = std::cos(w * t), s = std::sin(w * t), kw = k / w;
    return {x * c - kw * s, x * s + kw * c};
}

}  // namespace wigner
