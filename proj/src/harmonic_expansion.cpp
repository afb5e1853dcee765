#include "wigner/harmonic_expansion.hpp"

#include "wigner/errors.hpp"
#include "wigner/parallel.hpp"
#include "wigner/specfun.hpp"
#include "wigner/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace wigner {

std::pair<double, double> harmonic_flow(double q, double p, double t, FlowDirection dir) {
    const double c = std::cos(t), s = std::sin(t);
    if (dir == FlowDirection::forward) return {q * c + p * s, p * c - q * s};
    return {q * c - p * s, p * c + q * s};
}

namespace {

bool level_vanishes(const Potential& V, int l) {
    if (l == 0) return false;
    for (int nu = 1; nu <= l; ++nu)
        if (V.taylor_at_zero(nu + 2) != 0.0 && !level_vanishes(V, l - nu)) return false;
    return true;
}

}  // namespace

HarmonicSeries::HarmonicSeries(RealField W0, Potential V, int order, std::vector<double> times, TimeRule rule)
    : W0_(std::move(W0)), V_(std::move(V)), order_(order), times_(std::move(times)), rule_(rule) {
    if (!W0_.scaled()) throw ConfigurationError("HarmonicSeries: initial field must be in scaled variables");
    if (!W0_.grid.square_and_centred())
        throw ConfigurationError("HarmonicSeries: scaled grid must be square and centred");
    if (order_ < 0) throw DomainError("HarmonicSeries: negative order");
    if (rule_.points < 1 || rule_.panels_per_unit < 1) throw ConfigurationError("HarmonicSeries: bad time rule");
    std::sort(times_.begin(), times_.end());
    times_.erase(std::unique(times_.begin(), times_.end()), times_.end());
    if (!times_.empty() && times_.front() < 0.0) throw DomainError("HarmonicSeries: negative output time");

    const auto gl = specfun::gauss_legendre(rule_.points, 0.0, 1.0);
    gl_x_ = gl.nodes;
    gl_w_ = gl.weights;
    const int P = rule_.points;
    // colloc_(i, j) = int_0^{x_i} l_j(u) du via the monomial basis
    Eigen::MatrixXd Vd(P, P);
    for (int i = 0; i < P; ++i)
        for (int j = 0; j < P; ++j) Vd(i, j) = std::pow(gl_x_[i], j);
    const Eigen::MatrixXd coef = Vd.inverse();  // column j: monomial coefficients of l_j
    colloc_.resize(P, P);
    for (int i = 0; i < P; ++i)
        for (int j = 0; j < P; ++j) {
            double acc = 0.0;
            for (int r = 0; r < P; ++r) acc += coef(r, j) * std::pow(gl_x_[i], r + 1) / (r + 1);
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
        panel_of_time_.push_back(panel_start_.size());  // number of panels up to t
    }
    for (std::size_t p = 0; p < panel_start_.size(); ++p)
        for (int i = 0; i < P; ++i) nodes_.push_back(panel_start_[p] + panel_width_[p] * gl_x_[i]);
    levels_.resize(order_ + 1);
}

bool HarmonicSeries::vanishes(int l) const { return level_vanishes(V_, l); }

std::size_t HarmonicSeries::time_index(double t) const {
    for (std::size_t k = 0; k < times_.size(); ++k)
        if (std::abs(times_[k] - t) <= 1e-12 * (1.0 + std::abs(t))) return k;
    throw DomainError("HarmonicSeries: t = " + std::to_string(t) + " is not an output time");
}

void HarmonicSeries::compute(int l) {
    if (l < 0 || l > order_) throw DependencyError("HarmonicSeries: level " + std::to_string(l) + " beyond order");
    Level& L = levels_[l];
    if (L.computed) return;
    const std::size_t nn = nodes_.size();

    if (l == 0) {
        L.at_times.resize(times_.size());
        for (std::size_t k = 0; k < times_.size(); ++k) L.at_times[k] = rotate(W0_, times_[k]);
        L.computed = true;
        return;
    }
    if (vanishes(l)) {
        L.zero = true;
        L.computed = true;
        return;
    }

    std::vector<int> nus;
    for (int nu = 1; nu <= l; ++nu) {
        if (V_.taylor_at_zero(nu + 2) == 0.0 || vanishes(l - nu)) continue;
        if (l - nu > 0) compute(l - nu);
        nus.push_back(nu);
    }
    // node values of this level are only kept if a higher level will read them
    bool keep = false;
    for (int m = l + 1; m <= order_; ++m)
        if (V_.taylor_at_zero(m - l + 2) != 0.0) keep = true;

    auto lower_at_node = [&](int lev, std::size_t j) -> RealField {
        if (lev == 0) return rotate(W0_, nodes_[j]);
        return levels_[lev].at_nodes[j];
    };

    const int P = rule_.points;
    RealField Y(W0_.grid, Frame::scaled);  // pulled-back integral up to the current panel start
    if (keep) L.at_nodes.assign(nn, RealField());
    L.at_times.assign(times_.size(), RealField(W0_.grid, Frame::scaled));
    std::size_t next_time = 0;
    while (next_time < times_.size() && panel_of_time_[next_time] == 0) ++next_time;

    std::vector<RealField> F(P);
    for (std::size_t p = 0; p < panel_start_.size(); ++p) {
        parallel_for(std::size_t(P), [&](std::size_t i) {
            const std::size_t j = p * P + i;
            RealField D(W0_.grid, Frame::scaled);
            for (int nu : nus) D.values -= apply_B(nu, lower_at_node(l - nu, j), V_).values;
            F[i] = rotate(D, -nodes_[j]);
        });
        if (keep) {
            parallel_for(std::size_t(P), [&](std::size_t i) {
                RealField Yi = Y;
                for (int j = 0; j < P; ++j) Yi.values += panel_width_[p] * colloc_(i, j) * F[j].values;
                L.at_nodes[p * P + i] = rotate(Yi, nodes_[p * P + i]);
            });
        }
        for (int j = 0; j < P; ++j) Y.values += panel_width_[p] * gl_w_[j] * F[j].values;
        while (next_time < times_.size() && panel_of_time_[next_time] == p + 1) {
            L.at_times[next_time] = rotate(Y, times_[next_time]);
            ++next_time;
        }
    }
    L.computed = true;
}

RealField HarmonicSeries::term(int l, double t) {
    const std::size_t k = time_index(t);
    compute(l);
    if (levels_[l].zero) return RealField(W0_.grid, Frame::scaled);
    return levels_[l].at_times[k];
}

RealField HarmonicSeries::sum(int N, double t) {
    if (N > order_) throw DependencyError("HarmonicSeries::sum: N exceeds the series order");
    RealField out = term(0, t);
    const double lam = std::sqrt(W0_.grid.eps);
    for (int l = 1; l <= N; ++l) {
        if (vanishes(l)) continue;
        out.values += std::pow(lam, l) * term(l, t).values;
    }
    return out;
}

RealField corrector_term(int l, HarmonicSeries& series, double t) { return series.term(l, t); }

double harmonic_term_at(const GaussianPhaseFunction& W0, double xi, double eta, double t) {
    const auto [q, p] = harmonic_flow(xi, eta, t, FlowDirection::inverse);
    return W0(q, p);
}

double corrector_at(int l, const GaussianPhaseFunction& W0, const Potential& V, double xi, double eta, double t,
                    TimeRule rule) {
    if (l < 1) throw DomainError("corrector_at: level must be >= 1");
    for (int m = 1; m < l; ++m)
        if (!level_vanishes(V, m))
            throw DependencyError("corrector_at: lower level " + std::to_string(m) +
                                  " does not vanish; use HarmonicSeries");
    const auto op = operator_B(l, V);
    if (op.vanishes() || t == 0.0) return 0.0;
    const auto [q0, p0] = harmonic_flow(xi, eta, t, FlowDirection::inverse);  // g_h^{-t} w
    const int panels = std::max(1, int(std::ceil(std::abs(t) * rule.panels_per_unit - 1e-9)));
    const auto gl = specfun::gauss_legendre(rule.points, 0.0, 1.0);
    const double w = t / panels;
    double acc = 0.0;
    for (int pnl = 0; pnl < panels; ++pnl)
        for (Index i = 0; i < gl.size(); ++i) {
            const double s = (pnl + gl.nodes[i]) * w;
            const auto [zx, zk] = harmonic_flow(xi, eta, t - s, FlowDirection::inverse);
            (void)zk;
            const Eigen::Vector2d d(-std::sin(s), std::cos(s));
            double D = 0.0;
            for (const auto& term : op.terms)
                D -= term.coef * std::pow(zx, term.xi_power) * W0.directional_derivative(q0, p0, d, term.eta_order);
            acc += w * gl.weights[i] * D;
        }
    return acc;
}

double remainder_norm(const RealField& oracle_scaled, HarmonicSeries& series, int N, double t, NormKind norm) {
    RealField diff = oracle_scaled;
    const RealField s = series.sum(N, t);
    if (!(s.grid == diff.grid)) throw ComparabilityError("remainder_norm: oracle and series grids differ");
    diff.values -= s.values;
    return weighted_norm(diff, norm);
}

RemainderReport remainder_diagnostics(const std::vector<RemainderSample>& samples, int N, NormKind norm) {
    RemainderReport rep;
    std::map<double, std::vector<RemainderSample>> by_t;
    for (const auto& s : samples) {
        by_t[s.t].push_back(s);
        rep.rows.push_back({s.eps, N, s.t, norm, s.value});
    }
    bool first = true;
    for (auto& [t, v] : by_t) {
        std::vector<double> e, r;
        for (const auto& s : v) {
            e.push_back(s.eps);
            r.push_back(s.value);
        }
        std::vector<double> distinct = e;
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        if (distinct.size() < 3)
            throw StatisticsError("remainder_diagnostics: need at least 3 eps samples, got " +
                                  std::to_string(distinct.size()));
        const double slope = fit_loglog(e, r).slope;
        rep.slopes_per_time.push_back(slope);
        if (first) rep.slope = slope;
        first = false;
    }
    if (by_t.size() >= 2) {
        double emin = samples.front().eps;
        for (const auto& s : samples) emin = std::min(emin, s.eps);
        std::vector<double> ts, lv;
        for (const auto& s : samples)
            if (s.eps == emin) {
                ts.push_back(s.t);
                lv.push_back(std::log(s.value));
            }
        if (ts.size() >= 2) rep.growth_rate = fit_line(ts, lv).slope;
    }
    return rep;
}

std::string to_string(NormKind k) { return k == NormKind::plain_l2 ? "plain-L2" : "gaussian-r-eps"; }

}  // namespace wigner
