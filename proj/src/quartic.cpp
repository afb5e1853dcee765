#include "wigner/quartic.hpp"

#include "wigner/errors.hpp"
#include "wigner/initial_data.hpp"
#include "wigner/io.hpp"
#include "wigner/parallel.hpp"
#include "wigner/rotation.hpp"
#include "wigner/specfun.hpp"
#include "wigner/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <ostream>

namespace wigner {

using std::numbers::pi;

void QuarticParams::validate() const {
    if (!(mu > 0.0)) throw DomainError("quartic: mu must be positive");
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("quartic: eps must lie in (0, 1)");
}

QuarticOrbit quartic_orbit(double q, double p, double mu) {
    if (mu < 0.0) throw DomainError("quartic_flow_exact: mu must be non-negative");
    const double c = p * p + q * q + 0.5 * mu * q * q * q * q;
    if (!(c > 0.0)) throw DomainError("quartic_flow_exact: (q, p) = (0, 0) has no orbit phase");
    const double S = std::sqrt(1.0 + 2.0 * mu * c);
    QuarticOrbit o;
    o.m = (S - 1.0) / (2.0 * S);
    o.Gamma = std::sqrt(S);
    o.A = std::sqrt(c / S);
    o.K = specfun::elliptic_K(o.m);
    // |q/A| <= 1/sqrt(1-m) holds on the orbit; clamp rounding at the turning point
    const double vmax = 1.0 / std::sqrt(1.0 - o.m);
    const double v = std::clamp(q / o.A, -vmax, vmax);
    double C;
    try {
        C = specfun::jacobi_sd_inverse(v, o.m);
    } catch (const DomainError& e) {
        throw DomainError(std::string("quartic_flow_exact: branch resolution failed: ") + e.what());
    }
    o.C = p >= 0.0 ? C : 2.0 * o.K - C;
    return o;
}

std::pair<double, double> quartic_flow_exact(double q, double p, double t, double mu) {
    const QuarticOrbit o = quartic_orbit(q, p, mu);
    const auto j = specfun::jacobi_sncndn(o.Gamma * t + o.C, o.m);
    const double x = o.A * j.sn / j.dn;
    const double k = o.A * o.Gamma * j.cn / (j.dn * j.dn);
    return {x, k};
}

RayFlow parse_ray_flow(const std::string& s) {
    if (s == "harmonic") return RayFlow::harmonic;
    if (s == "exact") return RayFlow::exact;
    if (s == "integrator") return RayFlow::integrator;
    throw CapabilityError("unknown ray flow '" + s + "'");
}

double ray_position(double q, double t, double mu, RayFlow kind) {
    switch (kind) {
        case RayFlow::harmonic:
            return q * (std::cos(t) + std::sin(t));
        case RayFlow::exact:
            if (q == 0.0) return 0.0;
            return quartic_flow_exact(q, q, t, mu).first;
        case RayFlow::integrator:
            return FlowMap(Potential::quartic(mu), 1e-3).forward(q, q, t).first;
    }
    return 0.0;
}

double ray_jacobian(double q, double t, double mu, RayFlow kind) {
    if (kind == RayFlow::harmonic) return std::cos(t) + std::sin(t);
    const double h = 1e-4;
    auto D = [&](double s) { return (ray_position(q + s, t, mu, kind) - ray_position(q - s, t, mu, kind)) / (2 * s); };
    return (4.0 * D(0.5 * h) - D(h)) / 3.0;
}

namespace {

double ray_jacobian_q(double q, double t, double mu, RayFlow kind) {
    if (kind == RayFlow::harmonic) return 0.0;
    const double h = 1e-3;
    return (ray_jacobian(q + h, t, mu, kind) - ray_jacobian(q - h, t, mu, kind)) / (2 * h);
}

int find_root(std::vector<int>& parent, int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
}

}  // namespace

std::vector<CausticPoint> find_caustics(const CausticScan& s) {
    if (s.resolution < 64) throw ConfigurationError("find_caustics: resolution must be >= 64 per axis");
    if (!(s.q_max > s.q_min) || !(s.t_max > s.t_min)) throw ConfigurationError("find_caustics: empty window");
    if (s.flow != RayFlow::harmonic && !(s.mu > 0.0)) throw DomainError("find_caustics: mu must be positive");

    std::vector<double> qs(s.resolution), ts(s.resolution);
    for (int i = 0; i < s.resolution; ++i) {
        qs[i] = s.q_min + (s.q_max - s.q_min) * i / (s.resolution - 1);
        ts[i] = s.t_min + (s.t_max - s.t_min) * i / (s.resolution - 1);
    }
    // the symmetric ray q = 0 carries the beaks
    if (s.q_min < 0.0 && s.q_max > 0.0 && std::find(qs.begin(), qs.end(), 0.0) == qs.end()) {
        qs.push_back(0.0);
        std::sort(qs.begin(), qs.end());
    }
    const int nq = int(qs.size()), nt = s.resolution;
    Eigen::MatrixXd J(nq, nt);
    parallel_for(std::size_t(nq), [&](std::size_t i) {
        for (int j = 0; j < nt; ++j) J(Index(i), j) = ray_jacobian(qs[i], ts[j], s.mu, s.flow);
    });

    struct Bracket {
        int iq, it;
    };
    std::vector<Bracket> brackets;
    for (int i = 0; i < nq; ++i)
        for (int j = 0; j + 1 < nt; ++j)
            if (J(i, j) == 0.0 || J(i, j) * J(i, j + 1) < 0.0) brackets.push_back({i, j});

    std::vector<CausticPoint> pts(brackets.size());
    parallel_for(brackets.size(), [&](std::size_t b) {
        const double q = qs[brackets[b].iq];
        double lo = ts[brackets[b].it], hi = ts[brackets[b].it + 1];
        double flo = ray_jacobian(q, lo, s.mu, s.flow);
        double t = lo;
        if (flo != 0.0) {
            for (int it = 0; it < 200; ++it) {
                t = 0.5 * (lo + hi);
                const double f = ray_jacobian(q, t, s.mu, s.flow);
                if (std::abs(f) <= 1e-12 || hi - lo < 1e-15) break;
                if ((f < 0) == (flo < 0)) {
                    lo = t;
                    flo = f;
                } else {
                    hi = t;
                }
            }
        }
        pts[b] = {ray_position(q, t, s.mu, s.flow), t, q, "", -1};
    });

    // clustering: brackets in neighbouring q rows with t within 2 cells share a curve
    const double dq = (s.q_max - s.q_min) / (s.resolution - 1), dt = (s.t_max - s.t_min) / (s.resolution - 1);
    std::vector<int> parent(pts.size());
    std::iota(parent.begin(), parent.end(), 0);
    for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = a + 1; b < pts.size(); ++b) {
            if (std::abs(pts[a].q - pts[b].q) > 2.0 * dq + 1e-12) continue;
            if (std::abs(pts[a].t - pts[b].t) > 2.0 * dt) continue;
            parent[find_root(parent, int(a))] = find_root(parent, int(b));
        }
    std::vector<int> label(pts.size(), -1);
    int curves = 0;
    for (std::size_t a = 0; a < pts.size(); ++a) {
        const int r = find_root(parent, int(a));
        if (label[r] < 0) label[r] = curves++;
        pts[a].curve = label[r];
    }
    // a curve of constant t is a focal line: every ray meets at the same time
    std::vector<double> tmin(curves, 1e300), tmax(curves, -1e300);
    for (const auto& p : pts) {
        tmin[p.curve] = std::min(tmin[p.curve], p.t);
        tmax[p.curve] = std::max(tmax[p.curve], p.t);
    }
    parallel_for(pts.size(), [&](std::size_t a) {
        auto& p = pts[a];
        const bool many = std::count_if(pts.begin(), pts.end(), [&](const CausticPoint& o) { return o.curve == p.curve; }) > 1;
        if (many && tmax[p.curve] - tmin[p.curve] < 1e-9)
            p.kind = "focal";
        else if (std::abs(ray_jacobian_q(p.q, p.t, s.mu, s.flow)) < 1e-4)
            p.kind = "cusp-beak";
        else
            p.kind = "fold";
    });
    return pts;
}

double hausdorff_xt(const std::vector<CausticPoint>& a, const std::vector<CausticPoint>& b) {
    if (a.empty() || b.empty()) return a.empty() && b.empty() ? 0.0 : INFINITY;
    auto directed = [](const std::vector<CausticPoint>& u, const std::vector<CausticPoint>& v) {
        double worst = 0.0;
        for (const auto& p : u) {
            double best = INFINITY;
            for (const auto& r : v) best = std::min(best, std::hypot(p.x - r.x, p.t - r.t));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

void write_rays_csv(std::ostream& os, double mu, RayFlow kind, const std::vector<double>& qs,
                    const std::vector<double>& ts) {
    io::CsvWriter w(os, {"q", "t", "x", "J"});
    for (double q : qs)
        for (double t : ts) {
            w << q << t << ray_position(q, t, mu, kind) << ray_jacobian(q, t, mu, kind);
            w.end_row();
        }
}

void write_caustics_csv(std::ostream& os, const std::vector<CausticPoint>& pts) {
    io::CsvWriter w(os, {"x", "t", "kind", "q", "curve"});
    for (const auto& p : pts) {
        w << p.x << p.t << p.kind << p.q << p.curve;
        w.end_row();
    }
}

double focal_amplitude_closed(double eps, double x, double t) {
    // W_h = (sqrt(pi) eps)^{-1} exp(-(s k - c x)^2 - ((c + s) k + (s - c) x)^2 / eps^2), Gaussian in k
    const double c = std::cos(t), s = std::sin(t), e2 = eps * eps;
    const double A = s * s + (c + s) * (c + s) / e2;
    const double B = -s * c * x + (c + s) * (s - c) * x / e2;
    const double C = c * c * x * x + (s - c) * (s - c) * x * x / e2;
    return std::sqrt(pi / A) * std::exp(B * B / A - C) / (std::sqrt(pi) * eps);
}

FocalAmplitude focal_amplitude_harmonic(double eps, int nu, Index n) {
    if (nu < 1) throw DomainError("focal_amplitude_harmonic: nu must be >= 1");
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("focal_amplitude_harmonic: eps must lie in (0, 1)");
    const double t = focal_time(nu);
    const double L = 7.5;
    if (n == 0) {
        n = 8;
        while (2.0 * L / n > eps / 6.0) n *= 2;
    }
    const PhaseGrid g = PhaseGrid::square(L, n, eps);
    const RealField W0 = sample_field(InitialData::gauss_fresnel().wigner(eps), g, Frame::physical);
    const RealField Wt = rotate(W0, t);
    const Index i0 = g.x.zero_index();
    FocalAmplitude out;
    out.quadrature = Wt.values.row(i0).sum() * g.k.spacing();
    out.closed_form = focal_amplitude_closed(eps, 0.0, t);
    out.relative_difference = std::abs(out.quadrature - out.closed_form) / std::abs(out.closed_form);
    return out;
}

double z2_closed_form(double eps, double mu) {
    const double beta = pi / 8.0 * (mu - 0.25) - 3.0;
    const double beta_eps = 8.5 * eps - (3.0 * pi / 16.0 * (mu - 0.25) + 3.0) * eps * eps;
    return std::sqrt(2.0) / (pi * eps) * mu * (beta + beta_eps);
}

double z2_focal_numeric(double eps, double mu, double t, TimeRule rule) {
    QuarticParams{mu, eps}.validate();
    const auto W0 = InitialData::gauss_fresnel().wigner_scaled(eps);
    const Potential V = Potential::quartic(mu);
    // the scaled data live on |eta| <~ 7/sqrt(eps) with eta-structure on the sqrt(eps) scale
    const double eta_max = 7.5 / std::sqrt(eps);
    const double h = std::sqrt(eps) / 8.0;
    const int n = int(std::ceil(2.0 * eta_max / h));
    std::vector<double> vals(n + 1);
    parallel_for(std::size_t(n + 1), [&](std::size_t i) {
        const double eta = -eta_max + 2.0 * eta_max * double(i) / n;
        vals[i] = corrector_at(2, W0, V, 0.0, eta, t, rule);
    });
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) acc += (i == 0 || i == n ? 0.5 : 1.0) * vals[i];
    return std::sqrt(eps) * acc * (2.0 * eta_max / n);
}

Z2Focal z2_focal_contribution(double eps, double mu, int nu, TimeRule rule) {
    if (nu < 1) throw DomainError("z2_focal_contribution: nu must be >= 1");
    Z2Focal z;
    z.numeric = z2_focal_numeric(eps, mu, focal_time(nu), rule);
    z.closed_form = z2_closed_form(eps, mu);
    z.relative_difference = std::abs(z.numeric - z.closed_form) / std::abs(z.closed_form);
    return z;
}

double MuRule::operator()(double eps) const { return coefficient * std::pow(eps, exponent); }

double classical_focal_value(double eps, double mu, int nu) {
    QuarticParams{mu, eps}.validate();
    const auto W0 = InitialData::gauss_fresnel().wigner(eps);
    const double t = focal_time(nu);
    auto f = [&](double k) {
        const auto [q, p] = multiscale_flow(mu, 0.0, k, t, FlowDirection::inverse);
        return W0(q, p);
    };
    // e^{-q^2} confines |k| <~ 8; the ridge width in k is at least ~ eps
    const double kmax = 9.0;
    const int panels = int(std::ceil(2.0 * kmax / (0.25 * eps)));
    const auto gl = specfun::gauss_legendre(8, 0.0, 1.0);
    const double w = 2.0 * kmax / panels;
    std::vector<double> part(panels);
    parallel_for(std::size_t(panels), [&](std::size_t p) {
        double acc = 0.0;
        const double a = -kmax + w * double(p);
        for (Index i = 0; i < gl.nodes.size(); ++i) acc += gl.weights[i] * f(a + w * gl.nodes[i]);
        part[p] = acc * w;
    });
    return std::accumulate(part.begin(), part.end(), 0.0);
}

FocalScaling classical_focal_scaling(const std::vector<double>& eps, const MuRule& rule, int nu) {
    if (eps.size() < 4) throw StatisticsError("classical_focal_scaling: needs at least 4 eps samples");
    FocalScaling out;
    for (double e : eps) {
        out.eps.push_back(e);
        out.mu.push_back(rule(e));
        out.value.push_back(classical_focal_value(e, rule(e), nu));
    }
    const LineFit fit = fit_loglog(out.eps, out.value);
    out.slope = fit.slope;
    out.intercept = fit.intercept;
    out.rms_residual = fit.rms_residual;
    if (fit.rms_residual > 0.1)
        throw StatisticsError("classical_focal_scaling: log-log fit residual " + std::to_string(fit.rms_residual) +
                              " exceeds 0.1");
    return out;
}

}  // namespace wigner
