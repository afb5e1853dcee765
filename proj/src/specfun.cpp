#include "wigner/specfun.hpp"

#include "wigner/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace wigner::specfun {

namespace {

void check_order(int n, int n_max, const char* what) {
    if (n < 0) throw DomainError(std::string(what) + ": negative order");
    if (n > n_max)
        throw CapabilityError(std::string(what) + ": order " + std::to_string(n) +
                              " exceeds n_max = " + std::to_string(n_max));
}

double agm(double a, double b) {
    for (int i = 0; i < 64 && std::abs(a - b) > 1e-16 * a; ++i) {
        const double c = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = c;
    }
    return 0.5 * (a + b);
}

}  // namespace

Eigen::VectorXd hermite_fns(int n, double x, int n_max) {
    check_order(n, n_max, "hermite_fn");
    Eigen::VectorXd psi(n + 1);
    psi[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
    if (n >= 1) psi[1] = std::numbers::sqrt2 * x * psi[0];
    for (int k = 1; k < n; ++k)
        psi[k + 1] = std::sqrt(2.0 / (k + 1)) * x * psi[k] - std::sqrt(double(k) / (k + 1)) * psi[k - 1];
    return psi;
}

double hermite_fn(int n, double x, int n_max) { return hermite_fns(n, x, n_max)[n]; }

double laguerre_fn(int n, double alpha, double x, int n_max) {
    check_order(n, n_max, "laguerre_fn");
    double prev = 1.0;
    if (n == 0) return prev;
    double cur = 1.0 + alpha - x;
    for (int k = 1; k < n; ++k) {
        const double next = ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

double elliptic_K(double m) {
    if (!(m >= 0.0 && m < 1.0)) throw DomainError("elliptic_K: m must lie in [0, 1)");
    return std::numbers::pi / (2.0 * agm(1.0, std::sqrt(1.0 - m)));
}

EllipticParams elliptic_params(double m) { return {m, elliptic_K(m)}; }

JacobiTriple jacobi_sncndn(double u, double m) {
    if (!(m >= 0.0 && m <= 1.0)) throw DomainError("jacobi_sncndn: m must lie in [0, 1]");
    double emc = 1.0 - m;
    if (emc == 0.0) {
        const double c = 1.0 / std::cosh(u);
        return {std::tanh(u), c, c};
    }
    constexpr int kMaxIter = 32;
    double em[kMaxIter], en[kMaxIter];
    double a = 1.0, c = 1.0, dn = 1.0;
    int l = 0;
    for (int i = 0; i < kMaxIter; ++i) {
        l = i;
        em[i] = a;
        emc = std::sqrt(emc);
        en[i] = emc;
        c = 0.5 * (a + emc);
        if (std::abs(a - emc) <= 1e-15 * a) break;
        emc *= a;
        a = c;
    }
    u *= c;
    double sn = std::sin(u);
    double cn = std::cos(u);
    if (sn != 0.0) {
        a = cn / sn;
        c *= a;
        for (int i = l; i >= 0; --i) {
            const double b = em[i];
            a *= c;
            c *= dn;
            dn = (en[i] + a) / (b + a);
            a = c / b;
        }
        a = 1.0 / std::sqrt(c * c + 1.0);
        sn = sn >= 0.0 ? a : -a;
        cn = c * sn;
    }
    return {sn, cn, dn};
}

double jacobi_sd(double u, double m) {
    const auto j = jacobi_sncndn(u, m);
    return j.sn / j.dn;
}

double jacobi_sd_inverse(double v, double m) {
    if (!(m >= 0.0 && m < 1.0)) throw DomainError("jacobi_sd_inverse: m must lie in [0, 1)");
    const double vmax = 1.0 / std::sqrt(1.0 - m);
    if (std::abs(v) > vmax * (1.0 + 1e-14))
        throw DomainError("jacobi_sd_inverse: |v| = " + std::to_string(std::abs(v)) +
                          " exceeds the range of sd (" + std::to_string(vmax) + ")");
    const double K = elliptic_K(m);
    if (std::abs(v) >= vmax) return std::copysign(K, v);

    // sd is odd and increasing on [-K, K]; safeguarded Newton on [lo, hi].
    double lo = -K, hi = K;
    double u = std::asin(std::clamp(v / vmax, -1.0, 1.0)) * (2.0 * K / std::numbers::pi);
    for (int it = 0; it < 200; ++it) {
        const auto j = jacobi_sncndn(u, m);
        const double f = j.sn / j.dn - v;
        if (f > 0) hi = u; else lo = u;
        const double df = j.cn / (j.dn * j.dn);
        double next = df > 0 ? u - f / df : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - u) <= 1e-15 * (1.0 + std::abs(u)) || hi - lo <= 1e-15 * K) return next;
        u = next;
    }
    return u;
}

RuleKind parse_rule_kind(std::string_view name) {
    if (name == "gauss-hermite") return RuleKind::gauss_hermite;
    if (name == "trapezoid-periodic") return RuleKind::trapezoid_periodic;
    if (name == "gauss-legendre") return RuleKind::gauss_legendre;
    throw CapabilityError("unsupported quadrature kind '" + std::string(name) + "'");
}

std::string_view to_string(RuleKind kind) {
    switch (kind) {
        case RuleKind::gauss_hermite: return "gauss-hermite";
        case RuleKind::trapezoid_periodic: return "trapezoid-periodic";
        case RuleKind::gauss_legendre: return "gauss-legendre";
    }
    return "?";
}

namespace {

// Golub-Welsch for the nodes, Newton polish against the three-term recurrence,
// weights from the Christoffel function (never from eigenvector components,
// which lose the tiny outer weights).
QuadratureRule gauss_hermite_rule(int n) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) J(k, k - 1) = J(k - 1, k) = std::sqrt(0.5 * k);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J, Eigen::EigenvaluesOnly);
    QuadratureRule r;
    r.kind = RuleKind::gauss_hermite;
    r.nodes = es.eigenvalues();
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = r.nodes[i];
        for (int it = 0; it < 3; ++it) {
            const auto psi = hermite_fns(n, x, n);
            const double d = std::sqrt(2.0 * n) * psi[n - 1] - x * psi[n];
            if (d == 0.0) break;
            x -= psi[n] / d;
        }
        r.nodes[i] = x;
        const auto psi = hermite_fns(n - 1, x, n);
        r.weights[i] = std::exp(-x * x) / psi.squaredNorm();
    }
    return r;
}

QuadratureRule gauss_legendre_unit(int n) {
    QuadratureRule r;
    r.kind = RuleKind::gauss_legendre;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) { p1 = x; p0 = 1.0; }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        r.nodes[n - 1 - i] = x;
        r.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

}  // namespace

QuadratureRule gauss_legendre(int n, double a, double b) {
    if (n < 1) throw DomainError("gauss_legendre: n must be >= 1");
    auto r = gauss_legendre_unit(n);
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    r.nodes = (r.nodes.array() * half + mid).matrix();
    r.weights *= half;
    return r;
}

QuadratureRule make_rule(RuleKind kind, int n, double scale) {
    if (n < 1) throw DomainError("make_rule: n must be >= 1");
    if (!(scale > 0.0)) throw DomainError("make_rule: scale must be positive");
    switch (kind) {
        case RuleKind::gauss_hermite: {
            auto r = gauss_hermite_rule(n);
            r.nodes *= scale;
            r.weights *= scale;
            return r;
        }
        case RuleKind::trapezoid_periodic: {
            QuadratureRule r;
            r.kind = kind;
            r.nodes = Eigen::VectorXd::LinSpaced(n, 0.0, scale * (n - 1) / n);
            r.weights = Eigen::VectorXd::Constant(n, scale / n);
            return r;
        }
        case RuleKind::gauss_legendre:
            return gauss_legendre(n, 0.0, scale);
    }
    throw CapabilityError("make_rule: unsupported quadrature kind");
}

}  // namespace wigner::specfun
