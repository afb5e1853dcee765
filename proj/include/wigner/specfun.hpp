#pragma once

#include <Eigen/Dense>

#include <string_view>

namespace wigner::specfun {

inline constexpr int kDefaultHermiteMax = 256;

// Normalized Hermite function psi_n(x) = (2^n n! sqrt(pi))^{-1/2} e^{-x^2/2} H_n(x).
double hermite_fn(int n, double x, int n_max = kDefaultHermiteMax);

// psi_0(x) ... psi_n(x) in one recurrence sweep.
Eigen::VectorXd hermite_fns(int n, double x, int n_max = kDefaultHermiteMax);

// Generalized Laguerre polynomial L_n^alpha(x).
double laguerre_fn(int n, double alpha, double x, int n_max = kDefaultHermiteMax);

struct EllipticParams {
    double m = 0.0;  // modulus squared
    double K = 0.0;  // quarter period
};

EllipticParams elliptic_params(double m);
double elliptic_K(double m);

struct JacobiTriple {
    double sn, cn, dn;
};

// sn, cn, dn by descending Landen / AGM. m in [0, 1].
JacobiTriple jacobi_sncndn(double u, double m);

double jacobi_sd(double u, double m);

// Inverse of sd on the principal branch [-K, K]; throws DomainError when |v| > 1/sqrt(1-m).
double jacobi_sd_inverse(double v, double m);

enum class RuleKind { gauss_hermite, trapezoid_periodic, gauss_legendre };

RuleKind parse_rule_kind(std::string_view name);
std::string_view to_string(RuleKind kind);

struct QuadratureRule {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
    RuleKind kind = RuleKind::gauss_legendre;

    Eigen::Index size() const { return nodes.size(); }

    template <typename F>
    auto integrate(F&& f) const {
        auto acc = weights[0] * f(nodes[0]);
        for (Eigen::Index i = 1; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
        return acc;
    }
};

// gauss_hermite: integral of e^{-(x/scale)^2} f(x) over the line.
// trapezoid_periodic: integral over one period [0, scale).
// gauss_legendre: integral over [0, scale].
QuadratureRule make_rule(RuleKind kind, int n, double scale = 1.0);

// Gauss-Legendre rule on [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

}  // namespace wigner::specfun
