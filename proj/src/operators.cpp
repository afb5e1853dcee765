#include "wigner/operators.hpp"

#include "wigner/errors.hpp"
#include "wigner/fft.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace wigner {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double minus_quarter_pow(int j) { return std::pow(-0.25, j); }  // (i/2)^{2j}

template <typename Scalar>
typename PhaseField<Scalar>::Matrix to_scalar(const Eigen::MatrixXcd& m) {
    if constexpr (std::is_same_v<Scalar, double>) return m.real();
    else return m;
}

}  // namespace

int DifferentialOperator::max_eta_order() const {
    int d = 0;
    for (const auto& t : terms) d = std::max(d, t.eta_order);
    return d;
}

DifferentialOperator operator_B(int nu, const Potential& V) {
    if (nu < 1) throw DomainError("operator_B: nu must be >= 1");
    DifferentialOperator op;
    op.nu = nu;
    op.v_derivative = V.taylor_at_zero(nu + 2);
    for (int j = 0; j <= (nu + 1) / 2; ++j) {
        const int p = nu + 1 - 2 * j;
        op.terms.push_back({-op.v_derivative * minus_quarter_pow(j) / (factorial(2 * j + 1) * factorial(p)), p,
                            2 * j + 1});
    }
    return op;
}

DifferentialOperator operator_Gamma(int nu, const Potential& V) {
    if (nu < 1) throw DomainError("operator_Gamma: nu must be >= 1");
    DifferentialOperator op;
    op.nu = nu;
    op.v_derivative = V.taylor_at_zero(nu + 2);
    for (int j = 0; j <= nu / 2 + 1; ++j) {
        const int p = nu + 2 - 2 * j;
        op.terms.push_back({op.v_derivative * minus_quarter_pow(j) / (factorial(2 * j) * factorial(p)), p, 2 * j});
    }
    return op;
}

template <typename Scalar>
void check_bandwidth(const PhaseField<Scalar>& W, int axis, const char* who) {
    const Axis& ax = axis == 0 ? W.grid.x : W.grid.k;
    Eigen::MatrixXcd F = W.values.template cast<cdouble>();
    fft::forward_along(F, axis);
    const Eigen::VectorXcd amp =
        axis == 0 ? Eigen::VectorXcd(F.cwiseAbs().rowwise().maxCoeff().cast<cdouble>())
                  : Eigen::VectorXcd(F.cwiseAbs().colwise().maxCoeff().transpose().cast<cdouble>());
    const double keff = fft::effective_bandwidth(amp, ax.length(), kBandwidthLevel);
    const double knyq = std::numbers::pi / ax.spacing();
    if (knyq < kBandwidthFactor * keff)
        throw ResolutionError(std::string(who) + ": grid bandwidth " + std::to_string(knyq) +
                              " is below " + std::to_string(kBandwidthFactor) +
                              "x the field's effective bandwidth " + std::to_string(keff));
}

template <typename Scalar>
typename PhaseField<Scalar>::Matrix spectral_derivative(const PhaseField<Scalar>& W, int axis, int order) {
    const Axis& ax = axis == 0 ? W.grid.x : W.grid.k;
    Eigen::MatrixXcd F = W.values.template cast<cdouble>();
    fft::apply_symbol_along(F, axis, fft::derivative_symbol(ax.n, ax.length(), order));
    return to_scalar<Scalar>(F);
}

template <typename Scalar>
PhaseField<Scalar> apply_operator(const DifferentialOperator& op, const PhaseField<Scalar>& W) {
    PhaseField<Scalar> out(W.grid, W.frame);
    if (op.vanishes()) return out;
    if (op.max_eta_order() > 0) check_bandwidth(W, 1, "apply_B/apply_Gamma");
    const Eigen::ArrayXd xi = W.grid.x.nodes().array();
    for (const auto& t : op.terms) {
        auto D = t.eta_order == 0 ? W.values : spectral_derivative(W, 1, t.eta_order);
        const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> w =
            (t.coef * xi.pow(double(t.xi_power))).matrix().template cast<Scalar>();
        out.values += w.asDiagonal() * D;
    }
    return out;
}

template <typename Scalar>
PhaseField<Scalar> apply_L_h(const PhaseField<Scalar>& W) {
    const auto dxi = spectral_derivative(W, 0, 1);
    const auto deta = spectral_derivative(W, 1, 1);
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> xi = W.grid.x.nodes().template cast<Scalar>();
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> eta = W.grid.k.nodes().template cast<Scalar>();
    PhaseField<Scalar> out(W.grid, W.frame);
    out.values = dxi * eta.asDiagonal() - xi.asDiagonal() * deta;
    return out;
}

template <typename Scalar>
PhaseField<Scalar> apply_M_h(const PhaseField<Scalar>& W) {
    const auto d2xi = spectral_derivative(W, 0, 2);
    const auto d2eta = spectral_derivative(W, 1, 2);
    const Eigen::ArrayXd xi = W.grid.x.nodes().array(), eta = W.grid.k.nodes().array();
    PhaseField<Scalar> out(W.grid, W.frame);
    const Eigen::MatrixXd r2 = 0.5 * (xi.square().matrix() * Eigen::RowVectorXd::Ones(eta.size()) +
                                      Eigen::VectorXd::Ones(xi.size()) * eta.square().matrix().transpose());
    out.values = (W.values.array() * r2.array().template cast<Scalar>()).matrix() - 0.125 * (d2xi + d2eta);
    return out;
}

#define WIGNER_INSTANTIATE(S)                                                                  \
    template void check_bandwidth(const PhaseField<S>&, int, const char*);                     \
    template PhaseField<S>::Matrix spectral_derivative(const PhaseField<S>&, int, int);        \
    template PhaseField<S> apply_operator(const DifferentialOperator&, const PhaseField<S>&);           \
    template PhaseField<S> apply_L_h(const PhaseField<S>&);                                    \
    template PhaseField<S> apply_M_h(const PhaseField<S>&);
WIGNER_INSTANTIATE(double)
WIGNER_INSTANTIATE(cdouble)
#undef WIGNER_INSTANTIATE

}  // namespace wigner
