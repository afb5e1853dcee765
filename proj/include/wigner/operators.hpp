#pragma once

#include "wigner/phase_field.hpp"
#include "wigner/potential.hpp"

#include <vector>

namespace wigner {

// coef * xi^xi_power * d^eta_order / d eta^eta_order
struct OperatorTerm {
    double coef;
    int xi_power;
    int eta_order;
};

// Finite sum of OperatorTerms acting on scaled fields.
struct DifferentialOperator {
    int nu = 0;
    double v_derivative = 0.0;  // V^{(nu+2)}(0)
    std::vector<OperatorTerm> terms;

    bool vanishes() const { return v_derivative == 0.0; }
    int max_eta_order() const;
};

// Scaled sine-bracket pieces: L~ = L_h + sum_nu eps^{nu/2} B_nu with
// B_nu = -V^{(nu+2)}(0) sum_{j=0}^{[(nu+1)/2]} (i/2)^{2j}/(2j+1)! xi^{nu+1-2j}/(nu+1-2j)! d_eta^{2j+1}.
DifferentialOperator operator_B(int nu, const Potential& V);

// Scaled cosine-bracket pieces: M~ = eps (M_h + sum_nu eps^{nu/2} Gamma_nu) with
// Gamma_nu = V^{(nu+2)}(0) sum_{j=0}^{[nu/2]+1} (i/2)^{2j}/(2j)! xi^{nu+2-2j}/(nu+2-2j)! d_eta^{2j}.
DifferentialOperator operator_Gamma(int nu, const Potential& V);

// Fourier differentiation along eta; throws ResolutionError when the grid bandwidth is below
// kBandwidthFactor times the field's effective eta-bandwidth and a derivative is requested.
template <typename Scalar>
PhaseField<Scalar> apply_operator(const DifferentialOperator& op, const PhaseField<Scalar>& W);

template <typename Scalar>
PhaseField<Scalar> apply_B(int nu, const PhaseField<Scalar>& W, const Potential& V) {
    return apply_operator(operator_B(nu, V), W);
}

template <typename Scalar>
PhaseField<Scalar> apply_Gamma(int nu, const PhaseField<Scalar>& W, const Potential& V) {
    return apply_operator(operator_Gamma(nu, V), W);
}

// L_h = eta d_xi - xi d_eta and M_h = (xi^2 + eta^2)/2 - (d_xi^2 + d_eta^2)/8, spectrally.
template <typename Scalar>
PhaseField<Scalar> apply_L_h(const PhaseField<Scalar>& W);
template <typename Scalar>
PhaseField<Scalar> apply_M_h(const PhaseField<Scalar>& W);

inline constexpr double kBandwidthFactor = 2.0;
inline constexpr double kBandwidthLevel = 1e-3;

// Spectral partial derivative of order `order` along axis 0 (x/xi) or 1 (k/eta).
template <typename Scalar>
typename PhaseField<Scalar>::Matrix spectral_derivative(const PhaseField<Scalar>& W, int axis, int order);

// Throws ResolutionError if the axis bandwidth is below kBandwidthFactor times the field's.
template <typename Scalar>
void check_bandwidth(const PhaseField<Scalar>& W, int axis, const char* who);

}  // namespace wigner
