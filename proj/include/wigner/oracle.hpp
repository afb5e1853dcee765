#pragma once

#include "wigner/grid.hpp"
#include "wigner/phase_field.hpp"
#include "wigner/phase_space.hpp"
#include "wigner/potential.hpp"
#include "wigner/spectral.hpp"

#include <vector>

namespace wigner {

enum class EvolutionMethod { split_step, eigenseries };

struct EvolutionConfig {
    double dt = 0.0;  // 0 picks eps / 20
    double t_final = 0.0;
    EvolutionMethod method = EvolutionMethod::split_step;
    // 2: Strang; 4: triple-jump composition of Strang steps
    int composition_order = 2;
    int eigen_count = 0;  // eigenseries only; 0 grows the basis until the tail test passes
};

// Spectral split-step solution of i eps psi_t = -(eps^2/2) psi'' + V psi at each requested time.
// Throws ConfigurationError when the potential phase per step dt max|V|/eps exceeds pi.
std::vector<ComplexField> split_step_evolve(const ComplexField& psi0, const Potential& V, double eps,
                                            const std::vector<double>& times, EvolutionConfig cfg = {});
ComplexField split_step_evolve(const ComplexField& psi0, const Potential& V, double eps, double t,
                               EvolutionConfig cfg = {});

struct EigenProjection {
    Eigen::VectorXcd coefficients;  // A_{0,n} = (psi0, u_n)
    double norm_squared = 0.0;      // ||psi0||^2
    double tail_mass = 0.0;         // 1 - sum |A_{0,n}|^2 / ||psi0||^2
};

// Throws TruncationError when the tail mass exceeds `tail` (default 1e-8).
EigenProjection project(const ComplexField& psi0, const EigenData& eig, double tail = 1e-8);
ComplexField eigenseries_evolve(const ComplexField& psi0, const EigenData& eig, double eps, double t);
ComplexField eigenseries_evolve(const EigenProjection& proj, const EigenData& eig, double t);
// A_nm(t) = A_{0,n} conj(A_{0,m}) e^{-i (E_n - E_m) t / eps}
Eigen::MatrixXcd wigner_coefficients(const EigenProjection& proj, const EigenData& eig, double t);

// Eigendata large enough to carry psi0 up to the tail test, grown by doubling from `start`.
EigenData eigendata_for(const ComplexField& psi0, const Potential& V, double eps, int start = 16,
                        double tail = 1e-8);

// W^eps(., ., t) of the evolved state on `grid` (physical frame).
RealField reference_wigner(const ComplexField& psi0, const Potential& V, double eps, double t, const PhaseGrid& grid,
                           EvolutionConfig cfg = {});

// A_nm(t) ~ A_h,nm(t) + sum_j eps^{j/2} Delta_j,nm(t) with
//   A_h,nm = 2 pi (W~_0, Psi_nm) e^{-i (e_n - e_m) t / 2},
// and Delta_j collecting the projections on Z~^{(l)}_nm and the secular phase terms from
// E_n = (eps/2)(e_n + sum_l eps^{l/2} a_n^{(l)}).
struct CoefficientExpansion {
    int n = 0, m = 0;
    double t = 0.0;
    cdouble harmonic;             // A_h,nm(t)
    std::vector<cdouble> deltas;  // deltas[j-1] = Delta_j,nm(t)
    cdouble total(double eps, int order) const;
};

CoefficientExpansion coefficient_expansion(const RealField& W0_scaled, const HarmonicCorrection& cn,
                                           const HarmonicCorrection& cm, double t, int order);

}  // namespace wigner
