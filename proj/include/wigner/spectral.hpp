#pragma once

#include "wigner/grid.hpp"
#include "wigner/phase_field.hpp"
#include "wigner/potential.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace wigner {

struct EigenPair {
    int n = 0;
    double energy = 0.0;
    ComplexField u;  // real-valued samples
    double residual = 0.0;  // ||H u - E u||, Fourier derivatives
};

struct EigenData {
    double eps = 1.0;
    std::vector<EigenPair> pairs;

    const EigenPair& operator[](std::size_t n) const { return pairs.at(n); }
    std::size_t size() const { return pairs.size(); }
};

// Eigenpairs n = 0..n_max of -(eps^2/2) d^2 + V on the axis nodes (sinc-DVR, dense symmetric).
// Eigenfunctions are L2-normalized and signed so that their rightmost lobe is positive.
EigenData solve_spectrum(const Potential& V, double eps, int n_max, const Axis& axis);

// Rayleigh-Schrodinger data for the scaled operator
//   -d^2 + xi^2 + sum_{l>=1} eps^{l/2} c_l xi^{l+2},  c_l = 2 V^{(l+2)}(0)/(l+2)!,
// eigenvalue e_n + sum_l eps^{l/2} a[l], eigenfunction sum_l eps^{l/2} psi_l (Hermite coefficients).
struct HarmonicCorrection {
    int n = 0;
    int order = 0;
    Eigen::VectorXd a;                 // a[0] = e_n = 2n + 1
    std::vector<Eigen::VectorXd> psi;  // psi[l] in the normalized Hermite basis

    double energy(double eps) const;  // (2/eps) E_n truncated at `order`
    double wave_at(int l, double xi) const;
    ComplexField sample(int l, const Axis& axis) const;
};

HarmonicCorrection harmonic_corrections(const Potential& V, int n, int order);

// Matrix of xi = (a + a^dagger)/sqrt(2) in the first `size` Hermite functions.
Eigen::MatrixXd hermite_position_matrix(int size);
// Exact matrix of xi^p in the first `size` Hermite functions.
Eigen::MatrixXd hermite_power_matrix(int p, int size);

struct MoyalFunction {
    int n = 0, m = 0;
    double E_n = 0.0, E_m = 0.0, eps = 1.0;
    ComplexPhaseField field;

    cdouble lambda() const { return cdouble(0.0, (E_n - E_m) / eps); }
    double mu() const { return 0.5 * (E_n + E_m); }
};

MoyalFunction moyal_eigenfunction(int n, int m, const EigenData& eig, const PhaseGrid& grid);

// Harmonic Moyal function Psi_nm (eps = 1) in closed form through Laguerre polynomials.
ComplexPhaseField harmonic_moyal(int n, int m, const PhaseGrid& grid, Frame frame = Frame::scaled);
cdouble harmonic_moyal_at(int n, int m, double xi, double eta);

// L^eps W = k d_x W - Theta^eps[V] W with Theta^eps applied pseudo-spectrally in k.
template <typename Scalar>
PhaseField<Scalar> apply_liouville(const PhaseField<Scalar>& W, const Potential& V, double eps);

// M^eps W = [k^2/2 - (eps^2/8) d_x^2] W + sum_j (-eps^2/4)^j V^{(2j)}(x)/(2j)! d_k^{2j} W.
// Non-polynomial V needs an explicit truncation order (largest j).
template <typename Scalar>
PhaseField<Scalar> apply_cosine_bracket(const PhaseField<Scalar>& W, const Potential& V, double eps,
                                        std::optional<int> truncation = std::nullopt);

// Z~_nm^{(l)} = sum_{mu=0}^{l} W[psi_n^{(mu)}, psi_m^{(l-mu)}], eps = 1 cross-Wigner on a scaled grid.
ComplexPhaseField moyal_corrector(int l, const HarmonicCorrection& cn, const HarmonicCorrection& cm,
                                  const PhaseGrid& grid);

// Relative residual ||[L_h - (i/2)(e_n - e_m)] Z^{(l)} - B^{(l)}_nm|| / ||B^{(l)}_nm|| of the hierarchy
//   B^{(l)}_nm = -sum_{nu=1}^{l} B_nu Z^{(l-nu)} + (i/2) sum_{j=1}^{l} (a_n^{(j)} - a_m^{(j)}) Z^{(l-j)};
// the absolute residual is returned when B^{(l)}_nm vanishes.
double moyal_hierarchy_residual(int l, const HarmonicCorrection& cn, const HarmonicCorrection& cm,
                                const Potential& V, const PhaseGrid& grid);

}  // namespace wigner
