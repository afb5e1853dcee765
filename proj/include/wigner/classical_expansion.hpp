#pragma once

#include "wigner/harmonic_expansion.hpp"
#include "wigner/initial_data.hpp"
#include "wigner/phase_field.hpp"
#include "wigner/potential.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace wigner {

struct TrajectorySample {
    double t, q, p, H;
};

// Hamiltonian flow of k^2/2 + V(x) by a fixed-step fourth-order symplectic composition
// (Yoshida triple jump of velocity Verlet). Negative times run the flow backwards.
class FlowMap {
public:
    explicit FlowMap(Potential V, double h = 1e-3);

    std::pair<double, double> forward(double q, double p, double t) const;
    std::pair<double, double> inverse(double x, double k, double t) const { return forward(x, k, -t); }
    // states at the requested times (any order, any sign), starting from (q, p) at t = 0
    std::vector<TrajectorySample> trajectory(double q, double p, const std::vector<double>& times) const;

    double energy(double q, double p) const { return 0.5 * p * p + V_(q); }
    double step() const { return h_; }
    const Potential& potential() const { return V_; }

private:
    void advance(double& q, double& p, double dt) const;
    Potential V_;
    double h_;
};

// Throws NumericError (with a suggested step) when the energy drift exceeds 1e-8 (1 + |H|).
std::pair<double, double> integrate_flow(const Potential& V, double q, double p, double t, double h = 1e-3);

// W_c(., t) = W_0 o g^{-t} on the grid of W0 (sampled source, spectral interpolation).
RealField liouville_term(const RealField& W0, const FlowMap& flow, double t);
// Same with an analytic source evaluated exactly at the pulled-back points.
RealField liouville_term(const std::function<double(double, double)>& W0, const PhaseGrid& grid,
                         const FlowMap& flow, double t);

// Theta_j W = (i/2)^{2j} V^{(2j+1)}(x)/(2j+1)! d_k^{2j+1} W, so that L^eps = L_c - sum_j eps^{2j} Theta_j.
struct ThetaOperator {
    int j = 1;
    double coefficient = 0.0;  // (i/2)^{2j}/(2j+1)!, real
    bool vanishes(const Potential& V) const;
};

ThetaOperator theta_operator(int j);

template <typename Scalar>
PhaseField<Scalar> apply_theta(int j, const PhaseField<Scalar>& W, const Potential& V);

// L_c W = k d_x W - V'(x) d_k W, spectrally.
template <typename Scalar>
PhaseField<Scalar> apply_classical_liouville(const PhaseField<Scalar>& W, const Potential& V);

// Classical expansion W ~ W_c + sum_l eps^{2l} Z_c^{(l)} on a physical grid. Correctors solve
// (d_t + L_c) Z^{(l)} = sum_j Theta_j Z^{(l-j)} with zero data; the Duhamel integral is carried
// in Lagrangian coordinates (pulled back to t = 0) on the composite Gauss-Legendre s-grid.
class ClassicalSeries {
public:
    ClassicalSeries(std::function<double(double, double)> W0, const PhaseGrid& grid, FlowMap flow, int order,
                    std::vector<double> times, TimeRule rule = {});

    int order() const { return order_; }
    const std::vector<double>& times() const { return times_; }
    RealField term(int l, double t);
    RealField sum(int N, double t);
    bool vanishes(int l) const;

private:
    struct Level {
        bool computed = false;
        bool zero = false;
        std::vector<RealField> at_nodes;
        std::vector<RealField> at_times;
    };

    void compute(int l);
    std::size_t time_index(double t) const;
    RealField pull(const RealField& Y, const std::vector<Eigen::Vector2d>& pts) const;

    std::function<double(double, double)> W0_;
    PhaseGrid grid_;
    FlowMap flow_;
    int order_;
    std::vector<double> times_;
    TimeRule rule_;

    std::vector<double> panel_start_, panel_width_, nodes_;
    std::vector<std::size_t> panel_of_time_;
    Eigen::VectorXd gl_w_;
    Eigen::MatrixXd colloc_;
    // forward images g^{s_j}(z) and backward images g^{-s_j}(w) of every grid point, per node
    std::vector<std::vector<Eigen::Vector2d>> fwd_nodes_, bwd_nodes_, bwd_times_;
    std::vector<Level> levels_;
};

RealField classical_corrector(int l, ClassicalSeries& series, double t);

// Multiple-scales approximation of the quartic flow, omega = 1 + (3/8) mu (q^2 + p^2).
// The inverse is the exact functional inverse (fixed point on q^2 + p^2). Requires 0 <= mu <= 0.5.
std::pair<double, double> multiscale_flow(double mu, double q, double p, double t,
                                          FlowDirection dir = FlowDirection::forward);
double multiscale_frequency(double mu, double q, double p);

}  // namespace wigner
