#pragma once

#include "wigner/initial_data.hpp"
#include "wigner/operators.hpp"
#include "wigner/phase_field.hpp"
#include "wigner/phase_space.hpp"
#include "wigner/potential.hpp"
#include "wigner/rotation.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace wigner {

enum class FlowDirection { forward, inverse };

// forward: (q cos t + p sin t, p cos t - q sin t); inverse: (xi cos t - eta sin t, eta cos t + xi sin t)
std::pair<double, double> harmonic_flow(double q, double p, double t,
                                        FlowDirection dir = FlowDirection::forward);

// W~_h(t) = W~_0 o g_h^{-t}
template <typename Scalar>
PhaseField<Scalar> harmonic_term(const PhaseField<Scalar>& W0, double t) {
    return rotate(W0, t);
}

// Composite Gauss-Legendre in s: `points` nodes per panel, panels no longer than 1/panels_per_unit.
struct TimeRule {
    int points = 4;
    int panels_per_unit = 16;
};

// Harmonic expansion W~ ~ W~_h + sum_{l=1}^{N} eps^{l/2} Z~^{(l)} on a scaled grid.
// V is the unscaled potential (V''(0) = 1); the eps^{l/2} weights carry the scaling.
// Correctors are Duhamel integrals of D^{(l)} = -sum_nu B_nu Z~^{(l-nu)} along the rotation.
// All levels are memoized at the quadrature nodes of one fixed s-grid whose panel boundaries
// include every output time; interior-node values come from the panel's collocation matrix.
class HarmonicSeries {
public:
    HarmonicSeries(RealField W0, Potential V, int order, std::vector<double> times, TimeRule rule = {});

    int order() const { return order_; }
    const std::vector<double>& times() const { return times_; }
    const RealField& initial() const { return W0_; }
    const Potential& potential() const { return V_; }

    // Z~^{(l)}(t) for t among the output times (l = 0 gives W~_h).
    RealField term(int l, double t);
    // W~_h + sum_{l=1}^{N} eps^{l/2} Z~^{(l)} at time t, with eps from the grid.
    RealField sum(int N, double t);
    // true when every forcing of level l vanishes (e.g. odd l for even V)
    bool vanishes(int l) const;

private:
    struct Level {
        bool computed = false;
        bool zero = false;
        std::vector<RealField> at_nodes;   // Z~^{(l)}(s_j)
        std::vector<RealField> at_times;   // Z~^{(l)}(t_k)
    };

    void compute(int l);
    std::size_t time_index(double t) const;

    RealField W0_;
    Potential V_;
    int order_;
    std::vector<double> times_;
    TimeRule rule_;

    std::vector<double> panel_start_, panel_width_;
    std::vector<std::size_t> panel_of_time_;  // last panel ending at times_[k] (npos for t=0)
    std::vector<double> nodes_;               // all s-nodes, panel-major
    Eigen::VectorXd gl_x_, gl_w_;             // unit-interval rule
    Eigen::MatrixXd colloc_;                  // integral from 0 to x_i of the j-th Lagrange basis
    std::vector<Level> levels_;
};

// Z~^{(l)}(t) from a series that memoizes lower levels
RealField corrector_term(int l, HarmonicSeries& series, double t);

// Pointwise evaluation for Gaussian initial data.
double harmonic_term_at(const GaussianPhaseFunction& W0, double xi, double eta, double t);
// Z~^{(l)}(xi, eta, t) for the first non-vanishing level l (all B_nu, nu < l, vanish), so that
// D^{(l)} = -B_l W~_h. Throws DependencyError otherwise.
double corrector_at(int l, const GaussianPhaseFunction& W0, const Potential& V, double xi, double eta,
                    double t, TimeRule rule = {});

struct RemainderRow {
    double eps;
    int N;
    double t;
    NormKind norm;
    double value;
};

struct RemainderReport {
    std::vector<RemainderRow> rows;
    double slope = 0.0;        // d log(value) / d log(eps) at fixed t (first time)
    double growth_rate = 0.0;  // d log(value) / dt at the smallest eps (0 with a single time)
    std::vector<double> slopes_per_time;
};

struct RemainderSample {
    double eps;
    double t;
    double value;
};

// Norm of oracle - W~_h - sum_{l<=N} eps^{l/2} Z~^{(l)} for one eps and time.
double remainder_norm(const RealField& oracle_scaled, HarmonicSeries& series, int N, double t, NormKind norm);

// Fits the eps-slope per time and the growth in t. Needs at least 3 distinct eps values.
RemainderReport remainder_diagnostics(const std::vector<RemainderSample>& samples, int N, NormKind norm);

std::string to_string(NormKind k);

}  // namespace wigner
