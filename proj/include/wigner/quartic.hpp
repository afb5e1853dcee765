#pragma once

#include "wigner/classical_expansion.hpp"
#include "wigner/harmonic_expansion.hpp"
#include "wigner/potential.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace wigner {

struct QuarticParams {
    double mu = 0.1;
    double eps = 0.1;
    void validate() const;
    Potential potential() const { return Potential::quartic(mu); }
};

// Closed-form bicharacteristics of k^2/2 + x^2/2 + mu x^4/4:
// x = A sd(Gamma t + C, m), k = dx/dt, with c = p^2 + q^2 + mu q^4/2, S = sqrt(1 + 2 mu c),
// m = (S - 1)/(2S), Gamma = sqrt(S), A = sqrt(c/S), C from sd^{-1}(q/A) on the branch fixed by sign(p).
struct QuarticOrbit {
    double A, m, Gamma, C, K;
};
QuarticOrbit quartic_orbit(double q, double p, double mu);
std::pair<double, double> quartic_flow_exact(double q, double p, double t, double mu);

enum class RayFlow { harmonic, exact, integrator };
RayFlow parse_ray_flow(const std::string& s);

// position of the ray launched from (q, S_0'(q) = q)
double ray_position(double q, double t, double mu, RayFlow kind);
// J(q, t) = d/dq of the ray position; analytic for the harmonic flow, Richardson central differences otherwise
double ray_jacobian(double q, double t, double mu, RayFlow kind);

struct CausticPoint {
    double x = 0.0, t = 0.0, q = 0.0;
    std::string kind;  // focal | cusp-beak | fold
    int curve = -1;
};

struct CausticScan {
    double mu = 0.0;
    double q_min = -2.0, q_max = 2.0;
    double t_min = 0.0, t_max = 6.0;
    int resolution = 128;
    RayFlow flow = RayFlow::exact;
};

std::vector<CausticPoint> find_caustics(const CausticScan& scan);
// symmetric Hausdorff distance between two point sets in the (x, t) plane
double hausdorff_xt(const std::vector<CausticPoint>& a, const std::vector<CausticPoint>& b);

void write_rays_csv(std::ostream& os, double mu, RayFlow kind, const std::vector<double>& qs,
                    const std::vector<double>& ts);
void write_caustics_csv(std::ostream& os, const std::vector<CausticPoint>& pts);

inline double focal_time(int nu) { return nu * 3.14159265358979323846 - 0.25 * 3.14159265358979323846; }

// Gauss-Fresnel data: integral of W_h(x, k, t) dk in closed form.
double focal_amplitude_closed(double eps, double x, double t);

struct FocalAmplitude {
    double closed_form = 0.0;
    double quadrature = 0.0;
    double relative_difference = 0.0;
};
// closed form and grid quadrature of the rotated initial field at (x = 0, t_nu);
// n = 0 picks a grid resolving the eps-wide ridge
FocalAmplitude focal_amplitude_harmonic(double eps, int nu, Index n = 0);

struct Z2Focal {
    double numeric = 0.0;      // eps * integral Z^(2)(0, k, t) dk by the Duhamel corrector
    double closed_form = 0.0;  // (sqrt2/(pi eps)) mu (beta + beta^eps)
    double relative_difference = 0.0;
};
double z2_closed_form(double eps, double mu);
// integral of Z~^(2)(0, eta, t) d eta for Gauss-Fresnel data, scaled by sqrt(eps)
double z2_focal_numeric(double eps, double mu, double t, TimeRule rule = {});
Z2Focal z2_focal_contribution(double eps, double mu, int nu, TimeRule rule = {});

struct MuRule {
    double coefficient = 0.1;
    double exponent = 0.0;  // mu = coefficient * eps^exponent
    double operator()(double eps) const;
};

struct FocalScaling {
    std::vector<double> eps, mu, value;
    double slope = 0.0, intercept = 0.0, rms_residual = 0.0;
};
// integral of W_0(q_a(0, k, t_nu), p_a(0, k, t_nu)) dk with the multiscale inverse flow
double classical_focal_value(double eps, double mu, int nu);
FocalScaling classical_focal_scaling(const std::vector<double>& eps, const MuRule& rule, int nu = 1);

}  // namespace wigner
