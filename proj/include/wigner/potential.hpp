#pragma once

#include <Eigen/Dense>

#include <functional>
#include <string>

namespace wigner {

enum class PotentialTag { harmonic, quartic, polynomial, custom };

// Single-well potential. Polynomials are stored by coefficients c_j of x^j; custom potentials
// supply derivative(order, x) up to a declared order.
class Potential {
public:
    using DerivativeFn = std::function<double(int order, double x)>;

    static Potential harmonic();
    static Potential quartic(double mu);
    static Potential polynomial(Eigen::VectorXd coeffs);
    static Potential custom(DerivativeFn fn, int d_max, std::string name = "custom");
    static Potential zero();

    double operator()(double x) const { return derivative(0, x); }
    double derivative(int order, double x) const;
    Eigen::ArrayXd evaluate(const Eigen::ArrayXd& x) const;

    double taylor_at_zero(int j) const { return derivative(j, 0.0); }

    bool is_polynomial() const { return tag_ != PotentialTag::custom; }
    int degree() const;
    int max_derivative() const { return is_polynomial() ? 1 << 20 : d_max_; }
    const Eigen::VectorXd& coefficients() const { return c_; }
    PotentialTag tag() const { return tag_; }
    double mu() const { return mu_; }
    const std::string& name() const { return name_; }

    // V(0) = 0, V'(0) = 0, V''(0) > 0; throws DomainError otherwise.
    void check_single_well() const;

    // xi -> V(sqrt(eps) xi) / eps, the potential seen by the scaled wavefunction.
    Potential scaled(double eps) const;

private:
    PotentialTag tag_ = PotentialTag::polynomial;
    Eigen::VectorXd c_;
    DerivativeFn fn_;
    int d_max_ = 0;
    double mu_ = 0.0;
    std::string name_;
};

}  // namespace wigner
