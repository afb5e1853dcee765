#include "wigner/potential.hpp"

#include "wigner/errors.hpp"

#include <cmath>

namespace wigner {

using Eigen::Index;

Potential Potential::harmonic() {
    Potential v = polynomial((Eigen::VectorXd(3) << 0.0, 0.0, 0.5).finished());
    v.tag_ = PotentialTag::harmonic;
    v.name_ = "harmonic";
    return v;
}

Potential Potential::quartic(double mu) {
    if (!(mu > 0.0)) throw DomainError("quartic potential needs mu > 0");
    Potential v = polynomial((Eigen::VectorXd(5) << 0.0, 0.0, 0.5, 0.0, 0.25 * mu).finished());
    v.tag_ = PotentialTag::quartic;
    v.mu_ = mu;
    v.name_ = "quartic";
    return v;
}

Potential Potential::polynomial(Eigen::VectorXd coeffs) {
    Potential v;
    if (coeffs.size() == 0) coeffs = Eigen::VectorXd::Zero(1);
    v.c_ = std::move(coeffs);
    v.name_ = "polynomial";
    return v;
}

Potential Potential::zero() {
    Potential v = polynomial(Eigen::VectorXd::Zero(1));
    v.name_ = "zero";
    return v;
}

Potential Potential::custom(DerivativeFn fn, int d_max, std::string name) {
    Potential v;
    v.tag_ = PotentialTag::custom;
    v.fn_ = std::move(fn);
    v.d_max_ = d_max;
    v.name_ = std::move(name);
    return v;
}

int Potential::degree() const {
    if (!is_polynomial()) throw CapabilityError("degree: " + name_ + " is not a polynomial");
    for (Index j = c_.size() - 1; j > 0; --j)
        if (c_[j] != 0.0) return int(j);
    return 0;
}

double Potential::derivative(int order, double x) const {
    if (order < 0) throw DomainError("negative derivative order");
    if (!is_polynomial()) {
        if (order > d_max_)
            throw CapabilityError(name_ + ": derivative of order " + std::to_string(order) +
                                  " not available (d_max = " + std::to_string(d_max_) + ")");
        return fn_(order, x);
    }
    // Horner on the differentiated coefficients
    double acc = 0.0;
    for (Index j = c_.size() - 1; j >= order; --j) {
        double f = 1.0;
        for (Index r = 0; r < order; ++r) f *= double(j - r);
        acc = acc * x + c_[j] * f;
    }
    return acc;
}

Eigen::ArrayXd Potential::evaluate(const Eigen::ArrayXd& x) const {
    Eigen::ArrayXd out(x.size());
    for (Index i = 0; i < x.size(); ++i) out[i] = derivative(0, x[i]);
    return out;
}

void Potential::check_single_well() const {
    const double v0 = taylor_at_zero(0), v1 = taylor_at_zero(1), v2 = taylor_at_zero(2);
    if (std::abs(v0) > 1e-14 || std::abs(v1) > 1e-14 || !(v2 > 0.0))
        throw DomainError(name_ + ": single-well normalization V(0)=0, V'(0)=0, V''(0)>0 violated");
}

Potential Potential::scaled(double eps) const {
    if (!is_polynomial()) throw CapabilityError("scaled: " + name_ + " is not a polynomial");
    Potential v = *this;
    for (Index j = 0; j < c_.size(); ++j) v.c_[j] = c_[j] * std::pow(eps, 0.5 * double(j) - 1.0);
    v.tag_ = PotentialTag::polynomial;
    v.name_ = name_ + "-scaled";
    return v;
}

}  // namespace wigner
