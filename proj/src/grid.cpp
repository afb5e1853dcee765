#include "wigner/grid.hpp"

#include "wigner/errors.hpp"

#include <cmath>
#include <string>

namespace wigner {

bool is_power_of_two(Index n) { return n > 0 && (n & (n - 1)) == 0; }

Index Axis::zero_index() const {
    if (!symmetric() || n % 2 != 0) return -1;
    return n / 2;
}

bool Axis::symmetric() const { return std::abs(min + max) <= 1e-12 * (std::abs(max) + 1.0); }

void PhaseGrid::validate() const {
    auto check_axis = [](const Axis& a, const char* name) {
        const std::string s(name);
        if (!is_power_of_two(a.n) || a.n < 8)
            throw ConfigurationError("grid." + s + ": point count " + std::to_string(a.n) +
                                     " must be a power of two >= 8");
        if (!(a.max > a.min)) throw ConfigurationError("grid." + s + ": max must exceed min");
    };
    check_axis(x, "x");
    check_axis(k, "k");
    if (!(eps > 0.0)) throw ConfigurationError("grid.eps: must be positive");
}

bool PhaseGrid::square_and_centred() const {
    return x.n == k.n && x.symmetric() && k.symmetric() &&
           std::abs(x.max - k.max) <= 1e-12 * std::abs(x.max);
}

PhaseGrid PhaseGrid::make(double x_min, double x_max, Index nx, double k_min, double k_max, Index nk,
                          double eps) {
    PhaseGrid g{{x_min, x_max, nx}, {k_min, k_max, nk}, eps};
    g.validate();
    return g;
}

PhaseGrid PhaseGrid::square(double L, Index n, double eps) { return make(-L, L, n, -L, L, n, eps); }

double ComplexField::boundary_level(Index width) const {
    const double peak = values.cwiseAbs().maxCoeff();
    if (peak == 0.0) return 0.0;
    width = std::min<Index>(width, values.size() / 2);
    const double edge = std::max(values.head(width).cwiseAbs().maxCoeff(),
                                 values.tail(width).cwiseAbs().maxCoeff());
    return edge / peak;
}

}  // namespace wigner
