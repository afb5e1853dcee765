#include "wigner/stats.hpp"

#include "wigner/errors.hpp"

#include <cmath>

namespace wigner {

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw StatisticsError("fit_line: need at least two points");
    const Eigen::Index n = Eigen::Index(x.size());
    Eigen::MatrixXd A(n, 2);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        A(i, 0) = x[i];
        A(i, 1) = 1.0;
        b[i] = y[i];
    }
    const Eigen::Vector2d c = A.colPivHouseholderQr().solve(b);
    LineFit f{c[0], c[1], std::sqrt((A * c - b).squaredNorm() / double(n))};
    return f;
}

LineFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || y[i] == 0.0 || !std::isfinite(y[i]))
            throw StatisticsError("fit_loglog: non-positive or non-finite sample");
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(std::abs(y[i])));
    }
    return fit_line(lx, ly);
}

}  // namespace wigner
