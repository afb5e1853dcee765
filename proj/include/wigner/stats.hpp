#pragma once

#include <Eigen/Dense>

#include <vector>

namespace wigner {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms_residual = 0.0;
};

// Least-squares line through (x_i, y_i).
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);
// Least-squares line through (log x_i, log |y_i|).
LineFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace wigner
