#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace dirac2d {

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
};

// ordinary least squares y = intercept + slope x
inline FitResult fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    std::size_t n = x.size();
    if (n != y.size() || n < 3) throw std::invalid_argument("fit_line: need >= 3 paired samples");
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
    FitResult r;
    r.slope = sxy / sxx;
    r.intercept = my - r.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double e = y[i] - (r.intercept + r.slope * x[i]);
        ss += e * e;
    }
    if (n > 2) r.slope_stderr = std::sqrt(ss / static_cast<double>(n - 2) / sxx);
    return r;
}

// max/min ratio of per-bin maxima across dyadic bins of the abscissa;
// the "stable within factor c" acceptance checks compare this to c
double dyadic_stability(const std::vector<double>& log2_bin_var,
                        const std::vector<double>& values);

} // namespace dirac2d
