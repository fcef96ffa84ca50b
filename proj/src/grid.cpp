#include "dirac2d/grid.hpp"

#include <cmath>

namespace dirac2d {

void GridSpec::validate() const {
    if (n_points < 8 || !is_pow2(n_points))
        throw std::invalid_argument("GridSpec: n_points must be a power of two >= 8, got " +
                                    std::to_string(n_points));
    if (!(half_width > 0.0))
        throw std::invalid_argument("GridSpec: half_width must be positive");
    if (!(dt > 0.0))
        throw std::invalid_argument("GridSpec: dt must be positive");
    if (!(t_max > 0.0))
        throw std::invalid_argument("GridSpec: t_max must be positive");
    if (t_max > std::ldexp(1.0, r_param))
        throw std::invalid_argument("GridSpec: t_max exceeds 2^r_param; the frame construction "
                                    "is useful only up to time 2^r");
}

int GridSpec::k_min() const {
    // smallest k whose annulus contains a lattice point: 2^{k+1} >= dxi
    return static_cast<int>(std::ceil(std::log2(dxi()))) - 1;
}

int GridSpec::k_max() const {
    // 2^{k+1} <= dealias radius keeps the annulus inside the kept modes
    return static_cast<int>(std::floor(std::log2(dealias_radius()))) - 1;
}

} // namespace dirac2d
