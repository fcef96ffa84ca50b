#pragma once

#include <array>
#include <optional>
#include <string>

#include "dirac2d/trajectory.hpp"

namespace dirac2d {

struct RatioTrial {
    std::uint64_t seed = 0;
    double lhs = 0.0;
    double rhs_surrogate = 0.0;
    double ratio = 0.0;
};

struct RatioReport {
    std::vector<RatioTrial> trials;
    double max_ratio = 0.0;
    double median_ratio = 0.0;
    std::string dyadic_params;
    bool stable = true;          // filled by the sweep harnesses
    double parallel_term = 0.0;  // measured size of the subtracted sum (part iii)
};

// || <Pi_{s1} psi_1, beta Pi_{s2} psi_2> ||_{L^2(window x box)} on free
// waves of random localized data, against the data-L^2 surrogate
// 2^{min(k1,k2)/2} ||f_1|| ||f_2||. With cap_level set, the product is
// restricted to cap pairs at distance <= 2^{-l+1} of each other (signs
// flip the compared directions), exposing the 2^{-l/2} gain. With
// subtract_parallel, the sum over cap pairs at distance <= 2^{-k2+3} in
// K_{k2} is removed from the product and reported separately.
RatioReport bilinear_ratio(const GridSpec& grid, int k1, int k2,
                           std::optional<int> cap_level, int s1, int s2, int n_seeds,
                           bool subtract_parallel = false);

enum class TriMode { tri1, tri2 };

// Trilinear free-wave harnesses:
//   tri1: 2^{(1/p-1/2)k3} || <psi_1, beta psi_2> beta psi_3 ||_{L^p_t L^2_x}
//         vs 2^{(3/8-1/(2p))(k1-k2)} 2^{(1-1/p)(k2-k3)} prod 2^{k_j/2}||f_j||,
//         for 4/3 < p <= 2
//   tri2: || psi_1 <psi_2, beta psi_3> ||_{L^p_t L^1_x}
//         vs 2^{(1-1/p)k1} prod ||f_j||, for 2 <= p <= inf
RatioReport trilinear_ratio(const GridSpec& grid, int k1, int k2, int k3, double p,
                            std::array<int, 3> signs, int n_seeds, TriMode mode);

// || P_k u ||_{L^p_t L^q_x} / (2^{ks} ||f||_{L^2}) for free waves, with
// s = 1 - 2/q - 1/p (wave-admissible) or s = 1 - 2/q (Schroedinger)
RatioReport strichartz_ratio(const GridSpec& grid, int k, double p, double q,
                             bool wave_admissible, int n_seeds);

} // namespace dirac2d
