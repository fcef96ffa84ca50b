#pragma once

#include "dirac2d/frame.hpp"

namespace dirac2d {

struct MajorizeReport {
    int k = 0, j = 0, r = 0;
    std::size_t cardinality = 0;
    long points = 0;
    long p1_points = 0;       // points satisfying the P1 hypothesis
    long p1_failures = 0;     // P1 points with no frame time below 2^{-k+2}
    double p2_constant = 0.0; // max |t_Theta| / |t_{lambda_k^j}| over P2 points
    double p1_worst = 0.0;    // max over P1 points of min_Theta |t_Theta|
    bool pass = false;
};

// Exhaustive finite check of the two majorization properties behind the
// kernel domination: over sampled space-time points inside the
// propagation region,
//   P1: |t_{lambda_k^j,kappa}| <= 2^{-2k-2} |(t,x)|  implies some member
//       of Lambda^j_{k,kappa} has |t_Theta| <= 2^{-k+2};
//   P2: otherwise |t_Theta| <= C |t_{lambda_k^j,kappa}| for all members.
// Pure frame geometry; no kernel evaluation. Half the points are placed
// near the slice's own cone so the P1 hypothesis is actually exercised.
MajorizeReport frame_majorization_check(int k, const Cap& cap, int j, int r, long sample_count,
                                        std::uint64_t seed, double p2_ceiling = 8.0,
                                        const DeskScale& scale = {});

} // namespace dirac2d
