#include "dirac2d/majorize.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dirac2d/rng.hpp"

namespace dirac2d {

MajorizeReport frame_majorization_check(int k, const Cap& cap, int j, int r, long sample_count,
                                        std::uint64_t seed, double p2_ceiling,
                                        const DeskScale& scale) {
    if (k < scale.high_k)
        throw std::invalid_argument("frame_majorization_check: k below the high-frequency range");
    if (r < 1) throw std::invalid_argument("frame_majorization_check: r must be >= 1");

    double w1, w2;
    cap.center(w1, w2);
    FrameSet block = build_frame_subblock(k, w1, w2, r, j, scale);
    double lamj = scale.lambda_kj(k, j);
    Frame slice(lamj, w1, w2);

    MajorizeReport rep;
    rep.k = k;
    rep.j = j;
    rep.r = r;
    rep.cardinality = block.members.size();
    rep.points = sample_count;

    Philox rng(seed, 0x6d616a6f);
    double thresh_hyp = std::ldexp(1.0, -2 * k - 2);
    double thresh_p1 = std::ldexp(1.0, -k + 2);
    double rmax = std::ldexp(1.0, r) * 1.41421356237309515;

    for (long it = 0; it < sample_count; ++it) {
        // radius log-uniform over the horizon, sign random
        double R = std::exp(rng.uniform(0.0, std::log(rmax)));
        double mu;
        if (it % 2 == 0) {
            // stratum near the slice's cone, where the P1 hypothesis is live
            mu = lamj + rng.uniform(-0.9, 0.9) * std::ldexp(1.0, -2 * k - 1);
        } else {
            mu = rng.uniform(0.0, 1.0);
        }
        double t = (rng.uniform() < 0.5 ? -1.0 : 1.0) * R / std::sqrt(1.0 + mu * mu);
        double nu = rng.uniform(-1.0, 1.0) * std::ldexp(std::abs(t), -k);
        double x1 = -mu * t * w1 - nu * w2;
        double x2 = -mu * t * w2 + nu * w1;

        double norm2 = std::sqrt(t * t + x1 * x1 + x2 * x2);
        double t_slice = std::abs(frame_time(slice, t, x1, x2));

        if (t_slice <= thresh_hyp * norm2) {
            ++rep.p1_points;
            double best = std::numeric_limits<double>::infinity();
            for (const Frame& f : block.members)
                best = std::min(best, std::abs(frame_time(f, t, x1, x2)));
            rep.p1_worst = std::max(rep.p1_worst, best);
            if (best > thresh_p1) ++rep.p1_failures;
        } else {
            for (const Frame& f : block.members) {
                double ratio = std::abs(frame_time(f, t, x1, x2)) / t_slice;
                rep.p2_constant = std::max(rep.p2_constant, ratio);
            }
        }
    }

    rep.pass = rep.p1_failures == 0 && rep.p2_constant <= p2_ceiling && rep.p1_points > 0;
    return rep;
}

} // namespace dirac2d
