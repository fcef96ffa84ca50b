#pragma once

#include <Eigen/Core>
#include <vector>

#include "dirac2d/cutoff.hpp"

namespace dirac2d {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// lambda(k) = (1 + 2^{-2k})^{-1/2}, the group speed at frequency 2^k
double lambda_k(int k);

// Orthonormal space-time frame attached to a speed/direction pair:
//   Theta      = (lambda, omega) / sqrt(1+lambda^2)
//   Theta_perp = (-1, lambda omega) / sqrt(1+lambda^2)
//   Theta_0    = (0, omega_perp)
struct Frame {
    double lambda = 1.0;
    double omega1 = 1.0, omega2 = 0.0;
    Vec3 theta, theta_perp, theta_0perp;
    Mat3 matrix; // columns [theta, theta_perp, theta_0perp]

    Frame() { init(); }
    Frame(double lam, double w1, double w2);
    Frame negated_direction() const { return Frame(lambda, -omega1, -omega2); }

private:
    void init();
};

// (t_Theta, x1_Theta, x2_Theta) = matrix^T (t, x1, x2); an isometry
Vec3 frame_coords(const Frame& frame, double t, double x1, double x2);
// Fourier-side coordinates use the same projections
Vec3 frame_freq_coords(const Frame& frame, double tau, double xi1, double xi2);
// the time coordinate alone, cheap form used in hot loops
double frame_time(const Frame& frame, double t, double x1, double x2);

enum class FrameKind { Lambda, Omega };

// Scale-shift knobs shared by the frame sets and the kernel lab. The
// construction is scale-structured; desk runs shrink the dyadic offsets
// the same way they shrink the frequency range.
struct DeskScale {
    int high_k = 4;          // first "high" dyadic level (paper: 100)
    int j_width_log2 = 6;    // annulus slice relative width 2^{-W} (paper: 2^{-20})
    int sep = 2;             // dyadic separation offset (paper: 10)

    int j_min() const { return slice_j_min(j_width_log2); }
    int j_max() const { return slice_j_max(j_width_log2); }
    // center of slice j in the rescaled radial variable s = 2^{-k}|xi|
    double slice_center(int j) const { return std::ldexp(static_cast<double>(j), -j_width_log2); }
    // group speed at the center of slice j of the annulus at level k
    double lambda_kj(int k, int j) const;
};

struct FrameSet {
    FrameKind kind = FrameKind::Lambda;
    int k = 0;
    double omega1 = 1.0, omega2 = 0.0;
    int r_param = 1;
    std::vector<Frame> members;
};

// Lambda_{k,omega} / Omega_{k,omega} per the three regimes: discretized
// speeds at low k, group-speed samples of the annulus at high k, a
// single frame once the horizon is shorter than the frequency scale.
FrameSet build_frame_set(FrameKind kind, int k, double omega1, double omega2, int r,
                         const DeskScale& scale = {});

// the j-th radial sub-block of Lambda_{k,kappa}
FrameSet build_frame_subblock(int k, double omega1, double omega2, int r, int j,
                              const DeskScale& scale = {});

// closed-form member counts implied by the construction
std::size_t frame_set_cardinality(FrameKind kind, int k, int r, const DeskScale& scale = {});
std::size_t frame_subblock_cardinality(int k, int r, const DeskScale& scale = {});

} // namespace dirac2d
