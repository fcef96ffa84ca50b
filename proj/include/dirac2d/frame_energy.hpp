#pragma once

#include "dirac2d/charsurf.hpp"
#include "dirac2d/trajectory.hpp"

namespace dirac2d {

enum class MixedKind { L2t_Linfx, L2x2_Linf_tx1, Linft_L2x, Linfx2_L2tx1 };

// Interpolating view of a trajectory: time-linear between stored frames,
// bicubic in space on a 2x spectrally upsampled copy. Fields are band
// limited, so the upsampled bicubic error sits well under the 5%
// tolerances the harnesses use.
class FieldSampler {
public:
    explicit FieldSampler(const Trajectory& traj);
    // |psi|^2 at (t, x); returns false if t lies outside the window
    bool sample_sq(double t, double x1, double x2, double& out) const;
    const Trajectory& traj() const { return *traj_; }

private:
    const Trajectory* traj_;
    std::vector<ScalarField> up_, down_; // upsampled physical frames
    double t0_, t1_, step_;
    int n_up_;
};

// Mixed norm in the tilted frame coordinates: bin the space-time window
// into slabs of one stored time step along the slab axis (t_Theta or
// x2_Theta), compute the inner norm on a transverse grid per slab, and
// reduce across slabs.
double frame_mixed_norm(const Trajectory& traj, const Frame& frame, MixedKind kind);

// Constructive upper bound for the infimum norm over decompositions
// indexed by a frame set: every resample point is assigned to the member
// whose kernel majorizer dominates there (the member minimizing
// |t_Theta|), each member's piece gets its own frame norm, and the sum
// is returned.
double sum_frame_norm_upper(const Trajectory& traj, const FrameSet& set, MixedKind kind);

enum class EnergyKind { dh, dh2 };

struct EnergyConfig {
    int k = 4;          // data lives in A_{k,kappa}
    int j = 4;          // frame speed from Lambda_{j,omega}
    int l = 1;          // cap level
    int cap_index = 0;
    double alpha_mult = 1.0; // alpha = alpha_mult 2^{-l}
    EnergyKind kind = EnergyKind::dh;
    GridSpec grid;
    int r = 4;
    std::uint64_t stream = 1;
    DeskScale scale;
};

struct EnergyReport {
    double ratio = 0.0;
    double alpha = 0.0;
    double alpha_tilde = 0.0;
    double mixed_norm = 0.0;
    double data_l2 = 0.0;
};

// Ratio ||e^{it<D>}f||_{frame mixed} / ||f||_{L^2} for cap-localized
// random data, after validating the configuration against the energy
// estimate's stated ranges (desk separation offsets). Out-of-range
// configurations throw, naming the violated condition.
EnergyReport frame_energy_ratio(const EnergyConfig& cfg);

} // namespace dirac2d
