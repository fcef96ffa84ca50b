#pragma once

#include "dirac2d/trajectory.hpp"

namespace dirac2d {

enum class Integrator { duhamel_picard, strang_split };

struct SolveConfig {
    double epsilon = 0.05;  // data size in H^{1/2}
    double t_max = 4.0;
    int picard_depth = 8;
    double contraction_tol = 1e-10;
    Integrator integrator = Integrator::strang_split;
    double store_step = 0.05; // trajectory sampling interval
    void validate() const;
};

// H^{1/2} norm via the multiplier <xi>^{1/2} and Parseval
double sobolev_half_norm(const SpinorField& psi);

// right side of the split system: (-Pi_+ N(psi), -Pi_- N(psi)) with
// psi = psi_+ + psi_- and N the dealiased cubic term. Inputs must
// satisfy psi_s = Pi_s psi_s up to 1e-10, else this throws with the
// measured defect.
std::pair<SpinorField, SpinorField> rhs_projected(const SpinorField& psi_plus,
                                                  const SpinorField& psi_minus);

struct PicardResult {
    Trajectory traj;                        // psi = psi_+ + psi_- per frame
    std::vector<Trajectory> split;          // [0]: psi_+, [1]: psi_-
    std::vector<double> contraction;        // sup-in-time H^{1/2} differences
    int iterations = 0;
};

// Duhamel fixed point: psi^{(n+1)} = free flow + trapezoidal Duhamel
// integral of the projected nonlinearity along the previous iterate.
PicardResult picard_iterate(const SpinorField& plus_data, const SpinorField& minus_data,
                            const SolveConfig& config);

// Strang splitting for the unprojected form: half linear flow, exact
// pointwise nonlinear rotation, half linear flow. The evolution aborts
// if any norm exceeds 1e3 times its initial size.
Trajectory evolve(const SpinorField& plus_data, const SpinorField& minus_data,
                  const SolveConfig& config);
// same stepping, run backwards from the final state (reversal checks)
SpinorField strang_step(const SpinorField& psi, double dt);

double charge(const SpinorField& psi);

struct ScatteringProfile {
    std::vector<SpinorField> profiles;     // e^{-+ i t_n <D>} psi_{+-}(t_n)
    std::vector<double> cauchy_increments; // H^{1/2} distance of consecutive profiles
    double total_variation = 0.0;
    double tail_fraction = 0.0;            // share of the second half-window
};

// Interaction-picture pullback of one component of a trajectory. The
// component is extracted with Pi_{+-} per frame.
ScatteringProfile scattering_profile(const Trajectory& traj, int sign);

struct CubicScalingResult {
    std::vector<double> epsilons;
    std::vector<double> deviations; // sup_t ||psi - psi_free||_{H^{1/2}}
    double slope = 0.0;
    double slope_stderr = 0.0;
    double intercept = 0.0;
};

// Regression of the nonlinear deviation against the data size; the
// leading Duhamel term is cubic, so the slope must sit near 3.
CubicScalingResult cubic_scaling_check(const std::vector<double>& epsilons,
                                       const GridSpec& grid, const SolveConfig& base,
                                       int data_k, std::uint64_t stream, int data_sign = +1);

// Frequency-localized random data: complex Gaussian coefficients on the
// annulus at level k, optionally enveloped in space by a Gaussian of
// width sigma_x (for dispersion experiments), projected by Pi_sign and
// normalized to eps in H^{1/2}.
SpinorField random_data(const GridSpec& grid, int k, double eps, int sign,
                        std::uint64_t stream, double sigma_x = 0.0);

} // namespace dirac2d
