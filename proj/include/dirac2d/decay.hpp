#pragma once

#include <string>
#include <vector>

#include "dirac2d/kernels.hpp"
#include "dirac2d/regression.hpp"

namespace dirac2d {

// Named decay bounds of the kernel lab. The N=1 transverse bounds are
// implied by the N=2 ones at the sampled points, so only the stronger
// member of each pair is wired to a harness.
enum class DecayBound { k99_1, k99_2, bigk_mid, bigk_far, ang1, ang3_n2, ang4_n2 };

std::string bound_name(DecayBound b);
// the decay exponent the regression must reproduce; for the rapid-decay
// bounds this is the N = 2 requirement (slope <= -1.9 passes)
double bound_exponent(DecayBound b);
bool bound_is_upper_exponent(DecayBound b); // true: slope <= exponent + tol passes

struct DecaySample {
    double t, x1, x2;
    double decay_var;  // the bound's abscissa, e.g. <t> or |x2_Theta|
    double observed;   // |K|
    double bound_value;
};

struct DecayReport {
    std::string bound;
    int k = 0;
    std::vector<DecaySample> samples;
    double fitted_constant = 0.0;
    FitResult exponent_regression;
    double stability = 0.0; // max/min of per-dyadic-bin fitted constants
    bool pass = false;
};

struct SamplerSpec {
    int count = 32;
    std::uint64_t seed = 1;
    double var_lo = 4.0;   // range of the decay variable
    double var_hi = 64.0;
};

// Points for one bound, inside its stated validity region. Placement
// keeps the phase rates low (on-cone in the non-decaying directions) so
// the quadrature cost stays desk-sized.
std::vector<DecaySample> sample_points(const KernelSpec& spec, DecayBound bound,
                                       const SamplerSpec& sampler);

// Evaluate |K| at the sampler's points, fit the decay exponent, fit the
// constant, and check dyadic stability of the constant.
DecayReport verify_decay(const KernelSpec& spec, DecayBound bound, const SamplerSpec& sampler);

} // namespace dirac2d
