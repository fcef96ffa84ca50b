#pragma once

#include <complex>
#include <optional>

#include "dirac2d/frame.hpp"

namespace dirac2d {

enum class KernelVariant { lowfreq, dyadic, cap, cap_j };

// The half-wave kernels
//   K_{<=k}   = int e^{ix.xi + it<xi>} chi~_{<=k}^2 dxi            (lowfreq)
//   K_k       = int e^{ix.xi + it<xi>} chi~_k^2 dxi                (dyadic)
//   K_{k,ka}  = int e^{ix.xi + it<xi>} chi~_k^2 eta~_ka dxi        (cap)
//   K^j_{k,ka}= int e^{ix.xi + it<xi>} alpha_j chi~_k eta~_ka dxi  (cap_j)
// with alpha_j the radial slice of relative width 2^{-W} from the
// desk-scale map.
struct KernelSpec {
    KernelVariant variant = KernelVariant::dyadic;
    int k = 4;
    std::optional<Cap> cap;
    std::optional<int> j;
    DeskScale scale;

    void validate() const;
    // the frame whose time coordinate governs the cap_j decay
    Frame slice_frame() const;
    // the frame at (lambda(k), omega(kappa)) used by the transverse decay
    Frame cap_frame() const;
};

struct KernelValue {
    std::complex<double> value;
    double err_estimate;
};

// Numerical value by phase-adaptive Gauss-Legendre panels. The target
// absolute error is 1e-8 * 2^{2k} * tol_factor; non-convergence throws
// with the achieved estimate in the message.
KernelValue eval_kernel(const KernelSpec& spec, double t, double x1, double x2,
                        double tol_factor = 1.0);

// plain Riemann-sum evaluation on a fine lattice (slow; testing oracle)
std::complex<double> eval_kernel_riemann(const KernelSpec& spec, double t, double x1,
                                         double x2, int points_per_dim);

} // namespace dirac2d
