#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dirac2d {

// Periodic box [-L,L)^2 sampled on an n x n lattice. The frequency
// lattice is (pi/L)Z^2 with signed mode numbers in [-n/2, n/2); the
// asymmetric Nyquist row/column is zeroed by every multiplier.
struct GridSpec {
    int n_points = 128;
    double half_width = 16.0 * 3.14159265358979323846;
    double dt = 1e-3;
    double t_max = 8.0;
    int r_param = 4;            // frame sets are useful up to time 2^r
    std::uint64_t seed = 0;

    void validate() const;

    double dx() const { return 2.0 * half_width / n_points; }
    double dxi() const { return 3.14159265358979323846 / half_width; }
    // largest |xi| kept by the 2/3 dealiasing rule
    double dealias_radius() const {
        return (2.0 / 3.0) * dxi() * (n_points / 2);
    }
    // dyadic levels whose annulus [2^{k-1}, 2^{k+1}] fits on the lattice
    int k_min() const;
    int k_max() const;

    // signed mode number of row/column index i
    int mode(int i) const { return i < n_points / 2 ? i : i - n_points; }
    double freq(int i) const { return dxi() * mode(i); }

    bool operator==(const GridSpec&) const = default;
};

// helper shared by constructors and the config parser
inline bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

} // namespace dirac2d
