#pragma once

#include <functional>
#include <optional>

#include "dirac2d/field.hpp"
#include "dirac2d/rng.hpp"

namespace dirac2d {

// <xi>_k = (2^{-2k} + |xi|^2)^{1/2}; without a dyadic scale the mass
// takes the place of 2^{-k} (default 1, the solver's normalization).
struct BracketSymbol {
    double mass = 1.0;
    std::optional<int> dyadic_scale;

    BracketSymbol() = default;
    explicit BracketSymbol(double m) : mass(m) {
        if (!(m > 0.0)) throw std::invalid_argument("BracketSymbol: mass must be positive");
    }
    static BracketSymbol at_scale(int k) {
        BracketSymbol s;
        s.dyadic_scale = k;
        return s;
    }
};

double bracket(double xi1, double xi2, const BracketSymbol& symbol = {});
inline double bracket_norm(double abs_xi) { return std::sqrt(1.0 + abs_xi * abs_xi); }

// Apply a pointwise Fourier multiplier. The output representation
// matches the input's. Non-finite symbol values are reported with the
// offending lattice point. Nyquist modes are zeroed.
ScalarField apply_multiplier(const ScalarField& f,
                             const std::function<cplx(double, double)>& symbol);

// e^{+-it<D>} f
ScalarField half_wave_propagate(const ScalarField& f, double t, int sign);

// Klein-Gordon solution from (u0, u1):
//   u(t) = (e^{it<D>} + e^{-it<D>})/2 u0 + (e^{it<D>} - e^{-it<D>})/(2i) <D>^{-1} u1
ScalarField kg_solve(const ScalarField& u0, const ScalarField& u1, double t);

// Riemann-sum L^q norm over the box; q = infinity is the max modulus.
// Requires physical representation.
double lebesgue_norm(const ScalarField& f, double q);

// frequency-side L^2 via Parseval (works in either representation)
double l2_norm(const ScalarField& f);

// seeded random field: iid complex Gaussian samples (physical repr)
ScalarField random_field(const GridSpec& grid, std::uint64_t stream);

// random field with frequency support in the annulus [2^{k-1}, 2^{k+1}]
// and optionally within angle <= width of direction dir
ScalarField random_annulus_field(const GridSpec& grid, int k, std::uint64_t stream,
                                 const double* dir = nullptr, double ang_width = 0.0);

// fraction of |f|^2 lying within `margin` (relative) of the box edge
double boundary_mass_fraction(const ScalarField& f, double margin = 0.05);

} // namespace dirac2d
