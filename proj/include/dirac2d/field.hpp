#pragma once

#include <complex>
#include <vector>

#include "dirac2d/grid.hpp"

namespace dirac2d {

using cplx = std::complex<double>;

enum class Repr { physical, frequency };

// Complex samples on the periodic grid, in either representation.
// Frequency values follow the continuum convention
//   fhat(xi) = \int f(x) e^{-i x.xi} dx,
// discretized with x_j = -L + j dx, so a packet built directly in
// frequency space lands at the box center.
class ScalarField {
public:
    ScalarField() = default;
    ScalarField(const GridSpec& grid, Repr repr)
        : grid_(grid), repr_(repr),
          values_(static_cast<std::size_t>(grid.n_points) * grid.n_points) {}

    const GridSpec& grid() const { return grid_; }
    Repr repr() const { return repr_; }
    int n() const { return grid_.n_points; }
    std::size_t size() const { return values_.size(); }

    cplx* data() { return values_.data(); }
    const cplx* data() const { return values_.data(); }
    cplx& at(int i, int j) { return values_[static_cast<std::size_t>(i) * grid_.n_points + j]; }
    const cplx& at(int i, int j) const {
        return values_[static_cast<std::size_t>(i) * grid_.n_points + j];
    }

    ScalarField to_frequency() const;
    ScalarField to_physical() const;
    ScalarField in_repr(Repr r) const { return r == repr_ ? *this : (r == Repr::frequency ? to_frequency() : to_physical()); }

    ScalarField& operator+=(const ScalarField& o);
    ScalarField& operator-=(const ScalarField& o);
    ScalarField& operator*=(cplx c);
    friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
    friend ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
    friend ScalarField operator*(cplx c, ScalarField a) { return a *= c; }

private:
    GridSpec grid_;
    Repr repr_ = Repr::physical;
    std::vector<cplx> values_;
};

// in-place unnormalized 2D DFT; sign=-1 forward, +1 backward
void fft2d(cplx* data, int n, int sign);

} // namespace dirac2d
