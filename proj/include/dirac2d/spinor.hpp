#pragma once

#include <Eigen/Core>

#include "dirac2d/spectral.hpp"

namespace dirac2d {

using Mat2 = Eigen::Matrix2cd;

// gamma^0 = diag(1,-1), gamma^1 = [[0,1],[-1,0]], gamma^2 = [[0,-i],[-i,0]];
// beta = gamma^0 and alpha^j = gamma^0 gamma^j satisfy the Clifford
// relations exactly in integer/imaginary-unit arithmetic.
struct DiracMatrices {
    Mat2 gamma0, gamma1, gamma2;
    Mat2 alpha1, alpha2, beta;
    DiracMatrices();
};

const DiracMatrices& dirac_matrices();

// Pi_{+-}(xi) = (1/2)[I -+ (xi.alpha + beta)/<xi>]
Mat2 projection_symbol(double xi1, double xi2, int sign);

// largest singular value of a 2x2 complex matrix, closed form
double operator_norm_2x2(const Mat2& m);

// Two-component field; both components share grid and representation.
struct SpinorField {
    ScalarField up, down;

    SpinorField() = default;
    SpinorField(const GridSpec& grid, Repr repr) : up(grid, repr), down(grid, repr) {}
    SpinorField(ScalarField u, ScalarField d);

    const GridSpec& grid() const { return up.grid(); }
    Repr repr() const { return up.repr(); }
    SpinorField to_frequency() const { return {up.to_frequency(), down.to_frequency()}; }
    SpinorField to_physical() const { return {up.to_physical(), down.to_physical()}; }

    SpinorField& operator+=(const SpinorField& o) { up += o.up; down += o.down; return *this; }
    SpinorField& operator-=(const SpinorField& o) { up -= o.up; down -= o.down; return *this; }
    SpinorField& operator*=(cplx c) { up *= c; down *= c; return *this; }
    friend SpinorField operator+(SpinorField a, const SpinorField& b) { return a += b; }
    friend SpinorField operator-(SpinorField a, const SpinorField& b) { return a -= b; }
    friend SpinorField operator*(cplx c, SpinorField a) { return a *= c; }
};

double l2_norm(const SpinorField& psi);

// frequency-pointwise application of a 2x2 matrix symbol
SpinorField apply_matrix_multiplier(const SpinorField& psi,
                                    const std::function<Mat2(double, double)>& symbol);

// psi_{+-} = Pi_{+-}(D) psi
SpinorField apply_projection(const SpinorField& psi, int sign);

// e^{+-it<D>} componentwise
SpinorField half_wave_propagate(const SpinorField& psi, double t, int sign);

// relative L^2 residual of -i(alpha.grad + i beta) psi = <D>(Pi_- - Pi_+) psi
double operator_split_residual(const SpinorField& psi);

// Frobenius norm of Pi_{+-}(xi) beta - beta (Pi_{-+}(xi) -+ beta/<xi>)
double beta_commutation_residual(double xi1, double xi2, int sign);

struct NullFormGain {
    double observed; // operator norm of the projection product
    double bound;    // angle + <xi>^{-1} + <eta>^{-1}
};

// Null-structure size of Pi_{s1}(xi) Pi_{s2}(eta). Mixed signs pair with
// the angle between xi and eta, equal signs with the angle between -xi
// and eta.
NullFormGain null_form_gain(double xi1, double xi2, double eta1, double eta2,
                            int s1, int s2);

// <psi, beta psi> beta psi, computed pointwise in physical space and
// dealiased by the 2/3-rule truncation afterwards
SpinorField nonlinearity(const SpinorField& psi);

// the scalar factor <psi, beta psi> (real up to roundoff)
ScalarField soler_density(const SpinorField& psi);

// 2/3-rule spectral truncation
ScalarField dealias(const ScalarField& f);
SpinorField dealias(const SpinorField& psi);

} // namespace dirac2d
