#include "dirac2d/spinor.hpp"

#include <cmath>
#include <stdexcept>

namespace dirac2d {

namespace {
const cplx I(0.0, 1.0);
}

DiracMatrices::DiracMatrices() {
    gamma0 << 1, 0, 0, -1;
    gamma1 << 0, 1, -1, 0;
    gamma2 << 0, -I, -I, 0;
    beta = gamma0;
    alpha1 = gamma0 * gamma1;
    alpha2 = gamma0 * gamma2;
}

const DiracMatrices& dirac_matrices() {
    static const DiracMatrices m;
    return m;
}

Mat2 projection_symbol(double xi1, double xi2, int sign) {
    const DiracMatrices& d = dirac_matrices();
    double b = bracket_norm(std::hypot(xi1, xi2));
    Mat2 op = (xi1 * d.alpha1 + xi2 * d.alpha2 + d.beta) / b;
    double s = sign >= 0 ? 1.0 : -1.0;
    return 0.5 * (Mat2::Identity() - s * op);
}

double operator_norm_2x2(const Mat2& m) {
    double f2 = m.squaredNorm();
    double d = std::abs(m.determinant());
    double disc = f2 * f2 - 4.0 * d * d;
    if (disc < 0.0) disc = 0.0;
    return std::sqrt(0.5 * (f2 + std::sqrt(disc)));
}

SpinorField::SpinorField(ScalarField u, ScalarField d) : up(std::move(u)), down(std::move(d)) {
    if (!(up.grid() == down.grid()) || up.repr() != down.repr())
        throw std::invalid_argument("SpinorField: components must share grid and representation");
}

double l2_norm(const SpinorField& psi) {
    double a = l2_norm(psi.up), b = l2_norm(psi.down);
    return std::sqrt(a * a + b * b);
}

SpinorField apply_matrix_multiplier(const SpinorField& psi,
                                    const std::function<Mat2(double, double)>& symbol) {
    SpinorField hat = psi.to_frequency();
    int n = hat.up.n();
    const GridSpec& g = hat.grid();
    for (int i = 0; i < n; ++i) {
        double xi1 = g.freq(i);
        bool nyq_i = (g.mode(i) == -n / 2);
        for (int j = 0; j < n; ++j) {
            if (nyq_i || g.mode(j) == -n / 2) {
                hat.up.at(i, j) = 0.0;
                hat.down.at(i, j) = 0.0;
                continue;
            }
            Mat2 m = symbol(xi1, g.freq(j));
            Eigen::Vector2cd v(hat.up.at(i, j), hat.down.at(i, j));
            Eigen::Vector2cd w = m * v;
            hat.up.at(i, j) = w(0);
            hat.down.at(i, j) = w(1);
        }
    }
    return psi.repr() == Repr::frequency ? hat : hat.to_physical();
}

SpinorField apply_projection(const SpinorField& psi, int sign) {
    return apply_matrix_multiplier(
        psi, [sign](double x1, double x2) { return projection_symbol(x1, x2, sign); });
}

SpinorField half_wave_propagate(const SpinorField& psi, double t, int sign) {
    return {half_wave_propagate(psi.up, t, sign), half_wave_propagate(psi.down, t, sign)};
}

double operator_split_residual(const SpinorField& psi) {
    const DiracMatrices& d = dirac_matrices();
    // -i(alpha.grad + i beta) has symbol (alpha.xi + beta)
    SpinorField lhs = apply_matrix_multiplier(psi, [&d](double x1, double x2) {
        return Mat2(x1 * d.alpha1 + x2 * d.alpha2 + d.beta);
    });
    SpinorField rhs = apply_matrix_multiplier(psi, [](double x1, double x2) {
        double b = bracket_norm(std::hypot(x1, x2));
        return Mat2(b * (projection_symbol(x1, x2, -1) - projection_symbol(x1, x2, +1)));
    });
    double den = l2_norm(psi);
    return den > 0.0 ? l2_norm(lhs - rhs) / den : 0.0;
}

double beta_commutation_residual(double xi1, double xi2, int sign) {
    const DiracMatrices& d = dirac_matrices();
    double b = bracket_norm(std::hypot(xi1, xi2));
    double s = sign >= 0 ? 1.0 : -1.0;
    Mat2 lhs = projection_symbol(xi1, xi2, sign) * d.beta;
    Mat2 rhs = d.beta * (projection_symbol(xi1, xi2, -sign) - s * d.beta / b);
    return (lhs - rhs).norm();
}

NullFormGain null_form_gain(double xi1, double xi2, double eta1, double eta2,
                            int s1, int s2) {
    if ((xi1 == 0.0 && xi2 == 0.0) || (eta1 == 0.0 && eta2 == 0.0))
        throw std::invalid_argument("null_form_gain: zero input vector");
    Mat2 prod = projection_symbol(xi1, xi2, s1) * projection_symbol(eta1, eta2, s2);
    double ang = (s1 != s2) ? angle_between(xi1, xi2, eta1, eta2)
                            : angle_between(-xi1, -xi2, eta1, eta2);
    double bound = ang + 1.0 / bracket_norm(std::hypot(xi1, xi2)) +
                   1.0 / bracket_norm(std::hypot(eta1, eta2));
    return {operator_norm_2x2(prod), bound};
}

ScalarField soler_density(const SpinorField& psi) {
    if (psi.repr() != Repr::physical)
        throw std::invalid_argument("soler_density: physical representation required");
    ScalarField out(psi.grid(), Repr::physical);
    // beta = diag(1,-1): <psi, beta psi> = |psi_1|^2 - |psi_2|^2
    for (std::size_t i = 0; i < out.size(); ++i) {
        out.data()[i] = std::norm(psi.up.data()[i]) - std::norm(psi.down.data()[i]);
    }
    return out;
}

ScalarField dealias(const ScalarField& f) {
    const double radius = f.grid().dealias_radius();
    ScalarField out = apply_multiplier(f, [radius](double x1, double x2) {
        return std::hypot(x1, x2) <= radius ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
    });
    return out;
}

SpinorField dealias(const SpinorField& psi) { return {dealias(psi.up), dealias(psi.down)}; }

SpinorField nonlinearity(const SpinorField& psi) {
    ScalarField v = soler_density(psi);
    SpinorField out(psi.grid(), Repr::physical);
    // beta psi = (psi_1, -psi_2)
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.up.data()[i] = v.data()[i] * psi.up.data()[i];
        out.down.data()[i] = -v.data()[i] * psi.down.data()[i];
    }
    return dealias(out);
}

} // namespace dirac2d
