#include "dirac2d/kernels.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "dirac2d/spectral.hpp"

namespace dirac2d {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Gauss-Legendre nodes/weights on [-1,1]
const double kGL12x[12] = {-0.9815606342467192, -0.9041172563704749, -0.7699026741943047,
                           -0.5873179542866175, -0.3678314989981802, -0.1252334085114689,
                           0.1252334085114689,  0.3678314989981802,  0.5873179542866175,
                           0.7699026741943047,  0.9041172563704749,  0.9815606342467192};
const double kGL12w[12] = {0.0471753363865118, 0.1069393259953184, 0.1600783285433462,
                           0.2031674267230659, 0.2334925365383548, 0.2491470458134028,
                           0.2491470458134028, 0.2334925365383548, 0.2031674267230659,
                           0.1600783285433462, 0.1069393259953184, 0.0471753363865118};
const double kGL6x[6] = {-0.9324695142031521, -0.6612093864662645, -0.2386191860831969,
                         0.2386191860831969,  0.6612093864662645,  0.9324695142031521};
const double kGL6w[6] = {0.1713244923791704, 0.3607615730481386, 0.4679139345726910,
                         0.4679139345726910, 0.3607615730481386, 0.1713244923791704};

using cplx = std::complex<double>;
using Integrand = std::function<cplx(double)>;
using RateFn = std::function<double(double)>; // local bound on |d phase/du|

struct PanelQuad {
    cplx value{0.0, 0.0};
    double err = 0.0;
    long evals = 0;
};

void integrate_panel(const Integrand& f, const RateFn& rate, double a, double b,
                     double abs_tol_density, int depth, PanelQuad& acc) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double r = std::max(rate(a), std::max(rate(mid), rate(b)));
    if (depth < 40 && (b - a) * r > 0.5 * kPi) {
        integrate_panel(f, rate, a, mid, abs_tol_density, depth + 1, acc);
        integrate_panel(f, rate, mid, b, abs_tol_density, depth + 1, acc);
        return;
    }
    cplx v12(0.0, 0.0), v6(0.0, 0.0);
    cplx fx[12];
    for (int i = 0; i < 12; ++i) {
        fx[i] = f(mid + half * kGL12x[i]);
        v12 += kGL12w[i] * fx[i];
    }
    for (int i = 0; i < 6; ++i) v6 += kGL6w[i] * f(mid + half * kGL6x[i]);
    acc.evals += 18;
    v12 *= half;
    v6 *= half;
    double err = std::abs(v12 - v6);
    if (depth < 40 && err > abs_tol_density * (b - a)) {
        integrate_panel(f, rate, a, mid, abs_tol_density, depth + 1, acc);
        integrate_panel(f, rate, mid, b, abs_tol_density, depth + 1, acc);
        return;
    }
    acc.value += v12;
    acc.err += err;
}

PanelQuad integrate_adaptive(const Integrand& f, const RateFn& rate, double a, double b,
                             double abs_tol, int initial_panels) {
    PanelQuad acc;
    double w = (b - a) / initial_panels;
    for (int p = 0; p < initial_panels; ++p)
        integrate_panel(f, rate, a + p * w, a + (p + 1) * w, abs_tol / (b - a), 0, acc);
    return acc;
}

// radial weight of each variant at radius r (cap variants exclude the
// angular factor, which the wedge integration supplies)
double radial_weight(const KernelSpec& spec, double r) {
    switch (spec.variant) {
        case KernelVariant::lowfreq: {
            double c = chi_tilde_leq_k(r, spec.k);
            return c * c;
        }
        case KernelVariant::dyadic: {
            double c = chi_tilde_k(r, spec.k);
            return c * c;
        }
        case KernelVariant::cap: {
            double c = chi_tilde_k(r, spec.k);
            return c * c;
        }
        case KernelVariant::cap_j: {
            double c = chi_tilde_k(r, spec.k);
            return alpha_slice(*spec.j, spec.scale.j_width_log2, std::ldexp(r, -spec.k)) * c;
        }
    }
    return 0.0;
}

void radial_support(const KernelSpec& spec, double& lo, double& hi) {
    if (spec.variant == KernelVariant::lowfreq) {
        lo = 0.0;
        hi = std::ldexp(1.0, spec.k + 2);
        return;
    }
    lo = std::ldexp(1.0, spec.k - 2);
    hi = std::ldexp(1.0, spec.k + 2);
    if (spec.variant == KernelVariant::cap_j) {
        double w = std::ldexp(1.0, -spec.scale.j_width_log2);
        lo = std::max(lo, std::ldexp((*spec.j - 1) * w, spec.k));
        hi = std::min(hi, std::ldexp((*spec.j + 1) * w, spec.k));
    }
}

} // namespace

void KernelSpec::validate() const {
    bool needs_cap = variant == KernelVariant::cap || variant == KernelVariant::cap_j;
    if (needs_cap != cap.has_value())
        throw std::invalid_argument("KernelSpec: cap required iff variant is cap or cap_j");
    if ((variant == KernelVariant::cap_j) != j.has_value())
        throw std::invalid_argument("KernelSpec: j required iff variant is cap_j");
    if (j && (*j < scale.j_min() || *j > scale.j_max()))
        throw std::invalid_argument("KernelSpec: slice index outside the desk j-window");
    if (k < 1 || k > 16)
        throw std::invalid_argument("KernelSpec: k outside desk-feasible range [1, 16]");
}

Frame KernelSpec::slice_frame() const {
    double c1, c2;
    cap->center(c1, c2);
    return Frame(scale.lambda_kj(k, *j), c1, c2);
}

Frame KernelSpec::cap_frame() const {
    double c1, c2;
    cap->center(c1, c2);
    return Frame(lambda_k(k), c1, c2);
}

KernelValue eval_kernel(const KernelSpec& spec, double t, double x1, double x2,
                        double tol_factor) {
    spec.validate();
    double tol = 1e-8 * std::ldexp(1.0, 2 * spec.k) * tol_factor;
    double lo, hi;
    radial_support(spec, lo, hi);
    if (hi <= lo) return {cplx(0.0, 0.0), 0.0};

    PanelQuad q;
    if (spec.variant == KernelVariant::lowfreq || spec.variant == KernelVariant::dyadic) {
        // radial cutoff: the angular integral is 2 pi J0(r |x|)
        double b = std::hypot(x1, x2);
        Integrand f = [&](double r) -> cplx {
            double w = radial_weight(spec, r);
            if (w == 0.0) return {0.0, 0.0};
            double phase = t * bracket_norm(r);
            double bessel = (b == 0.0) ? 1.0 : std::cyl_bessel_j(0.0, r * b);
            return 2.0 * kPi * r * w * bessel * cplx(std::cos(phase), std::sin(phase));
        };
        RateFn rate = [&](double r) {
            return std::abs(t) * r / bracket_norm(r) + b;
        };
        int init = std::max<int>(8, static_cast<int>((hi - lo) / std::max(1.0, hi / 16.0)));
        q = integrate_adaptive(f, rate, lo, hi, tol * 0.5, init);
    } else {
        // thin wedge: xi = rho omega + sigma omega_perp
        double w1, w2;
        spec.cap->center(w1, w2);
        double p1 = -w2, p2 = w1;
        int n_caps = Cap::count(spec.cap->level);
        double half_ang = 2.0 * kPi / n_caps; // eta~ support halfwidth
        double tan_a = std::tan(half_ang);

        double xo = x1 * w1 + x2 * w2;   // along the cap direction
        double xp = x1 * p1 + x2 * p2;   // across

        Integrand outer = [&](double sigma) -> cplx {
            // inner rho integral at fixed transverse sigma
            Integrand inner = [&](double rho) -> cplx {
                double r = std::hypot(rho, sigma);
                double w = radial_weight(spec, r);
                if (w == 0.0) return {0.0, 0.0};
                double ang = eta_tilde_cap(*spec.cap, rho * w1 + sigma * p1, rho * w2 + sigma * p2);
                if (ang == 0.0) return {0.0, 0.0};
                double phase = xo * rho + xp * sigma + t * bracket_norm(r);
                return w * ang * cplx(std::cos(phase), std::sin(phase));
            };
            RateFn rate_rho = [&](double rho) {
                double br = bracket_norm(std::hypot(rho, sigma));
                return std::abs(xo + t * rho / br);
            };
            PanelQuad iq = integrate_adaptive(inner, rate_rho, lo, hi, tol * 1e-3, 8);
            return iq.value;
        };
        RateFn rate_sigma = [&](double sigma) {
            double br = bracket_norm(std::hypot(lo, sigma));
            return std::abs(xp) + std::abs(t) * std::abs(sigma) / br + std::abs(t) / br;
        };
        double smax = hi * tan_a;
        q = integrate_adaptive(outer, rate_sigma, -smax, smax, tol * 0.5, 8);
        // the inner-integral error estimates are folded into the outer
        // GL12/GL6 comparison; keep a floor so the report is honest
        q.err = std::max(q.err, tol * 1e-3);
    }

    if (q.err > tol)
        throw std::runtime_error("eval_kernel: quadrature did not reach the target error " +
                                 std::to_string(tol) + "; achieved estimate " +
                                 std::to_string(q.err));
    return {q.value, q.err};
}

std::complex<double> eval_kernel_riemann(const KernelSpec& spec, double t, double x1, double x2,
                                         int points_per_dim) {
    spec.validate();
    double lo, hi;
    radial_support(spec, lo, hi);
    double box = hi;
    double h = 2.0 * box / points_per_dim;
    cplx acc(0.0, 0.0);
    double w1 = 1.0, w2 = 0.0;
    if (spec.cap) spec.cap->center(w1, w2);
    for (int i = 0; i < points_per_dim; ++i) {
        double a = -box + (i + 0.5) * h;
        for (int jj = 0; jj < points_per_dim; ++jj) {
            double b = -box + (jj + 0.5) * h;
            double r = std::hypot(a, b);
            double w = radial_weight(spec, r);
            if (w == 0.0) continue;
            if (spec.cap) {
                w *= eta_tilde_cap(*spec.cap, a, b);
                if (w == 0.0) continue;
            }
            double phase = x1 * a + x2 * b + t * bracket_norm(r);
            acc += w * cplx(std::cos(phase), std::sin(phase));
        }
    }
    return acc * (h * h);
}

} // namespace dirac2d
