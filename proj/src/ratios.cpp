#include "dirac2d/ratios.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dirac2d/cutoff.hpp"
#include "dirac2d/norms.hpp"
#include "dirac2d/parallel.hpp"
#include "dirac2d/solver.hpp"

namespace dirac2d {

namespace {

constexpr double kPi = 3.14159265358979323846;

void finish(RatioReport& rep) {
    std::vector<double> r;
    for (const auto& t : rep.trials) r.push_back(t.ratio);
    if (r.empty()) return;
    std::sort(r.begin(), r.end());
    rep.max_ratio = r.back();
    rep.median_ratio = r[r.size() / 2];
}

// free wave of Pi_s-projected unit-L^2 annulus data, as stored frames
std::vector<SpinorField> free_frames(const GridSpec& grid, int k, int sign,
                                     std::uint64_t stream, long n_frames, double step,
                                     double& data_l2) {
    SpinorField data(random_annulus_field(grid, k, stream),
                     random_annulus_field(grid, k, stream + 0x517cc1b7));
    data = apply_projection(data, sign);
    data_l2 = l2_norm(data);
    if (data_l2 == 0.0) throw std::runtime_error("free_frames: degenerate draw");
    data *= 1.0 / data_l2;
    data_l2 = 1.0;
    std::vector<SpinorField> out;
    out.reserve(n_frames);
    for (long i = 0; i < n_frames; ++i)
        out.push_back(half_wave_propagate(data, step * static_cast<double>(i), sign));
    return out;
}

// <a, beta b> pointwise (beta = diag(1,-1))
ScalarField beta_pairing(const SpinorField& a, const SpinorField& b) {
    SpinorField pa = a.to_physical(), pb = b.to_physical();
    ScalarField out(pa.grid(), Repr::physical);
    for (std::size_t i = 0; i < out.size(); ++i)
        out.data()[i] = std::conj(pa.up.data()[i]) * pb.up.data()[i] -
                        std::conj(pa.down.data()[i]) * pb.down.data()[i];
    return out;
}

// multiplier restriction of a spinor to one angular cap (eta tilde)
SpinorField cap_restrict(const SpinorField& f, const Cap& cap) {
    return apply_matrix_multiplier(f, [&cap](double x1, double x2) {
        return Mat2(eta_tilde_cap(cap, x1, x2) * Mat2::Identity());
    });
}

double angdist(double a, double b) {
    double d = std::fmod(std::abs(a - b), 2.0 * kPi);
    return std::min(d, 2.0 * kPi - d);
}

} // namespace

RatioReport bilinear_ratio(const GridSpec& grid, int k1, int k2,
                           std::optional<int> cap_level, int s1, int s2, int n_seeds,
                           bool subtract_parallel) {
    grid.validate();
    if (n_seeds < 1) throw std::invalid_argument("bilinear_ratio: need n_seeds >= 1");
    double step = std::max(grid.dt, grid.t_max / 32.0);
    long n_frames = static_cast<long>(std::llround(grid.t_max / step)) + 1;

    RatioReport rep;
    rep.dyadic_params = "{\"k1\":" + std::to_string(k1) + ",\"k2\":" + std::to_string(k2) +
                        (cap_level ? ",\"l\":" + std::to_string(*cap_level) : "") +
                        ",\"s1\":" + std::to_string(s1) + ",\"s2\":" + std::to_string(s2) + "}";
    rep.trials.resize(n_seeds);
    std::vector<double> par_terms(n_seeds, 0.0);

    parallel_for(n_seeds, [&](std::int64_t trial) {
        std::uint64_t stream = grid.seed + 1000 * static_cast<std::uint64_t>(trial);
        double l2a, l2b;
        auto psi1 = free_frames(grid, k1, s1, stream, n_frames, step, l2a);
        auto psi2 = free_frames(grid, k2, s2, stream + 7, n_frames, step, l2b);

        double acc = 0.0, acc_par = 0.0;
        for (long fi = 0; fi < n_frames; ++fi) {
            ScalarField prod(grid, Repr::physical);
            if (!cap_level) {
                prod = beta_pairing(psi1[fi], psi2[fi]);
            } else {
                // sum over cap pairs at comparable separation ~ 2^{-l}
                int l = *cap_level;
                int nc = Cap::count(l);
                double wind = std::ldexp(2.0, -l);
                for (int ic = 0; ic < nc; ++ic) {
                    Cap c1(l, ic);
                    SpinorField p1 = cap_restrict(psi1[fi], c1);
                    SpinorField partner(grid, Repr::frequency);
                    bool has = false;
                    for (int jc = 0; jc < nc; ++jc) {
                        Cap c2(l, jc);
                        double a1 = c1.center_angle() + (s1 > 0 ? 0.0 : kPi);
                        double a2 = c2.center_angle() + (s2 > 0 ? 0.0 : kPi);
                        if (angdist(a1, a2) > wind) continue;
                        partner += cap_restrict(psi2[fi].to_frequency(), c2);
                        has = true;
                    }
                    if (!has) continue;
                    prod += beta_pairing(p1, partner);
                }
            }
            if (subtract_parallel) {
                int l = k2;
                int nc = Cap::count(l);
                double wind = std::ldexp(8.0, -k2);
                ScalarField par(grid, Repr::physical);
                for (int ic = 0; ic < nc; ++ic) {
                    Cap c1(l, ic);
                    SpinorField p1 = cap_restrict(psi1[fi], c1);
                    if (l2_norm(p1) == 0.0) continue;
                    SpinorField partner(grid, Repr::frequency);
                    bool has = false;
                    for (int jc = 0; jc < nc; ++jc) {
                        Cap c2(l, jc);
                        double a1 = c1.center_angle() + (s1 > 0 ? 0.0 : kPi);
                        double a2 = c2.center_angle() + (s2 > 0 ? 0.0 : kPi);
                        if (angdist(a1, a2) > wind) continue;
                        partner += cap_restrict(psi2[fi].to_frequency(), c2);
                        has = true;
                    }
                    if (!has) continue;
                    par += beta_pairing(p1, partner);
                }
                double pn = lebesgue_norm(par, 2.0);
                acc_par += pn * pn * step;
                prod -= par;
            }
            double nn = lebesgue_norm(prod, 2.0);
            acc += nn * nn * step;
        }
        RatioTrial t;
        t.seed = stream;
        t.lhs = std::sqrt(acc);
        t.rhs_surrogate = std::ldexp(1.0, 0) * std::pow(2.0, 0.5 * std::min(k1, k2)) * l2a * l2b;
        t.ratio = t.lhs / t.rhs_surrogate;
        rep.trials[trial] = t;
        par_terms[trial] = std::sqrt(acc_par);
    });
    for (double p : par_terms) rep.parallel_term = std::max(rep.parallel_term, p);
    finish(rep);
    return rep;
}

RatioReport trilinear_ratio(const GridSpec& grid, int k1, int k2, int k3, double p,
                            std::array<int, 3> signs, int n_seeds, TriMode mode) {
    grid.validate();
    if (!(k1 <= k2 && k2 <= k3))
        throw std::invalid_argument("trilinear_ratio: need k1 <= k2 <= k3");
    if (mode == TriMode::tri1 && !(p > 4.0 / 3.0 && p <= 2.0))
        throw std::invalid_argument("trilinear_ratio: tri1 requires 4/3 < p <= 2");
    if (mode == TriMode::tri2 && !(p >= 2.0))
        throw std::invalid_argument("trilinear_ratio: tri2 requires 2 <= p <= inf");

    double step = std::max(grid.dt, grid.t_max / 32.0);
    long n_frames = static_cast<long>(std::llround(grid.t_max / step)) + 1;

    RatioReport rep;
    rep.dyadic_params = "{\"k1\":" + std::to_string(k1) + ",\"k2\":" + std::to_string(k2) +
                        ",\"k3\":" + std::to_string(k3) + ",\"p\":" + std::to_string(p) +
                        ",\"mode\":\"" + (mode == TriMode::tri1 ? "tri1" : "tri2") + "\"}";
    rep.trials.resize(n_seeds);

    parallel_for(n_seeds, [&](std::int64_t trial) {
        std::uint64_t stream = grid.seed + 2000 * static_cast<std::uint64_t>(trial);
        double l21, l22, l23;
        auto psi1 = free_frames(grid, k1, signs[0], stream, n_frames, step, l21);
        auto psi2 = free_frames(grid, k2, signs[1], stream + 11, n_frames, step, l22);
        auto psi3 = free_frames(grid, k3, signs[2], stream + 23, n_frames, step, l23);

        double outer = 0.0, sup = 0.0;
        for (long fi = 0; fi < n_frames; ++fi) {
            double inner;
            if (mode == TriMode::tri1) {
                // | <psi1, beta psi2> | |psi3| in L^2_x
                ScalarField pair = beta_pairing(psi1[fi], psi2[fi]);
                SpinorField p3 = psi3[fi].to_physical();
                double acc = 0.0;
                for (std::size_t i = 0; i < pair.size(); ++i) {
                    double m3 = std::norm(p3.up.data()[i]) + std::norm(p3.down.data()[i]);
                    acc += std::norm(pair.data()[i]) * m3;
                }
                inner = std::sqrt(acc * grid.dx() * grid.dx());
            } else {
                // |psi1| | <psi2, beta psi3> | in L^1_x
                ScalarField pair = beta_pairing(psi2[fi], psi3[fi]);
                SpinorField p1 = psi1[fi].to_physical();
                double acc = 0.0;
                for (std::size_t i = 0; i < pair.size(); ++i) {
                    double m1 = std::sqrt(std::norm(p1.up.data()[i]) +
                                          std::norm(p1.down.data()[i]));
                    acc += std::abs(pair.data()[i]) * m1;
                }
                inner = acc * grid.dx() * grid.dx();
            }
            if (std::isinf(p))
                sup = std::max(sup, inner);
            else
                outer += std::pow(inner, p) * step;
        }
        double lp = std::isinf(p) ? sup : std::pow(outer, 1.0 / p);

        RatioTrial t;
        t.seed = stream;
        if (mode == TriMode::tri1) {
            t.lhs = std::pow(2.0, (1.0 / p - 0.5) * k3) * lp;
            t.rhs_surrogate = std::pow(2.0, (3.0 / 8.0 - 1.0 / (2.0 * p)) * (k1 - k2)) *
                              std::pow(2.0, (1.0 - 1.0 / p) * (k2 - k3)) *
                              std::pow(2.0, 0.5 * (k1 + k2 + k3)) * l21 * l22 * l23;
        } else {
            t.lhs = lp;
            t.rhs_surrogate = std::pow(2.0, (1.0 - 1.0 / p) * k1) * l21 * l22 * l23;
        }
        t.ratio = t.lhs / t.rhs_surrogate;
        rep.trials[trial] = t;
    });
    finish(rep);
    return rep;
}

RatioReport strichartz_ratio(const GridSpec& grid, int k, double p, double q,
                             bool wave_admissible, int n_seeds) {
    grid.validate();
    if (wave_admissible) {
        if (2.0 / p + 1.0 / q > 0.5 + 1e-12)
            throw std::invalid_argument("strichartz_ratio: (p,q) is not wave-admissible");
    } else {
        if (std::abs(1.0 / p + 1.0 / q - 0.5) > 1e-12)
            throw std::invalid_argument("strichartz_ratio: (p,q) is not Schroedinger-admissible");
    }
    double s = wave_admissible ? 1.0 - 2.0 / q - 1.0 / p : 1.0 - 2.0 / q;
    double step = std::max(grid.dt, grid.t_max / 48.0);
    long n_frames = static_cast<long>(std::llround(grid.t_max / step)) + 1;

    RatioReport rep;
    rep.dyadic_params = "{\"k\":" + std::to_string(k) + ",\"p\":" + std::to_string(p) +
                        ",\"q\":" + std::to_string(q) + ",\"s\":" + std::to_string(s) + "}";
    rep.trials.resize(n_seeds);
    parallel_for(n_seeds, [&](std::int64_t trial) {
        std::uint64_t stream = grid.seed + 3000 * static_cast<std::uint64_t>(trial);
        double l2;
        auto frames = free_frames(grid, k, +1, stream, n_frames, step, l2);
        Trajectory traj;
        traj.grid = grid;
        for (long i = 0; i < n_frames; ++i) {
            traj.times.push_back(step * static_cast<double>(i));
            traj.states.push_back(frames[i].to_physical());
        }
        RatioTrial t;
        t.seed = stream;
        t.lhs = mixed_norm(traj, p, q);
        t.rhs_surrogate = std::pow(2.0, s * k) * l2;
        t.ratio = t.lhs / t.rhs_surrogate;
        rep.trials[trial] = t;
    });
    finish(rep);
    return rep;
}

} // namespace dirac2d
