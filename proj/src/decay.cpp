#include "dirac2d/decay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "dirac2d/parallel.hpp"
#include "dirac2d/rng.hpp"
#include "dirac2d/spectral.hpp"

namespace dirac2d {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::string bound_name(DecayBound b) {
    switch (b) {
        case DecayBound::k99_1: return "k99-1";
        case DecayBound::k99_2: return "k99-2";
        case DecayBound::bigk_mid: return "bigk-mid";
        case DecayBound::bigk_far: return "bigk-far";
        case DecayBound::ang1: return "ang1";
        case DecayBound::ang3_n2: return "ang3-N2";
        case DecayBound::ang4_n2: return "ang4-N2";
    }
    return "?";
}

double bound_exponent(DecayBound b) {
    switch (b) {
        case DecayBound::k99_1: return -1.0;
        case DecayBound::k99_2: return -2.0;
        case DecayBound::bigk_mid: return -0.5;
        case DecayBound::bigk_far: return -1.0;
        case DecayBound::ang1: return -1.0;
        case DecayBound::ang3_n2: return -2.0;
        case DecayBound::ang4_n2: return -2.0;
    }
    return 0.0;
}

bool bound_is_upper_exponent(DecayBound b) {
    // the rapid-decay bounds hold for every N, so the measured slope may
    // legitimately be steeper than -2; only "at least this fast" is checked
    return b == DecayBound::k99_2 || b == DecayBound::ang3_n2 || b == DecayBound::ang4_n2;
}

namespace {

double bound_value_at(const KernelSpec& spec, DecayBound bound, double var) {
    double p2k = std::ldexp(1.0, spec.k);
    switch (bound) {
        case DecayBound::k99_1: return 1.0 / var;
        case DecayBound::k99_2: return 1.0 / (var * var);
        case DecayBound::bigk_mid:
        case DecayBound::bigk_far: {
            double v = p2k * p2k / std::sqrt(var);
            return v * std::min(1.0, p2k / std::sqrt(var));
        }
        case DecayBound::ang1: return p2k / var;
        case DecayBound::ang3_n2:
        case DecayBound::ang4_n2: return p2k / (var * var);
    }
    return 1.0;
}

bool in_region(const KernelSpec& spec, DecayBound bound, double t, double x1, double x2) {
    double R = std::sqrt(t * t + x1 * x1 + x2 * x2);
    switch (bound) {
        case DecayBound::k99_2:
            return std::hypot(x1, x2) >=
                   std::abs(t) / std::sqrt(1.0 + std::ldexp(1.0, -2 * spec.k - 4));
        case DecayBound::ang3_n2: {
            Frame f = spec.cap_frame();
            double x2t = frame_coords(f, t, x1, x2)(2);
            // transverse region: twice the cap aperture, as in the paper
            int cap_off = spec.cap->level - spec.k;
            return std::abs(x2t) >= std::ldexp(R, -spec.k - cap_off + 1);
        }
        case DecayBound::ang4_n2: {
            Frame f = spec.slice_frame();
            double tt = frame_time(f, t, x1, x2);
            // deviation of the group speed over the slice plus the angular
            // spread of the cap, doubled and padded
            double s = spec.scale.slice_center(*spec.j);
            double dev_v = std::ldexp(1.0, -2 * spec.k - spec.scale.j_width_log2 + 1) /
                           (s * s * s);
            double capw = 0.75 * 2.0 * kPi / Cap::count(spec.cap->level);
            double dev_a = 0.5 * capw * capw;
            return std::abs(tt) >= 8.0 * (dev_v + dev_a) * std::abs(t);
        }
        default: return true;
    }
}

} // namespace

std::vector<DecaySample> sample_points(const KernelSpec& spec, DecayBound bound,
                                       const SamplerSpec& sampler) {
    spec.validate();
    Philox rng(sampler.seed, 0x6b65726e);
    std::vector<DecaySample> pts;
    pts.reserve(sampler.count);
    double llo = std::log(sampler.var_lo), lhi = std::log(sampler.var_hi);

    double w1 = 1.0, w2 = 0.0;
    if (spec.cap) spec.cap->center(w1, w2);
    double lam = lambda_k(spec.k);

    for (int i = 0; i < sampler.count; ++i) {
        double var = std::exp(rng.uniform(llo, lhi));
        DecaySample s{};
        s.decay_var = var;
        switch (bound) {
            case DecayBound::k99_1: {
                // <t> = var on the time axis
                s.t = std::sqrt(var * var - 1.0);
                s.x1 = s.x2 = 0.0;
                break;
            }
            case DecayBound::k99_2: {
                // <x> = var, far outside the propagation cone
                double r = std::sqrt(var * var - 1.0);
                double a = rng.uniform(0.0, 2.0 * kPi);
                s.t = rng.uniform(0.5, 1.0);
                s.x1 = r * std::cos(a);
                s.x2 = r * std::sin(a);
                break;
            }
            case DecayBound::bigk_mid:
            case DecayBound::bigk_far: {
                // 1 + 2^k R = var along the propagation cone
                double R = std::ldexp(var - 1.0, -spec.k);
                double a = rng.uniform(0.0, 2.0 * kPi);
                double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
                double t0 = sign * R / std::sqrt(1.0 + lam * lam);
                s.t = t0;
                s.x1 = -lam * t0 * std::cos(a);
                s.x2 = -lam * t0 * std::sin(a);
                break;
            }
            case DecayBound::ang1: {
                // 1 + 2^{-k} R = var on the cap's own cone
                double R = std::ldexp(var - 1.0, spec.k);
                double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
                double t0 = sign * R / std::sqrt(1.0 + lam * lam);
                s.t = t0;
                s.x1 = -lam * t0 * w1;
                s.x2 = -lam * t0 * w2;
                break;
            }
            case DecayBound::ang3_n2: {
                // transverse displacement V = var - 1 off the cap cone
                double V = (var - 1.0) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
                double c = rng.uniform(2.0, 16.0);
                double t0 = c * std::abs(V) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
                s.t = t0;
                s.x1 = -lam * t0 * w1 - V * w2;
                s.x2 = -lam * t0 * w2 + V * w1;
                break;
            }
            case DecayBound::ang4_n2: {
                // displacement U 2^{-k} = (var-1) 2^{-k} along Theta of the slice
                Frame f = spec.slice_frame();
                double U = var - 1.0;
                double delta = std::ldexp(U, -spec.k) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
                double c = rng.uniform(0.5, 4.0);
                double t0 = std::ldexp(U * c, spec.k) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
                double lamj = f.lambda;
                s.t = t0 + delta * f.theta(0);
                s.x1 = -lamj * t0 * w1 + delta * f.theta(1);
                s.x2 = -lamj * t0 * w2 + delta * f.theta(2);
                break;
            }
        }
        // recompute the decay variable from the actual point
        switch (bound) {
            case DecayBound::k99_1: s.decay_var = bracket_norm(std::abs(s.t)); break;
            case DecayBound::k99_2: s.decay_var = bracket_norm(std::hypot(s.x1, s.x2)); break;
            case DecayBound::bigk_mid:
            case DecayBound::bigk_far:
                s.decay_var =
                    1.0 + std::ldexp(std::sqrt(s.t * s.t + s.x1 * s.x1 + s.x2 * s.x2), spec.k);
                break;
            case DecayBound::ang1:
                s.decay_var =
                    1.0 + std::ldexp(std::sqrt(s.t * s.t + s.x1 * s.x1 + s.x2 * s.x2), -spec.k);
                break;
            case DecayBound::ang3_n2:
                s.decay_var =
                    1.0 + std::abs(frame_coords(spec.cap_frame(), s.t, s.x1, s.x2)(2));
                break;
            case DecayBound::ang4_n2:
                s.decay_var =
                    1.0 + std::ldexp(std::abs(frame_time(spec.slice_frame(), s.t, s.x1, s.x2)),
                                     spec.k);
                break;
        }
        s.bound_value = bound_value_at(spec, bound, s.decay_var);
        pts.push_back(s);
    }
    return pts;
}

double dyadic_stability(const std::vector<double>& log2_bin_var,
                        const std::vector<double>& values) {
    std::map<int, double> bins;
    for (std::size_t i = 0; i < values.size(); ++i) {
        int b = static_cast<int>(std::floor(log2_bin_var[i]));
        auto it = bins.find(b);
        if (it == bins.end() || values[i] > it->second) bins[b] = values[i];
    }
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (auto& [b, v] : bins) {
        if (first) {
            lo = hi = v;
            first = false;
        } else {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    return (lo > 0.0) ? hi / lo : std::numeric_limits<double>::infinity();
}

DecayReport verify_decay(const KernelSpec& spec, DecayBound bound, const SamplerSpec& sampler) {
    std::vector<DecaySample> pts = sample_points(spec, bound, sampler);
    for (const auto& p : pts) {
        if (!in_region(spec, bound, p.t, p.x1, p.x2))
            throw std::runtime_error("verify_decay: sampler produced an out-of-region point "
                                     "(t=" + std::to_string(p.t) + ", x=(" +
                                     std::to_string(p.x1) + ", " + std::to_string(p.x2) +
                                     ")) for bound " + bound_name(bound));
    }

    std::vector<double> errs(pts.size(), 0.0);
    parallel_for(static_cast<std::int64_t>(pts.size()), [&](std::int64_t i) {
        auto& p = pts[i];
        double scale = std::ldexp(1.0, 2 * spec.k);
        double tol_wanted = std::max(1e-4 * p.bound_value, 1e-12 * scale);
        double tf = std::clamp(tol_wanted / (1e-8 * scale), 1e-5, 1.0);
        KernelValue kv = eval_kernel(spec, p.t, p.x1, p.x2, tf);
        p.observed = std::abs(kv.value);
        errs[i] = kv.err_estimate;
    });

    DecayReport rep;
    rep.bound = bound_name(bound);
    rep.k = spec.k;
    rep.samples = pts;

    std::vector<double> lx, ly, lb, ratio;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].observed <= 20.0 * errs[i]) continue; // below the quadrature noise floor
        lx.push_back(std::log(pts[i].decay_var));
        ly.push_back(std::log(pts[i].observed));
        lb.push_back(std::log2(pts[i].decay_var));
        ratio.push_back(pts[i].observed / pts[i].bound_value);
    }
    if (lx.size() < 6)
        throw std::runtime_error("verify_decay: too few usable samples above the noise floor");
    rep.exponent_regression = fit_line(lx, ly);
    rep.fitted_constant = *std::max_element(ratio.begin(), ratio.end());
    rep.stability = dyadic_stability(lb, ratio);

    double target = bound_exponent(bound);
    if (bound_is_upper_exponent(bound)) {
        rep.pass = rep.exponent_regression.slope <= target + 0.1;
    } else {
        rep.pass = std::abs(rep.exponent_regression.slope - target) <= 0.15 &&
                   rep.stability <= 2.0;
    }
    return rep;
}

} // namespace dirac2d
