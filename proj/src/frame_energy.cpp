#include "dirac2d/frame_energy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "dirac2d/lp.hpp"

namespace dirac2d {

namespace {

ScalarField upsample2x(const ScalarField& f) {
    ScalarField hat = f.to_frequency();
    int n = f.n();
    GridSpec g2 = f.grid();
    g2.n_points = 2 * n;
    ScalarField out(g2, Repr::frequency);
    for (int i = 0; i < n; ++i) {
        int mi = hat.grid().mode(i);
        int i2 = mi >= 0 ? mi : mi + 2 * n;
        for (int j = 0; j < n; ++j) {
            int mj = hat.grid().mode(j);
            int j2 = mj >= 0 ? mj : mj + 2 * n;
            out.at(i2, j2) = hat.at(i, j);
        }
    }
    return out.to_physical();
}

// periodic Catmull-Rom in 2D
double bicubic_abs2(const ScalarField& a, const ScalarField& b, double wa, double wb,
                    double x1, double x2) {
    const GridSpec& g = a.grid();
    int n = g.n_points;
    double u = (x1 + g.half_width) / g.dx();
    double v = (x2 + g.half_width) / g.dx();
    int iu = static_cast<int>(std::floor(u)), iv = static_cast<int>(std::floor(v));
    double fu = u - iu, fv = v - iv;
    auto wrap = [n](int i) { return ((i % n) + n) % n; };
    // Catmull-Rom basis for offsets -1..2
    auto w4 = [](double f) {
        double f2 = f * f, f3 = f2 * f;
        return std::array<double, 4>{
            -0.5 * f3 + f2 - 0.5 * f, 1.5 * f3 - 2.5 * f2 + 1.0,
            -1.5 * f3 + 2.0 * f2 + 0.5 * f, 0.5 * f3 - 0.5 * f2};
    };
    auto wu = w4(fu), wv = w4(fv);
    cplx acc(0.0, 0.0);
    for (int di = -1; di <= 2; ++di) {
        int ii = wrap(iu + di);
        cplx row(0.0, 0.0);
        for (int dj = -1; dj <= 2; ++dj) {
            int jj = wrap(iv + dj);
            cplx va = a.at(ii, jj), vb = b.at(ii, jj);
            row += wv[dj + 1] * (wa * va + wb * vb);
        }
        acc += wu[di + 1] * row;
    }
    return std::norm(acc);
}

} // namespace

FieldSampler::FieldSampler(const Trajectory& traj) : traj_(&traj) {
    traj.validate();
    if (traj.frames() < 2) throw std::invalid_argument("FieldSampler: need >= 2 frames");
    t0_ = traj.times.front();
    t1_ = traj.times.back();
    step_ = traj.t_step();
    up_.reserve(traj.frames());
    down_.reserve(traj.frames());
    for (const auto& s : traj.states) {
        SpinorField p = s.to_physical();
        up_.push_back(upsample2x(p.up));
        down_.push_back(upsample2x(p.down));
    }
    n_up_ = up_.front().n();
}

bool FieldSampler::sample_sq(double t, double x1, double x2, double& out) const {
    if (t < t0_ - 1e-12 || t > t1_ + 1e-12) return false;
    double pos = std::clamp((t - t0_) / step_, 0.0, static_cast<double>(up_.size() - 1));
    int f0 = std::min(static_cast<int>(pos), static_cast<int>(up_.size()) - 2);
    double w = pos - f0;
    out = bicubic_abs2(up_[f0], up_[f0 + 1], 1.0 - w, w, x1, x2) +
          bicubic_abs2(down_[f0], down_[f0 + 1], 1.0 - w, w, x1, x2);
    return true;
}

namespace {

struct SlabGeometry {
    Vec3 slab_axis, u_axis, v_axis;
    double c_min, c_max;
    double u_half, v_half;
};

SlabGeometry slab_geometry(const Trajectory& traj, const Frame& frame, MixedKind kind) {
    SlabGeometry geo;
    bool slab_is_time = kind == MixedKind::L2t_Linfx || kind == MixedKind::Linft_L2x;
    geo.slab_axis = slab_is_time ? frame.theta : frame.theta_0perp;
    if (slab_is_time) {
        geo.u_axis = frame.theta_perp;
        geo.v_axis = frame.theta_0perp;
    } else {
        geo.u_axis = frame.theta;
        geo.v_axis = frame.theta_perp;
    }
    double L = traj.grid.half_width;
    double t0 = traj.times.front(), t1 = traj.times.back();
    geo.c_min = std::numeric_limits<double>::infinity();
    geo.c_max = -geo.c_min;
    for (double tc : {t0, t1})
        for (double a : {-L, L})
            for (double b : {-L, L}) {
                double c = geo.slab_axis(0) * tc + geo.slab_axis(1) * a + geo.slab_axis(2) * b;
                geo.c_min = std::min(geo.c_min, c);
                geo.c_max = std::max(geo.c_max, c);
            }
    double diag = std::sqrt((t1 - t0) * (t1 - t0) + 8.0 * L * L);
    geo.u_half = diag;
    geo.v_half = diag;
    return geo;
}

double wrap_box(double x, double L) {
    double p = std::fmod(x + L, 2.0 * L);
    if (p < 0) p += 2.0 * L;
    return p - L;
}

} // namespace

double frame_mixed_norm(const Trajectory& traj, const Frame& frame, MixedKind kind) {
    FieldSampler sampler(traj);
    SlabGeometry geo = slab_geometry(traj, frame, kind);
    double slab_w = traj.t_step();
    double h = traj.grid.dx();
    double L = traj.grid.half_width;
    bool inner_l2 = kind == MixedKind::Linft_L2x || kind == MixedKind::Linfx2_L2tx1;
    bool outer_l2 = kind == MixedKind::L2t_Linfx || kind == MixedKind::L2x2_Linf_tx1;

    int n_slabs = static_cast<int>(std::ceil((geo.c_max - geo.c_min) / slab_w));
    double outer_acc = 0.0;
    bool any = false;
    for (int s = 0; s < n_slabs; ++s) {
        double c = geo.c_min + (s + 0.5) * slab_w;
        double inner_acc = 0.0;
        long hits = 0;
        for (double u = -geo.u_half; u <= geo.u_half; u += h)
            for (double v = -geo.v_half; v <= geo.v_half; v += h) {
                Vec3 p = c * geo.slab_axis + u * geo.u_axis + v * geo.v_axis;
                double val;
                if (!sampler.sample_sq(p(0), wrap_box(p(1), L), wrap_box(p(2), L), val)) continue;
                ++hits;
                if (inner_l2)
                    inner_acc += val;
                else
                    inner_acc = std::max(inner_acc, val);
            }
        if (hits == 0) continue;
        any = true;
        double inner = inner_l2 ? std::sqrt(inner_acc * h * h) : std::sqrt(inner_acc);
        if (outer_l2)
            outer_acc += inner * inner * slab_w;
        else
            outer_acc = std::max(outer_acc, inner);
    }
    if (!any) throw std::runtime_error("frame_mixed_norm: no slab intersected the window");
    return outer_l2 ? std::sqrt(outer_acc) : outer_acc;
}

namespace {

// index of the member minimizing |t_Theta| at a point; the member speeds
// are monotone in their index, so ternary search over the index works
std::size_t argmin_member(const std::vector<Frame>& members, double t, double x1, double x2) {
    std::size_t lo = 0, hi = members.size() - 1;
    while (hi - lo > 2) {
        std::size_t m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
        double f1 = std::abs(frame_time(members[m1], t, x1, x2));
        double f2 = std::abs(frame_time(members[m2], t, x1, x2));
        if (f1 < f2)
            hi = m2;
        else
            lo = m1;
    }
    std::size_t best = lo;
    double fb = std::abs(frame_time(members[lo], t, x1, x2));
    for (std::size_t i = lo + 1; i <= hi; ++i) {
        double f = std::abs(frame_time(members[i], t, x1, x2));
        if (f < fb) {
            fb = f;
            best = i;
        }
    }
    return best;
}

} // namespace

double sum_frame_norm_upper(const Trajectory& traj, const FrameSet& set, MixedKind kind) {
    if (set.members.empty()) throw std::invalid_argument("sum_frame_norm_upper: empty set");
    if (set.members.size() == 1) return frame_mixed_norm(traj, set.members.front(), kind);

    FieldSampler sampler(traj);
    double slab_w = traj.t_step();
    double h = traj.grid.dx();
    double L = traj.grid.half_width;
    bool inner_l2 = kind == MixedKind::Linft_L2x || kind == MixedKind::Linfx2_L2tx1;
    bool outer_l2 = kind == MixedKind::L2t_Linfx || kind == MixedKind::L2x2_Linf_tx1;

    // per-member slab accumulators, keyed by (member, slab index)
    std::map<std::pair<std::size_t, long>, double> inner;
    std::vector<SlabGeometry> geos;
    geos.reserve(set.members.size());
    for (const auto& f : set.members) geos.push_back(slab_geometry(traj, f, kind));

    // resample on the winner's own slab lattice: iterate over the raw
    // sample cloud of the trajectory (stored frames x grid), which tiles
    // the window evenly
    const Trajectory& tr = traj;
    int n = tr.grid.n_points;
    for (std::size_t fi = 0; fi < tr.frames(); ++fi) {
        double t = tr.times[fi];
        SpinorField phys = tr.states[fi].to_physical();
        for (int i = 0; i < n; ++i) {
            double x1 = -L + i * tr.grid.dx();
            for (int jj = 0; jj < n; ++jj) {
                double x2 = -L + jj * tr.grid.dx();
                std::size_t win = argmin_member(set.members, t, x1, x2);
                double val = std::norm(phys.up.at(i, jj)) + std::norm(phys.down.at(i, jj));
                const SlabGeometry& geo = geos[win];
                double c = geo.slab_axis(0) * t + geo.slab_axis(1) * x1 + geo.slab_axis(2) * x2;
                long slab = static_cast<long>(std::floor((c - geo.c_min) / slab_w));
                auto key = std::make_pair(win, slab);
                auto [it, inserted] = inner.try_emplace(key, 0.0);
                if (inner_l2) {
                    // cell volume dt dx^2 spread over the slab width
                    it->second += val * tr.t_step() * h * h / slab_w;
                } else {
                    it->second = std::max(it->second, val);
                }
            }
        }
    }
    (void)sampler;

    // reduce per member, then sum members
    std::map<std::size_t, double> outer;
    for (auto& [key, v] : inner) {
        double in = std::sqrt(v);
        auto [it, ins] = outer.try_emplace(key.first, 0.0);
        if (outer_l2)
            it->second += in * in * slab_w;
        else
            it->second = std::max(it->second, in);
    }
    double total = 0.0;
    for (auto& [mi, v] : outer) total += outer_l2 ? std::sqrt(v) : v;
    return total;
}

EnergyReport frame_energy_ratio(const EnergyConfig& cfg) {
    cfg.grid.validate();
    int m = std::min(cfg.j, cfg.k);
    int sep = cfg.scale.sep;
    if (m < cfg.scale.high_k)
        throw std::invalid_argument("frame_energy_ratio: min(j,k) below the high-frequency range");
    if (cfg.l < 1 || cfg.l > m + sep)
        throw std::invalid_argument(
            "frame_energy_ratio: cap level violates 0 <= l <= min(j,k)+" + std::to_string(sep));
    if (cfg.kind == EnergyKind::dh) {
        bool sep_low = cfg.l <= m - sep;
        bool sep_edge = (cfg.l == m + sep) && std::abs(cfg.j - cfg.k) >= sep;
        if (!sep_low && !sep_edge)
            throw std::invalid_argument(
                "frame_energy_ratio: the time-sliced energy estimate requires l <= min(j,k)-" +
                std::to_string(sep) + " or l = min(j,k)+" + std::to_string(sep) +
                " with |j-k| >= " + std::to_string(sep) +
                "; no estimate is provided in between");
    } else {
        if (cfg.l > m + sep - 1)
            throw std::invalid_argument(
                "frame_energy_ratio: the transverse-sliced estimate requires l <= min(j,k)+" +
                std::to_string(sep - 1));
    }
    double alpha = cfg.alpha_mult * std::ldexp(1.0, -cfg.l);
    double window_lo = std::ldexp(1.0, -1 - cfg.l), window_hi = std::ldexp(1.0, 1 - cfg.l);
    if (alpha < window_lo || alpha > window_hi)
        throw std::invalid_argument("frame_energy_ratio: alpha outside the admissible window "
                                    "around 2^{-l}");
    double alpha_tilde = std::max(alpha, std::ldexp(1.0, -m));

    Cap cap(cfg.l, cfg.cap_index);
    double c1, c2;
    cap.center(c1, c2);
    double base = cap.center_angle();
    double wang = base + alpha; // omega at angular distance alpha from the cap center
    double w1 = std::cos(wang), w2 = std::sin(wang);

    // cap-localized random data
    double capw = 0.75 * 2.0 * 3.14159265358979323846 / Cap::count(cfg.l);
    double dir[2] = {c1, c2};
    ScalarField f = random_annulus_field(cfg.grid, cfg.k, cfg.stream, dir, capw);
    double l2 = l2_norm(f);
    if (l2 == 0.0) throw std::runtime_error("frame_energy_ratio: empty data draw");

    // frame speed: nearest member of Lambda_{j,omega} to lambda(j)
    FrameSet lam = build_frame_set(FrameKind::Lambda, cfg.j, w1, w2, cfg.r, cfg.scale);
    double lj = lambda_k(cfg.j);
    const Frame* best = &lam.members.front();
    for (const auto& fr : lam.members)
        if (std::abs(fr.lambda - lj) < std::abs(best->lambda - lj)) best = &fr;

    SpinorField zero(cfg.grid, Repr::physical);
    SpinorField data(f.to_physical(), zero.down);
    double t_step = std::max(cfg.grid.dt, cfg.grid.t_max / 64.0);
    Trajectory traj = free_trajectory(data, SpinorField(cfg.grid, Repr::frequency), 0.0,
                                      cfg.grid.t_max, t_step);

    EnergyReport rep;
    rep.alpha = alpha;
    rep.alpha_tilde = alpha_tilde;
    rep.data_l2 = l2;
    rep.mixed_norm = frame_mixed_norm(
        traj, *best, cfg.kind == EnergyKind::dh ? MixedKind::Linft_L2x : MixedKind::Linfx2_L2tx1);
    rep.ratio = rep.mixed_norm / l2;
    return rep;
}

} // namespace dirac2d
