#include "dirac2d/frame.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dirac2d {

double lambda_k(int k) { return 1.0 / std::sqrt(1.0 + std::ldexp(1.0, -2 * k)); }

Frame::Frame(double lam, double w1, double w2) : lambda(lam), omega1(w1), omega2(w2) {
    double n = std::hypot(w1, w2);
    if (!(n > 0.0)) throw std::invalid_argument("Frame: omega must be a unit vector");
    omega1 /= n;
    omega2 /= n;
    if (std::abs(lambda) > 1.0 + 1e-12)
        throw std::invalid_argument("Frame: |lambda| must not exceed 1, got " +
                                    std::to_string(lambda));
    init();
}

void Frame::init() {
    double s = 1.0 / std::sqrt(1.0 + lambda * lambda);
    theta = Vec3(lambda * s, omega1 * s, omega2 * s);
    theta_perp = Vec3(-s, lambda * omega1 * s, lambda * omega2 * s);
    theta_0perp = Vec3(0.0, -omega2, omega1);
    matrix.col(0) = theta;
    matrix.col(1) = theta_perp;
    matrix.col(2) = theta_0perp;
}

Vec3 frame_coords(const Frame& frame, double t, double x1, double x2) {
    return frame.matrix.transpose() * Vec3(t, x1, x2);
}

Vec3 frame_freq_coords(const Frame& frame, double tau, double xi1, double xi2) {
    return frame.matrix.transpose() * Vec3(tau, xi1, xi2);
}

double frame_time(const Frame& frame, double t, double x1, double x2) {
    return frame.theta(0) * t + frame.theta(1) * x1 + frame.theta(2) * x2;
}

double DeskScale::lambda_kj(int k, int j) const {
    double s = slice_center(j);
    return 1.0 / std::sqrt(1.0 + std::ldexp(1.0, -2 * k) / (s * s));
}

namespace {

// speeds 1/sqrt(1+m^{-2}) for m on the arithmetic lattice step*Z
// intersected with [m_lo, m_hi]
void push_speed_range(std::vector<Frame>& out, double m_lo, double m_hi, double step,
                      double w1, double w2) {
    long i_lo = static_cast<long>(std::ceil(m_lo / step - 1e-9));
    long i_hi = static_cast<long>(std::floor(m_hi / step + 1e-9));
    for (long i = i_lo; i <= i_hi; ++i) {
        double m = i * step;
        if (m <= 0.0) continue;
        out.emplace_back(1.0 / std::sqrt(1.0 + 1.0 / (m * m)), w1, w2);
    }
}

} // namespace

FrameSet build_frame_set(FrameKind kind, int k, double omega1, double omega2, int r,
                         const DeskScale& scale) {
    if (r < 1) throw std::invalid_argument("build_frame_set: r must be >= 1");
    FrameSet set;
    set.kind = kind;
    set.k = k;
    set.omega1 = omega1;
    set.omega2 = omega2;
    set.r_param = r;

    if (kind == FrameKind::Omega) {
        // directions R^i omega with |i| <= 2^{r-k-8}, R a rotation by 2^{-r};
        // collapses to the base direction once k+8 > r
        long imax = (r - k - 8 >= 0) ? (1L << (r - k - 8)) : 0;
        double rot = std::ldexp(1.0, -r);
        double base = std::atan2(omega2, omega1);
        double lam = lambda_k(k);
        for (long i = -imax; i <= imax; ++i) {
            double a = base + rot * i;
            set.members.emplace_back(lam, std::cos(a), std::sin(a));
        }
        return set;
    }

    if (k < scale.high_k) {
        // lambda = i 2^{-r}, |i| <= 2^r / sqrt(1+2^{-2k-4})
        double cap = std::ldexp(1.0, r) / std::sqrt(1.0 + std::ldexp(1.0, -2 * k - 4));
        long imax = static_cast<long>(std::floor(cap + 1e-9));
        double step = std::ldexp(1.0, -r);
        for (long i = -imax; i <= imax; ++i)
            set.members.emplace_back(i * step, omega1, omega2);
    } else if (k < r + scale.j_width_log2) {
        double step = std::ldexp(1.0, 2 * k - r - scale.j_width_log2);
        push_speed_range(set.members, std::ldexp(1.0, k - 3), std::ldexp(1.0, k + 3), step,
                         omega1, omega2);
    } else {
        set.members.emplace_back(lambda_k(k), omega1, omega2);
    }
    return set;
}

FrameSet build_frame_subblock(int k, double omega1, double omega2, int r, int j,
                              const DeskScale& scale) {
    if (j < scale.j_min() || j > scale.j_max())
        throw std::invalid_argument("build_frame_subblock: slice index " + std::to_string(j) +
                                    " outside [" + std::to_string(scale.j_min()) + ", " +
                                    std::to_string(scale.j_max()) + "]");
    FrameSet set;
    set.kind = FrameKind::Lambda;
    set.k = k;
    set.omega1 = omega1;
    set.omega2 = omega2;
    set.r_param = r;
    if (k >= r + scale.j_width_log2) {
        set.members.emplace_back(lambda_k(k), omega1, omega2);
        return set;
    }
    int W = scale.j_width_log2;
    double step = std::ldexp(1.0, 2 * k - r - W);
    push_speed_range(set.members, std::ldexp(static_cast<double>(j - 1), k - W),
                     std::ldexp(static_cast<double>(j + 1), k - W), step, omega1, omega2);
    return set;
}

std::size_t frame_set_cardinality(FrameKind kind, int k, int r, const DeskScale& scale) {
    if (kind == FrameKind::Omega) {
        long imax = (r - k - 8 >= 0) ? (1L << (r - k - 8)) : 0;
        return static_cast<std::size_t>(2 * imax + 1);
    }
    if (k < scale.high_k) {
        double cap = std::ldexp(1.0, r) / std::sqrt(1.0 + std::ldexp(1.0, -2 * k - 4));
        return static_cast<std::size_t>(2 * static_cast<long>(std::floor(cap + 1e-9)) + 1);
    }
    if (k < r + scale.j_width_log2) {
        double step = std::ldexp(1.0, 2 * k - r - scale.j_width_log2);
        long lo = static_cast<long>(std::ceil(std::ldexp(1.0, k - 3) / step - 1e-9));
        long hi = static_cast<long>(std::floor(std::ldexp(1.0, k + 3) / step + 1e-9));
        return static_cast<std::size_t>(hi - lo + 1);
    }
    return 1;
}

std::size_t frame_subblock_cardinality(int k, int r, const DeskScale& scale) {
    if (k >= r + scale.j_width_log2) return 1;
    int W = scale.j_width_log2;
    double step = std::ldexp(1.0, 2 * k - r - W);
    // the slice [(j-1)2^{k-W}, (j+1)2^{k-W}] has width 2^{k-W+1}; the
    // count of lattice points is width/step (+1), independent of j
    long lo = static_cast<long>(std::ceil(std::ldexp(1.0, k - W) * (slice_j_min(W)) / step - 1e-9));
    long hi = static_cast<long>(
        std::floor(std::ldexp(1.0, k - W) * (slice_j_min(W) + 2) / step + 1e-9));
    return static_cast<std::size_t>(hi - lo + 1);
}

} // namespace dirac2d
