#include "dirac2d/modulation.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "dirac2d/cutoff.hpp"

namespace dirac2d {

namespace {
constexpr double kPi = 3.14159265358979323846;

std::mutex plan1d_mutex;

void fft1d(cplx* data, int n, int sign) {
    static std::map<std::pair<int, int>, fftw_plan> cache;
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan1d_mutex);
        auto key = std::make_pair(n, sign);
        auto it = cache.find(key);
        if (it == cache.end()) {
            std::vector<cplx> probe(n);
            auto* p = reinterpret_cast<fftw_complex*>(probe.data());
            plan = fftw_plan_dft_1d(n, p, p, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
            cache[key] = plan;
        } else {
            plan = it->second;
        }
    }
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(data),
                     reinterpret_cast<fftw_complex*>(data));
}

double taper(double frac) {
    // Hann ramp over the first and last 10% of the window
    if (frac < 0.1) return 0.5 * (1.0 - std::cos(kPi * frac / 0.1));
    if (frac > 0.9) return 0.5 * (1.0 - std::cos(kPi * (1.0 - frac) / 0.1));
    return 1.0;
}

} // namespace

SpaceTimeSpectrum::SpaceTimeSpectrum(const Trajectory& traj) {
    traj.validate();
    if (traj.frames() < 8)
        throw std::invalid_argument("SpaceTimeSpectrum: need at least 8 frames");
    grid_ = traj.grid;
    times_ = traj.times;
    n_t_ = static_cast<int>(traj.frames());
    n_ = grid_.n_points;
    dtau_ = 2.0 * kPi / (n_t_ * traj.t_step());
    data_.resize(2 * static_cast<std::size_t>(n_t_) * n_ * n_);

    double t0 = times_.front(), twin = times_.back() - times_.front();
    for (int jt = 0; jt < n_t_; ++jt) {
        SpinorField hat = traj.states[jt].to_frequency();
        double w = taper((times_[jt] - t0) / twin);
        for (int c = 0; c < 2; ++c) {
            const ScalarField& comp = c == 0 ? hat.up : hat.down;
            for (int ix = 0; ix < n_; ++ix)
                for (int jx = 0; jx < n_; ++jx) at(c, jt, ix, jx) = w * comp.at(ix, jx);
        }
    }
    // transform in time, one spatial mode at a time. Under
    // uhat(tau) = int u(t) e^{-i t tau} dt a + free wave e^{it<xi>}
    // sits at tau = +<xi>, so the forward DFT is the right direction.
    std::vector<cplx> line(n_t_);
    for (int c = 0; c < 2; ++c)
        for (int ix = 0; ix < n_; ++ix)
            for (int jx = 0; jx < n_; ++jx) {
                for (int jt = 0; jt < n_t_; ++jt) line[jt] = at(c, jt, ix, jx);
                fft1d(line.data(), n_t_, -1);
                for (int jt = 0; jt < n_t_; ++jt) at(c, jt, ix, jx) = line[jt];
            }
}

int SpaceTimeSpectrum::m_min() const {
    return static_cast<int>(std::ceil(std::log2(dtau_)));
}

double SpaceTimeSpectrum::band_weight(double dist, int m, QMode mode, int prec_c) const {
    switch (mode) {
        case QMode::exact: return chi_k(dist, m);
        case QMode::below: return chi_leq_k(dist, m);
        case QMode::prec: return chi_leq_k(dist, m - prec_c);
    }
    return 0.0;
}

double SpaceTimeSpectrum::band_l2(int m, int sign, QMode mode, int prec_c) const {
    double acc = 0.0;
    double cell = grid_.dxi() * grid_.dxi() / (4.0 * kPi * kPi);
    double dt_w = (times_[1] - times_[0]) / n_t_;
    for (int jt = 0; jt < n_t_; ++jt)
        for (int ix = 0; ix < n_; ++ix)
            for (int jx = 0; jx < n_; ++jx) {
                double b = bracket_norm(std::hypot(grid_.freq(ix), grid_.freq(jx)));
                double dist = std::abs(tau(jt) - (sign >= 0 ? b : -b));
                double w = band_weight(dist, m, mode, prec_c);
                if (w == 0.0) continue;
                double m2 = std::norm(at(0, jt, ix, jx)) + std::norm(at(1, jt, ix, jx));
                acc += w * w * m2;
            }
    return std::sqrt(acc * cell * dt_w);
}

double SpaceTimeSpectrum::total_l2() const {
    double acc = 0.0;
    double cell = grid_.dxi() * grid_.dxi() / (4.0 * kPi * kPi);
    double dt_w = (times_[1] - times_[0]) / n_t_;
    for (const cplx& v : data_) acc += std::norm(v);
    return std::sqrt(acc * cell * dt_w);
}

Trajectory SpaceTimeSpectrum::project(int m, int sign, QMode mode, int prec_c) const {
    std::vector<cplx> filtered(data_.size());
    for (int jt = 0; jt < n_t_; ++jt) {
        double ta = tau(jt);
        for (int ix = 0; ix < n_; ++ix)
            for (int jx = 0; jx < n_; ++jx) {
                double b = bracket_norm(std::hypot(grid_.freq(ix), grid_.freq(jx)));
                double w = band_weight(std::abs(ta - (sign >= 0 ? b : -b)), m, mode, prec_c);
                for (int c = 0; c < 2; ++c)
                    filtered[((static_cast<std::size_t>(c) * n_t_ + jt) * n_ + ix) * n_ + jx] =
                        w * at(c, jt, ix, jx);
            }
    }
    Trajectory out;
    out.grid = grid_;
    out.times = times_;
    std::vector<cplx> line(n_t_);
    std::vector<SpinorField> hats(n_t_, SpinorField(grid_, Repr::frequency));
    for (int c = 0; c < 2; ++c)
        for (int ix = 0; ix < n_; ++ix)
            for (int jx = 0; jx < n_; ++jx) {
                for (int jt = 0; jt < n_t_; ++jt)
                    line[jt] =
                        filtered[((static_cast<std::size_t>(c) * n_t_ + jt) * n_ + ix) * n_ + jx];
                fft1d(line.data(), n_t_, +1);
                for (int jt = 0; jt < n_t_; ++jt) {
                    cplx v = line[jt] / static_cast<double>(n_t_);
                    (c == 0 ? hats[jt].up : hats[jt].down).at(ix, jx) = v;
                }
            }
    out.states.reserve(n_t_);
    for (int jt = 0; jt < n_t_; ++jt) out.states.push_back(hats[jt].to_physical());
    return out;
}

Trajectory modulation_project(const Trajectory& traj, int m, int sign, QMode mode, int prec_c) {
    SpaceTimeSpectrum spec(traj);
    int lowest = (mode == QMode::prec) ? m - prec_c : m;
    if (std::ldexp(1.0, lowest) < spec.dtau())
        throw std::invalid_argument(
            "modulation_project: 2^m below the window's frequency resolution 2pi/T");
    return spec.project(m, sign, mode, prec_c);
}

} // namespace dirac2d
