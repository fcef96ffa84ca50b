#pragma once

#include <memory>

#include "dirac2d/trajectory.hpp"

namespace dirac2d {

enum class QMode { exact, below, prec };

// Space-time Fourier data of a trajectory. The time window is tapered
// by a Hann ramp over its first and last 10% before transforming, so
// band energies refer to the tapered signal. Built once and shared
// read-only across threads.
class SpaceTimeSpectrum {
public:
    explicit SpaceTimeSpectrum(const Trajectory& traj);

    int n_t() const { return n_t_; }
    int n() const { return n_; }
    double dtau() const { return dtau_; }
    double tau(int jt) const { return dtau_ * (jt < n_t_ / 2 + 1 ? jt : jt - n_t_); }
    const GridSpec& grid() const { return grid_; }

    cplx& at(int comp, int jt, int ix, int jx) {
        return data_[((static_cast<std::size_t>(comp) * n_t_ + jt) * n_ + ix) * n_ + jx];
    }
    const cplx& at(int comp, int jt, int ix, int jx) const {
        return data_[((static_cast<std::size_t>(comp) * n_t_ + jt) * n_ + ix) * n_ + jx];
    }

    // windowed space-time L^2 of the band chi(tau -+ <xi>), by Parseval
    double band_l2(int m, int sign, QMode mode, int prec_c = 31) const;
    double total_l2() const;

    // smallest dyadic modulation level the window can resolve
    int m_min() const;

    // multiply by chi(tau -+ <xi>) and transform back
    Trajectory project(int m, int sign, QMode mode, int prec_c = 31) const;

private:
    double band_weight(double dist, int m, QMode mode, int prec_c) const;

    GridSpec grid_;
    std::vector<double> times_;
    int n_t_ = 0, n_ = 0;
    double dtau_ = 0.0;
    std::vector<cplx> data_;
};

// One-shot form of SpaceTimeSpectrum::project. Errors if 2^m is below
// the window's frequency resolution.
Trajectory modulation_project(const Trajectory& traj, int m, int sign, QMode mode,
                              int prec_c = 31);

} // namespace dirac2d
