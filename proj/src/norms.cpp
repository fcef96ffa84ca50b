#include "dirac2d/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dirac2d/solver.hpp"

namespace dirac2d {

double mixed_norm(const Trajectory& traj, double p, double q) {
    traj.validate();
    if (!(p >= 1.0) || !(q >= 1.0))
        throw std::invalid_argument("mixed_norm: exponents must be in [1, inf]");
    double dt = traj.t_step();
    double outer = 0.0;
    for (const auto& state : traj.states) {
        SpinorField phys = state.to_physical();
        ScalarField mod(phys.grid(), Repr::physical);
        for (std::size_t i = 0; i < mod.size(); ++i)
            mod.data()[i] = std::sqrt(std::norm(phys.up.data()[i]) +
                                      std::norm(phys.down.data()[i]));
        double inner = lebesgue_norm(mod, q);
        if (std::isinf(p))
            outer = std::max(outer, inner);
        else
            outer += std::pow(inner, p) * dt;
    }
    return std::isinf(p) ? outer : std::pow(outer, 1.0 / p);
}

double sobolev_norm(const ScalarField& f, double sigma) {
    ScalarField hat = f.to_frequency();
    const GridSpec& g = hat.grid();
    int n = g.n_points;
    double cell = g.dxi() * g.dxi() / (4.0 * 3.14159265358979323846 * 3.14159265358979323846);
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double w = std::pow(bracket_norm(std::hypot(g.freq(i), g.freq(j))), 2.0 * sigma);
            acc += w * std::norm(hat.at(i, j));
        }
    return std::sqrt(acc * cell);
}

double sobolev_norm(const SpinorField& f, double sigma) {
    double a = sobolev_norm(f.up, sigma), b = sobolev_norm(f.down, sigma);
    return std::sqrt(a * a + b * b);
}

double xbq_norm(const Trajectory& traj, int sign, double b, double q) {
    SpaceTimeSpectrum spec(traj);
    int m_lo = spec.m_min();
    // everything above |tau| + <xi>_max is empty
    double tau_max = spec.dtau() * (spec.n_t() / 2);
    double xi_max = bracket_norm(std::hypot(traj.grid.dxi() * (traj.grid.n_points / 2),
                                            traj.grid.dxi() * (traj.grid.n_points / 2)));
    int m_hi = static_cast<int>(std::ceil(std::log2(tau_max + xi_max))) + 1;
    if (m_hi < m_lo) throw std::invalid_argument("xbq_norm: no resolvable modulation range");
    double acc = 0.0, sup = 0.0;
    for (int m = m_lo; m <= m_hi; ++m) {
        double band = spec.band_l2(m, sign, QMode::exact);
        double term = std::ldexp(band, 0) * std::pow(2.0, b * m);
        if (std::isinf(q))
            sup = std::max(sup, term);
        else
            acc += std::pow(term, q);
    }
    return std::isinf(q) ? sup : std::pow(acc, 1.0 / q);
}

double v2_lower_bound(const Trajectory& traj, int sign, int n_partitions) {
    traj.validate();
    if (n_partitions < 2) throw std::invalid_argument("v2_lower_bound: need >= 2 partitions");
    std::size_t n = traj.frames();

    // interaction-picture pullbacks
    std::vector<SpinorField> phi;
    phi.reserve(n);
    double linf = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        SpinorField hat = traj.states[i].to_frequency();
        linf = std::max(linf, l2_norm(hat));
        phi.push_back(half_wave_propagate(hat, -traj.times[i], sign));
    }

    // pairwise squared increments
    std::vector<std::vector<double>> d2(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double d = l2_norm(phi[j] - phi[i]);
            d2[i][j] = d * d;
        }

    // best[j] = max sum of squared increments of an increasing sequence
    // with at most n_partitions jumps ending at j
    int jumps = std::min<int>(n_partitions, static_cast<int>(n) - 1);
    std::vector<double> best(n, 0.0), next(n, 0.0);
    double overall = 0.0;
    for (int step = 0; step < jumps; ++step) {
        for (std::size_t j = 0; j < n; ++j) {
            double b = best[j];
            for (std::size_t i = 0; i < j; ++i) b = std::max(b, best[i] + d2[i][j]);
            next[j] = b;
            overall = std::max(overall, b);
        }
        best.swap(next);
    }
    return linf + std::sqrt(overall);
}

} // namespace dirac2d
