#include "dirac2d/spectral.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dirac2d/parallel.hpp"

namespace dirac2d {

namespace {
int g_workers = 1;
}

int worker_count() { return g_workers; }
void set_worker_count(int n) { g_workers = n < 1 ? 1 : n; }

double bracket(double xi1, double xi2, const BracketSymbol& symbol) {
    double base;
    if (symbol.dyadic_scale)
        base = std::ldexp(1.0, -2 * *symbol.dyadic_scale);
    else
        base = symbol.mass * symbol.mass;
    return std::sqrt(base + xi1 * xi1 + xi2 * xi2);
}

ScalarField apply_multiplier(const ScalarField& f,
                             const std::function<cplx(double, double)>& symbol) {
    ScalarField hat = f.to_frequency();
    int n = hat.n();
    const GridSpec& g = hat.grid();
    for (int i = 0; i < n; ++i) {
        double xi1 = g.freq(i);
        bool nyq_i = (g.mode(i) == -n / 2);
        for (int j = 0; j < n; ++j) {
            if (nyq_i || g.mode(j) == -n / 2) {
                hat.at(i, j) = 0.0;
                continue;
            }
            double xi2 = g.freq(j);
            cplx m = symbol(xi1, xi2);
            if (!std::isfinite(m.real()) || !std::isfinite(m.imag()))
                throw std::runtime_error("apply_multiplier: non-finite symbol at xi = (" +
                                         std::to_string(xi1) + ", " + std::to_string(xi2) + ")");
            hat.at(i, j) *= m;
        }
    }
    return f.repr() == Repr::frequency ? hat : hat.to_physical();
}

ScalarField half_wave_propagate(const ScalarField& f, double t, int sign) {
    double s = sign >= 0 ? t : -t;
    return apply_multiplier(f, [s](double x1, double x2) {
        double phase = s * bracket(x1, x2);
        return cplx(std::cos(phase), std::sin(phase));
    });
}

ScalarField kg_solve(const ScalarField& u0, const ScalarField& u1, double t) {
    ScalarField part0 = apply_multiplier(u0, [t](double x1, double x2) {
        return cplx(std::cos(t * bracket(x1, x2)), 0.0);
    });
    ScalarField part1 = apply_multiplier(u1, [t](double x1, double x2) {
        double b = bracket(x1, x2);
        return cplx(std::sin(t * b) / b, 0.0);
    });
    return part0 + part1;
}

double lebesgue_norm(const ScalarField& f, double q) {
    if (f.repr() != Repr::physical)
        throw std::invalid_argument("lebesgue_norm: field must be in physical representation");
    if (!(q >= 1.0))
        throw std::invalid_argument("lebesgue_norm: exponent must be in [1, inf]");
    if (std::isinf(q)) {
        double m = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f.data()[i]));
        return m;
    }
    double cell = f.grid().dx() * f.grid().dx();
    double acc = 0.0;
    if (q == 2.0) {
        for (std::size_t i = 0; i < f.size(); ++i) acc += std::norm(f.data()[i]);
    } else {
        for (std::size_t i = 0; i < f.size(); ++i) acc += std::pow(std::abs(f.data()[i]), q);
    }
    return std::pow(acc * cell, 1.0 / q);
}

double l2_norm(const ScalarField& f) {
    if (f.repr() == Repr::physical) return lebesgue_norm(f, 2.0);
    double cell = f.grid().dxi() * f.grid().dxi() /
                  (4.0 * 3.14159265358979323846 * 3.14159265358979323846);
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) acc += std::norm(f.data()[i]);
    return std::sqrt(acc * cell);
}

ScalarField random_field(const GridSpec& grid, std::uint64_t stream) {
    ScalarField f(grid, Repr::physical);
    Philox rng(grid.seed, stream);
    for (std::size_t i = 0; i < f.size(); ++i)
        f.data()[i] = cplx(rng.gaussian(), rng.gaussian());
    return f;
}

ScalarField random_annulus_field(const GridSpec& grid, int k, std::uint64_t stream,
                                 const double* dir, double ang_width) {
    if (k < grid.k_min() || k > grid.k_max())
        throw std::invalid_argument("random_annulus_field: dyadic level " + std::to_string(k) +
                                    " not resolvable on this grid (allowed [" +
                                    std::to_string(grid.k_min()) + ", " +
                                    std::to_string(grid.k_max()) + "])");
    ScalarField f(grid, Repr::frequency);
    Philox rng(grid.seed, stream);
    int n = grid.n_points;
    double lo = std::ldexp(1.0, k - 1), hi = std::ldexp(1.0, k + 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double x1 = grid.freq(i), x2 = grid.freq(j);
            double r = std::hypot(x1, x2);
            // draw unconditionally so the stream layout is position-stable
            cplx z(rng.gaussian(), rng.gaussian());
            if (r < lo || r > hi || grid.mode(i) == -n / 2 || grid.mode(j) == -n / 2) continue;
            if (dir) {
                double ang = std::atan2(x1 * dir[1] - x2 * dir[0], x1 * dir[0] + x2 * dir[1]);
                if (std::abs(ang) > ang_width) continue;
            }
            f.at(i, j) = z;
        }
    return f;
}

double boundary_mass_fraction(const ScalarField& f, double margin) {
    ScalarField p = f.to_physical();
    int n = p.n();
    double L = p.grid().half_width;
    double total = 0.0, edge = 0.0;
    for (int i = 0; i < n; ++i) {
        double x = -L + i * p.grid().dx();
        for (int j = 0; j < n; ++j) {
            double y = -L + j * p.grid().dx();
            double m = std::norm(p.at(i, j));
            total += m;
            if (std::max(std::abs(x), std::abs(y)) > (1.0 - margin) * L) edge += m;
        }
    }
    return total > 0.0 ? edge / total : 0.0;
}

} // namespace dirac2d
