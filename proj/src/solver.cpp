#include "dirac2d/solver.hpp"

#include <cmath>
#include <stdexcept>

#include "dirac2d/regression.hpp"

namespace dirac2d {

void SolveConfig::validate() const {
    if (!(epsilon > 0.0)) throw std::invalid_argument("SolveConfig: epsilon must be positive");
    if (picard_depth < 1) throw std::invalid_argument("SolveConfig: picard_depth must be >= 1");
    if (!(t_max > 0.0)) throw std::invalid_argument("SolveConfig: t_max must be positive");
    if (!(store_step > 0.0)) throw std::invalid_argument("SolveConfig: store_step must be positive");
}

double sobolev_half_norm(const SpinorField& psi) {
    SpinorField hat = psi.to_frequency();
    const GridSpec& g = hat.grid();
    int n = g.n_points;
    double cell = g.dxi() * g.dxi() / (4.0 * 3.14159265358979323846 * 3.14159265358979323846);
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double w = bracket_norm(std::hypot(g.freq(i), g.freq(j)));
            acc += w * (std::norm(hat.up.at(i, j)) + std::norm(hat.down.at(i, j)));
        }
    return std::sqrt(acc * cell);
}

namespace {

const cplx kI(0.0, 1.0);

// in-place frequency-side helpers; all per-mode 2x2 work is written out
// to keep the hot loops free of temporaries

// psi_hat <- [e^{+it<xi>} Pi_+ + e^{-it<xi>} Pi_-] psi_hat
void linear_flow_freq(SpinorField& hat, double t) {
    const GridSpec& g = hat.grid();
    int n = g.n_points;
    for (int i = 0; i < n; ++i) {
        double xi1 = g.freq(i);
        bool nyq_i = (g.mode(i) == -n / 2);
        for (int j = 0; j < n; ++j) {
            cplx& u = hat.up.at(i, j);
            cplx& d = hat.down.at(i, j);
            if (nyq_i || g.mode(j) == -n / 2) {
                u = d = 0.0;
                continue;
            }
            double xi2 = g.freq(j);
            double b = bracket_norm(std::hypot(xi1, xi2));
            cplx ep(std::cos(t * b), std::sin(t * b));
            cplx em = std::conj(ep);
            // Pi_+- = (1 +- A)/2 with A = -(xi.alpha + beta)/<xi>;
            // alpha1 = [[0,1],[1,0]], alpha2 = [[0,-i],[i,0]], beta = diag(1,-1)
            cplx a01 = -(xi1 - kI * xi2) / b;
            cplx a10 = -(xi1 + kI * xi2) / b;
            double a00 = -1.0 / b, a11 = 1.0 / b;
            cplx u_new = 0.5 * ((ep + em) * u + (ep - em) * (a00 * u + a01 * d));
            cplx d_new = 0.5 * ((ep + em) * d + (ep - em) * (a10 * u + a11 * d));
            u = u_new;
            d = d_new;
        }
    }
}

void project_freq(SpinorField& hat, int sign) {
    const GridSpec& g = hat.grid();
    int n = g.n_points;
    double s = sign >= 0 ? 1.0 : -1.0;
    for (int i = 0; i < n; ++i) {
        double xi1 = g.freq(i);
        bool nyq_i = (g.mode(i) == -n / 2);
        for (int j = 0; j < n; ++j) {
            cplx& u = hat.up.at(i, j);
            cplx& d = hat.down.at(i, j);
            if (nyq_i || g.mode(j) == -n / 2) {
                u = d = 0.0;
                continue;
            }
            double xi2 = g.freq(j);
            double b = bracket_norm(std::hypot(xi1, xi2));
            cplx a01 = -(xi1 - kI * xi2) / b;
            cplx a10 = -(xi1 + kI * xi2) / b;
            double a00 = -1.0 / b, a11 = 1.0 / b;
            cplx u_new = 0.5 * (u + s * (a00 * u + a01 * d));
            cplx d_new = 0.5 * (d + s * (a10 * u + a11 * d));
            u = u_new;
            d = d_new;
        }
    }
}

void propagate_freq(SpinorField& hat, double t, int sign) {
    const GridSpec& g = hat.grid();
    int n = g.n_points;
    double s = sign >= 0 ? t : -t;
    for (int i = 0; i < n; ++i) {
        double xi1 = g.freq(i);
        for (int j = 0; j < n; ++j) {
            double b = bracket_norm(std::hypot(xi1, g.freq(j)));
            cplx e(std::cos(s * b), std::sin(s * b));
            hat.up.at(i, j) *= e;
            hat.down.at(i, j) *= e;
        }
    }
}

void truncate_freq(SpinorField& hat) {
    const GridSpec& g = hat.grid();
    int n = g.n_points;
    double r = g.dealias_radius();
    for (int i = 0; i < n; ++i) {
        double xi1 = g.freq(i);
        bool nyq_i = (g.mode(i) == -n / 2);
        for (int j = 0; j < n; ++j) {
            if (nyq_i || g.mode(j) == -n / 2 || std::hypot(xi1, g.freq(j)) > r) {
                hat.up.at(i, j) = 0.0;
                hat.down.at(i, j) = 0.0;
            }
        }
    }
}

// exact pointwise rotation e^{i dt V beta} with V = <psi, beta psi>
SpinorField nonlinear_rotation(const SpinorField& psi, double dt) {
    SpinorField out(psi.grid(), Repr::physical);
    for (std::size_t i = 0; i < out.up.size(); ++i) {
        cplx u = psi.up.data()[i], d = psi.down.data()[i];
        double v = std::norm(u) - std::norm(d);
        double ang = dt * v;
        cplx eu(std::cos(ang), std::sin(ang));
        out.up.data()[i] = eu * u;
        out.down.data()[i] = std::conj(eu) * d;
    }
    return out;
}

// dealiased Fourier transform of the cubic term, frequency in/out
SpinorField nonlinearity_freq(const SpinorField& hat) {
    SpinorField phys = hat.to_physical();
    SpinorField out(phys.grid(), Repr::physical);
    for (std::size_t i = 0; i < out.up.size(); ++i) {
        cplx u = phys.up.data()[i], d = phys.down.data()[i];
        double v = std::norm(u) - std::norm(d);
        out.up.data()[i] = v * u;
        out.down.data()[i] = -v * d;
    }
    SpinorField res = out.to_frequency();
    truncate_freq(res);
    return res;
}

} // namespace

std::pair<SpinorField, SpinorField> rhs_projected(const SpinorField& psi_plus,
                                                  const SpinorField& psi_minus) {
    for (int s : {+1, -1}) {
        const SpinorField& f = s > 0 ? psi_plus : psi_minus;
        double nf = l2_norm(f);
        if (nf == 0.0) continue;
        SpinorField proj = f.to_frequency();
        project_freq(proj, s);
        double defect = l2_norm(f.to_frequency() - proj) / nf;
        if (defect > 1e-10)
            throw std::invalid_argument("rhs_projected: input is not in the range of Pi_" +
                                        std::string(s > 0 ? "+" : "-") + "; relative defect " +
                                        std::to_string(defect));
    }
    SpinorField hat = psi_plus.to_frequency() + psi_minus.to_frequency();
    SpinorField nl = nonlinearity_freq(hat);
    SpinorField outp = nl, outm = nl;
    project_freq(outp, +1);
    project_freq(outm, -1);
    outp *= -1.0;
    outm *= -1.0;
    if (psi_plus.repr() == Repr::physical) return {outp.to_physical(), outm.to_physical()};
    return {outp, outm};
}

double charge(const SpinorField& psi) {
    if (psi.repr() != Repr::physical)
        throw std::invalid_argument("charge: physical representation required");
    double a = lebesgue_norm(psi.up, 2.0), b = lebesgue_norm(psi.down, 2.0);
    return a * a + b * b;
}

SpinorField strang_step(const SpinorField& psi, double dt) {
    SpinorField hat = psi.to_frequency();
    linear_flow_freq(hat, 0.5 * dt);
    SpinorField rot = nonlinear_rotation(hat.to_physical(), dt);
    hat = rot.to_frequency();
    truncate_freq(hat);
    linear_flow_freq(hat, 0.5 * dt);
    return psi.repr() == Repr::physical ? hat.to_physical() : hat;
}

Trajectory evolve(const SpinorField& plus_data, const SpinorField& minus_data,
                  const SolveConfig& config) {
    config.validate();
    const GridSpec& g = plus_data.grid();
    double dt = g.dt;
    long steps = static_cast<long>(std::llround(config.t_max / dt));
    long stride = std::max<long>(1, std::llround(config.store_step / dt));

    SpinorField hat = plus_data.to_frequency() + minus_data.to_frequency();
    double guard = 1e3 * std::max(l2_norm(hat), 1e-300);

    Trajectory traj;
    traj.grid = g;
    traj.times.push_back(0.0);
    traj.states.push_back(hat.to_physical());
    for (long s = 1; s <= steps; ++s) {
        hat = strang_step(hat, dt);
        if (s % stride == 0) {
            double nn = l2_norm(hat);
            if (!(nn < guard))
                throw std::runtime_error("evolve: norm blew past the guard at t = " +
                                         std::to_string(s * dt));
            traj.times.push_back(s * dt);
            traj.states.push_back(hat.to_physical());
        }
    }
    return traj;
}

PicardResult picard_iterate(const SpinorField& plus_data, const SpinorField& minus_data,
                            const SolveConfig& config) {
    config.validate();
    const GridSpec& g = plus_data.grid();
    {
        SpinorField d = plus_data.to_frequency() + minus_data.to_frequency();
        double hn = sobolev_half_norm(d);
        if (hn > config.epsilon * (1.0 + 1e-9))
            throw std::invalid_argument("picard_iterate: data exceeds the configured epsilon in "
                                        "H^{1/2}: " + std::to_string(hn));
    }

    double step = config.store_step;
    long n_frames = static_cast<long>(std::llround(config.t_max / step)) + 1;

    std::vector<SpinorField> free_plus, free_minus;
    {
        SpinorField pl = plus_data.to_frequency(), mi = minus_data.to_frequency();
        project_freq(pl, +1);
        project_freq(mi, -1);
        for (long i = 0; i < n_frames; ++i) {
            SpinorField fp = pl, fm = mi;
            propagate_freq(fp, step * i, +1);
            propagate_freq(fm, step * i, -1);
            free_plus.push_back(std::move(fp));
            free_minus.push_back(std::move(fm));
        }
    }

    std::vector<SpinorField> cur_plus = free_plus, cur_minus = free_minus;
    std::vector<double> contraction;
    int iters = 0;
    int grow_streak = 0;

    for (int it = 0; it < config.picard_depth; ++it) {
        // interaction picture: G_{+-}(s) = e^{-+ i s <D>} F_{+-}(s)
        std::vector<SpinorField> integ_plus, integ_minus;
        integ_plus.reserve(n_frames);
        integ_minus.reserve(n_frames);
        for (long i = 0; i < n_frames; ++i) {
            SpinorField nl = nonlinearity_freq(cur_plus[i] + cur_minus[i]);
            SpinorField fp = nl, fm = std::move(nl);
            project_freq(fp, +1);
            project_freq(fm, -1);
            fp *= -1.0;
            fm *= -1.0;
            propagate_freq(fp, -step * i, +1);
            propagate_freq(fm, -step * i, -1);
            integ_plus.push_back(std::move(fp));
            integ_minus.push_back(std::move(fm));
        }
        std::vector<SpinorField> next_plus, next_minus;
        next_plus.reserve(n_frames);
        next_minus.reserve(n_frames);
        SpinorField acc_p = cplx(0.0, 0.0) * integ_plus[0];
        SpinorField acc_m = acc_p;
        double sup_diff = 0.0;
        for (long i = 0; i < n_frames; ++i) {
            if (i > 0) {
                acc_p += cplx(0.0, -0.5 * step) * (integ_plus[i - 1] + integ_plus[i]);
                acc_m += cplx(0.0, -0.5 * step) * (integ_minus[i - 1] + integ_minus[i]);
            }
            double t = step * static_cast<double>(i);
            SpinorField np = acc_p, nm = acc_m;
            propagate_freq(np, t, +1);
            propagate_freq(nm, t, -1);
            np += free_plus[i];
            nm += free_minus[i];
            sup_diff = std::max(sup_diff,
                                sobolev_half_norm((np - cur_plus[i]) + (nm - cur_minus[i])));
            next_plus.push_back(std::move(np));
            next_minus.push_back(std::move(nm));
        }
        cur_plus = std::move(next_plus);
        cur_minus = std::move(next_minus);
        contraction.push_back(sup_diff);
        ++iters;
        if (contraction.size() >= 2 && sup_diff > contraction[contraction.size() - 2]) {
            if (++grow_streak >= 3)
                throw std::runtime_error("picard_iterate: differences grew for three "
                                         "consecutive iterations; reduce epsilon");
        } else {
            grow_streak = 0;
        }
        if (sup_diff < config.contraction_tol) break;
    }

    PicardResult res;
    res.iterations = iters;
    res.contraction = std::move(contraction);
    res.traj.grid = g;
    Trajectory tp, tm;
    tp.grid = g;
    tm.grid = g;
    for (long i = 0; i < n_frames; ++i) {
        double t = step * static_cast<double>(i);
        res.traj.times.push_back(t);
        res.traj.states.push_back((cur_plus[i] + cur_minus[i]).to_physical());
        tp.times.push_back(t);
        tp.states.push_back(cur_plus[i].to_physical());
        tm.times.push_back(t);
        tm.states.push_back(cur_minus[i].to_physical());
    }
    res.split.push_back(std::move(tp));
    res.split.push_back(std::move(tm));
    return res;
}

ScatteringProfile scattering_profile(const Trajectory& traj, int sign) {
    traj.validate();
    ScatteringProfile out;
    out.profiles.reserve(traj.frames());
    for (std::size_t i = 0; i < traj.frames(); ++i) {
        SpinorField comp = traj.states[i].to_frequency();
        project_freq(comp, sign);
        propagate_freq(comp, -traj.times[i], sign);
        out.profiles.push_back(std::move(comp));
    }
    double half_t = traj.times.front() + 0.5 * traj.window();
    double tail = 0.0;
    for (std::size_t i = 0; i + 1 < out.profiles.size(); ++i) {
        double inc = sobolev_half_norm(out.profiles[i + 1] - out.profiles[i]);
        out.cauchy_increments.push_back(inc);
        out.total_variation += inc;
        if (traj.times[i] >= half_t) tail += inc;
    }
    out.tail_fraction = out.total_variation > 0.0 ? tail / out.total_variation : 0.0;
    return out;
}

SpinorField random_data(const GridSpec& grid, int k, double eps, int sign,
                        std::uint64_t stream, double sigma_x) {
    ScalarField up = random_annulus_field(grid, k, stream);
    ScalarField down = random_annulus_field(grid, k, stream + 0x9e3779b9);
    SpinorField psi(std::move(up), std::move(down));
    if (sigma_x > 0.0) {
        SpinorField phys = psi.to_physical();
        const GridSpec& g = grid;
        for (int i = 0; i < g.n_points; ++i) {
            double x = -g.half_width + i * g.dx();
            for (int j = 0; j < g.n_points; ++j) {
                double y = -g.half_width + j * g.dx();
                double env = std::exp(-(x * x + y * y) / (2.0 * sigma_x * sigma_x));
                phys.up.at(i, j) *= env;
                phys.down.at(i, j) *= env;
            }
        }
        psi = phys.to_frequency();
    }
    project_freq(psi, sign);
    double hn = sobolev_half_norm(psi);
    if (hn == 0.0) throw std::runtime_error("random_data: degenerate draw");
    psi *= eps / hn;
    return psi;
}

CubicScalingResult cubic_scaling_check(const std::vector<double>& epsilons,
                                       const GridSpec& grid, const SolveConfig& base,
                                       int data_k, std::uint64_t stream, int data_sign) {
    if (epsilons.size() < 3)
        throw std::invalid_argument("cubic_scaling_check: need at least three epsilons");
    CubicScalingResult res;
    res.epsilons = epsilons;
    SpinorField shape = random_data(grid, data_k, 1.0, data_sign, stream);
    SpinorField zero(grid, Repr::frequency);
    for (double eps : epsilons) {
        SolveConfig cfg = base;
        cfg.epsilon = eps;
        SpinorField data = eps * shape;
        Trajectory traj = evolve(data_sign > 0 ? data : zero, data_sign > 0 ? zero : data, cfg);
        double dev = 0.0;
        for (std::size_t i = 0; i < traj.frames(); ++i) {
            SpinorField fr = data;
            propagate_freq(fr, traj.times[i], data_sign);
            dev = std::max(dev, sobolev_half_norm(traj.states[i].to_frequency() - fr));
        }
        res.deviations.push_back(dev);
    }
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        lx.push_back(std::log(epsilons[i]));
        ly.push_back(std::log(res.deviations[i]));
    }
    FitResult fit = fit_line(lx, ly);
    res.slope = fit.slope;
    res.slope_stderr = fit.slope_stderr;
    res.intercept = fit.intercept;
    return res;
}

} // namespace dirac2d
