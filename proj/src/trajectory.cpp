#include "dirac2d/trajectory.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace dirac2d {

using nlohmann::json;

void Trajectory::validate() const {
    if (times.size() != states.size())
        throw std::invalid_argument("Trajectory: times and states lengths differ");
    if (times.size() > 1) {
        double step = times[1] - times[0];
        for (std::size_t i = 1; i < times.size(); ++i) {
            if (std::abs((times[i] - times[i - 1]) - step) > 1e-9 * std::max(1.0, std::abs(step)))
                throw std::invalid_argument("Trajectory: non-uniform time step");
        }
    }
    for (const auto& s : states)
        if (!(s.grid() == grid))
            throw std::invalid_argument("Trajectory: state grid mismatch");
}

void save_trajectory(const Trajectory& traj, const std::string& path) {
    traj.validate();
    json header;
    header["n_points"] = traj.grid.n_points;
    header["half_width"] = traj.grid.half_width;
    header["dt"] = traj.grid.dt;
    header["t_max"] = traj.grid.t_max;
    header["r_param"] = traj.grid.r_param;
    header["seed"] = traj.grid.seed;
    header["frames"] = traj.frames();
    header["t0"] = traj.times.empty() ? 0.0 : traj.times.front();
    header["t_step"] = traj.t_step();

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_trajectory: cannot open " + path);
    out << header.dump() << '\n';
    for (const auto& state : traj.states) {
        SpinorField phys = state.to_physical();
        for (const ScalarField* comp : {&phys.up, &phys.down}) {
            static_assert(sizeof(cplx) == 2 * sizeof(double));
            out.write(reinterpret_cast<const char*>(comp->data()),
                      static_cast<std::streamsize>(comp->size() * sizeof(cplx)));
        }
    }
    if (!out) throw std::runtime_error("save_trajectory: write failed for " + path);
}

Trajectory load_trajectory(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_trajectory: cannot open " + path);
    std::string line;
    std::getline(in, line);
    json header = json::parse(line);

    Trajectory traj;
    traj.grid.n_points = header.at("n_points").get<int>();
    traj.grid.half_width = header.at("half_width").get<double>();
    traj.grid.dt = header.at("dt").get<double>();
    traj.grid.t_max = header.at("t_max").get<double>();
    traj.grid.r_param = header.at("r_param").get<int>();
    traj.grid.seed = header.at("seed").get<std::uint64_t>();
    std::size_t frames = header.at("frames").get<std::size_t>();
    double t0 = header.at("t0").get<double>();
    double step = header.at("t_step").get<double>();

    traj.times.reserve(frames);
    traj.states.reserve(frames);
    for (std::size_t f = 0; f < frames; ++f) {
        traj.times.push_back(t0 + step * static_cast<double>(f));
        SpinorField state(traj.grid, Repr::physical);
        for (ScalarField* comp : {&state.up, &state.down}) {
            in.read(reinterpret_cast<char*>(comp->data()),
                    static_cast<std::streamsize>(comp->size() * sizeof(cplx)));
            if (!in) throw std::runtime_error("load_trajectory: truncated payload in " + path);
        }
        traj.states.push_back(std::move(state));
    }
    return traj;
}

Trajectory free_trajectory(const SpinorField& plus_data, const SpinorField& minus_data,
                           double t_from, double t_to, double step) {
    Trajectory traj;
    traj.grid = plus_data.grid();
    SpinorField pl = plus_data.to_frequency();
    SpinorField mi = minus_data.to_frequency();
    long n = static_cast<long>(std::floor((t_to - t_from) / step + 0.5)) + 1;
    for (long i = 0; i < n; ++i) {
        double t = t_from + step * static_cast<double>(i);
        SpinorField state = half_wave_propagate(pl, t, +1) + half_wave_propagate(mi, t, -1);
        traj.times.push_back(t);
        traj.states.push_back(state.to_physical());
    }
    return traj;
}

} // namespace dirac2d
