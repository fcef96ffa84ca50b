#include "dirac2d/field.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace dirac2d {

namespace {

// FFTW planner is not thread-safe; executing distinct buffers against a
// shared plan is. Plans use FFTW_ESTIMATE so the algorithm choice (and
// with it the exact rounding) never depends on runtime timing.
std::mutex plan_mutex;

fftw_plan get_plan(int n, int sign) {
    static std::map<std::pair<int, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto key = std::make_pair(n, sign);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<cplx> probe(static_cast<std::size_t>(n) * n);
    auto* p = reinterpret_cast<fftw_complex*>(probe.data());
    fftw_plan plan = fftw_plan_dft_2d(n, n, p, p,
                                      sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    cache[key] = plan;
    return plan;
}

} // namespace

void fft2d(cplx* data, int n, int sign) {
    fftw_plan plan = get_plan(n, sign);
    auto* p = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(plan, p, p);
}

ScalarField ScalarField::to_frequency() const {
    if (repr_ == Repr::frequency) return *this;
    ScalarField out = *this;
    out.repr_ = Repr::frequency;
    int n = grid_.n_points;
    fft2d(out.values_.data(), n, -1);
    // scale by dx^2 and shift the origin to the box center
    double s = grid_.dx() * grid_.dx();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double sgn = ((i + j) & 1) ? -s : s;
            out.at(i, j) *= sgn;
        }
    return out;
}

ScalarField ScalarField::to_physical() const {
    if (repr_ == Repr::physical) return *this;
    ScalarField out = *this;
    out.repr_ = Repr::physical;
    int n = grid_.n_points;
    double s = grid_.dxi() * grid_.dxi() / (4.0 * 3.14159265358979323846 * 3.14159265358979323846);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double sgn = ((i + j) & 1) ? -s : s;
            out.at(i, j) *= sgn;
        }
    fft2d(out.values_.data(), n, +1);
    return out;
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
    if (repr_ != o.repr_ || !(grid_ == o.grid_))
        throw std::invalid_argument("ScalarField: mismatched grids or representations in +=");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
    if (repr_ != o.repr_ || !(grid_ == o.grid_))
        throw std::invalid_argument("ScalarField: mismatched grids or representations in -=");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
}

ScalarField& ScalarField::operator*=(cplx c) {
    for (auto& v : values_) v *= c;
    return *this;
}

} // namespace dirac2d
