#include "dirac2d/lp.hpp"

#include <stdexcept>
#include <string>

namespace dirac2d {

namespace {
void check_range(const GridSpec& g, int k) {
    if (k < g.k_min() || k > g.k_max())
        throw std::invalid_argument("lp_project: dyadic level " + std::to_string(k) +
                                    " outside resolvable range [" + std::to_string(g.k_min()) +
                                    ", " + std::to_string(g.k_max()) + "]");
}
} // namespace

ScalarField lp_project(const ScalarField& f, int k, LPMode mode) {
    check_range(f.grid(), k);
    if (mode == LPMode::exact)
        return apply_multiplier(
            f, [k](double x1, double x2) { return cplx(chi_k(std::hypot(x1, x2), k), 0.0); });
    return apply_multiplier(
        f, [k](double x1, double x2) { return cplx(chi_leq_k(std::hypot(x1, x2), k), 0.0); });
}

SpinorField lp_project(const SpinorField& f, int k, LPMode mode) {
    return {lp_project(f.up, k, mode), lp_project(f.down, k, mode)};
}

ScalarField lp_project_tilde(const ScalarField& f, int k) {
    check_range(f.grid(), k);
    return apply_multiplier(
        f, [k](double x1, double x2) { return cplx(chi_tilde_k(std::hypot(x1, x2), k), 0.0); });
}

ScalarField cap_project(const ScalarField& f, int k, const Cap& cap) {
    check_range(f.grid(), k);
    if (cap.level > k + 10)
        throw std::invalid_argument("cap_project: cap level " + std::to_string(cap.level) +
                                    " too fine for dyadic level " + std::to_string(k));
    return apply_multiplier(f, [k, &cap](double x1, double x2) {
        return cplx(eta_cap(cap, x1, x2) * chi_k(std::hypot(x1, x2), k), 0.0);
    });
}

SpinorField cap_project(const SpinorField& f, int k, const Cap& cap) {
    return {cap_project(f.up, k, cap), cap_project(f.down, k, cap)};
}

} // namespace dirac2d
