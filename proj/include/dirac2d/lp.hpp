#pragma once

#include "dirac2d/cutoff.hpp"
#include "dirac2d/spinor.hpp"

namespace dirac2d {

enum class LPMode { exact, below };

// P_k = chi_k(D) (exact) or P_{<=k} = chi_{<=k}(D) (below)
ScalarField lp_project(const ScalarField& f, int k, LPMode mode = LPMode::exact);
SpinorField lp_project(const SpinorField& f, int k, LPMode mode = LPMode::exact);
// P tilde_k, built from chi_{k-1}+chi_k+chi_{k+1}
ScalarField lp_project_tilde(const ScalarField& f, int k);

// P_{k,kappa} = eta_kappa(D) chi_k(D)
ScalarField cap_project(const ScalarField& f, int k, const Cap& cap);
SpinorField cap_project(const SpinorField& f, int k, const Cap& cap);

} // namespace dirac2d
