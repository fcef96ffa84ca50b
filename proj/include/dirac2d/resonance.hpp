#pragma once

namespace dirac2d {

// Output modulation of a product u_1 conj(u_2) of type-(s1, s2) waves:
// the output sits at (tau, xi) = (s1<xi_1> - s2<xi_2>, xi_1 - xi_2), and
// its distance to the characteristic surface is
//   equal signs:   <xi_1 - xi_2> - |<xi_1> - <xi_2>|
//   mixed signs:   <xi_1 - xi_2> - (<xi_1> + <xi_2>)
// evaluated exactly from the brackets.
double resonance(double xi1a, double xi1b, double xi2a, double xi2b, int s1, int s2);

} // namespace dirac2d
