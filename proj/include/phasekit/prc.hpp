#ifndef PHASEKIT_PRC_HPP
#define PHASEKIT_PRC_HPP

#include "phasekit/limit_cycle.hpp"

namespace phasekit {

// Infinitesimal phase response curve Z on the cycle's phase grid, Malkin
// normalized: <Z(theta), gamma_dot(theta)> = 1.
struct PhaseResponseCurve {
  PeriodicSample samples;              // Z, dim = d
  double normalization_residual = 0;   // max |<Z,gdot>-1| before enforcement
  int periods_to_converge = 0;
};

struct PrcOptions {
  int max_periods = 50;
  double converge_tol = 1e-9;  // sup-norm change between successive periods
  Tolerances ode_tol{1e-10, 1e-12};
};

// Solves the adjoint variational equation Zdot = -df^T(gamma(t)) Z backward in
// time (which makes the bounded periodic solution attracting), renormalizing
// <Z, gamma_dot> = 1 at each period boundary. Throws AdjointDivergence.
PhaseResponseCurve compute_prc(const LimitCycle& lc, const PrcOptions& opts = {});

// Finite-difference oracle: kick each coordinate by `delta` at `n_phases`
// equispaced phases, integrate `periods` cycles and measure the asymptotic
// phase shift. Independent of the adjoint path; used for cross-validation.
PeriodicSample perturbation_prc(const LimitCycle& lc, int n_phases,
                                double delta = 1e-6, int periods = 20,
                                Tolerances tol = {1e-10, 1e-12});

}  // namespace phasekit

#endif
